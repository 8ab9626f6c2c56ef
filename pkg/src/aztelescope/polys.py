"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a map from exponent tuples to coefficients, over an ordered
tuple of variable names::

    n^2*x - 3  over ("n", "x")  ->  {(2, 1): 1, (0, 0): -3}

Coefficients are Python ``int`` when integral and ``fractions.Fraction``
otherwise; the two mix freely and compare/hash consistently.  Zero
coefficients are never stored.

Terms are ordered graded-lexicographically, the first variable in the tuple
being the largest.  Printing, ``leading_term`` and sign normalization all use
this order.

The gcd is computed by recursive content / primitive-part reduction down to a
univariate subresultant polynomial remainder sequence.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd as igcd, lcm as ilcm
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import NotExactDivisionError, UnknownVariableError

Exponent = tuple[int, ...]
Coeff = Union[int, Fraction]


def as_coeff(c) -> Coeff:
    """Coerce an int/Fraction-like value into the canonical coefficient type."""
    if isinstance(c, int) and not isinstance(c, bool):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, bool):
        return int(c)
    f = Fraction(c)
    return f.numerator if f.denominator == 1 else f


def _div(a: Coeff, b: Coeff) -> Coeff:
    if isinstance(a, int) and isinstance(b, int):
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    return as_coeff(Fraction(a) / b)


def _grlex(e: Exponent) -> tuple:
    return (sum(e), e)


def merge_variables(a: Sequence[str], b: Sequence[str]) -> tuple[str, ...]:
    """Union of two variable tuples: ``a``'s order first, then ``b``'s new names."""
    if tuple(a) == tuple(b):
        return tuple(a)
    out = list(a)
    for v in b:
        if v not in out:
            out.append(v)
    return tuple(out)


class MultiPoly:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | None = None,
                 variables: Sequence[str] = ()):
        variables = tuple(variables)
        nv = len(variables)
        clean: dict[Exponent, Coeff] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != nv:
                raise ValueError(f"exponent {e} does not match variables {variables}")
            if any(k < 0 for k in e):
                raise ValueError(f"negative exponent {e}")
            c = as_coeff(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.variables = variables
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, Coeff], variables: tuple[str, ...]) -> "MultiPoly":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._hash = None
        return obj

    # -- construction -------------------------------------------------
    @classmethod
    def constant(cls, c, variables: Sequence[str] = ()) -> "MultiPoly":
        variables = tuple(variables)
        c = as_coeff(c)
        return cls._raw({(0,) * len(variables): c} if c else {}, variables)

    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> "MultiPoly":
        return cls._raw({}, tuple(variables))

    @classmethod
    def one(cls, variables: Sequence[str] = ()) -> "MultiPoly":
        return cls.constant(1, variables)

    @classmethod
    def variable(cls, name: str, variables: Sequence[str] | None = None) -> "MultiPoly":
        variables = (name,) if variables is None else tuple(variables)
        if name not in variables:
            raise UnknownVariableError(name)
        e = tuple(1 if v == name else 0 for v in variables)
        return cls._raw({e: 1}, variables)

    @classmethod
    def parse(cls, text: str, variables: Sequence[str] | None = None) -> "MultiPoly":
        """Parse the canonical text syntax; the result must be a polynomial."""
        from .ratfunc import RatFunc

        f = RatFunc.parse(text, variables)
        if not f.den.is_constant():
            raise ValueError(f"not a polynomial: {text!r}")
        return f.num

    # -- variable bookkeeping ----------------------------------------
    def used_variables(self) -> tuple[str, ...]:
        used = [False] * len(self.variables)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def occurs(self, var: str) -> bool:
        if var not in self.variables:
            return False
        i = self.variables.index(var)
        return any(e[i] for e in self.terms)

    def with_variables(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-embed into another variable tuple (reorder, add, or drop unused names)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        idx = []
        for i, v in enumerate(self.variables):
            if v in variables:
                idx.append((i, variables.index(v)))
            elif any(e[i] for e in self.terms):
                raise UnknownVariableError(f"{v} is used but absent from {variables}")
        nv = len(variables)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nv
            for i, j in idx:
                ne[j] = e[i]
            out[tuple(ne)] = c
        return MultiPoly._raw(out, variables)

    def _align(self, other) -> tuple["MultiPoly", "MultiPoly"]:
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.variables)
        if other.variables == self.variables:
            return self, other
        vs = merge_variables(self.variables, other.variables)
        return self.with_variables(vs), other.with_variables(vs)

    # -- predicates and access ---------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values())) if self.terms else 0

    def constant_term(self) -> Coeff:
        return self.terms.get((0,) * len(self.variables), 0)

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree if None). The zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.variables:
            return 0
        i = self.variables.index(var)
        return max(e[i] for e in self.terms)

    def leading_term(self) -> tuple[Exponent, Coeff]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def leading_coefficient(self) -> Coeff:
        return self.leading_term()[1]

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Exponent, Coeff]]:
        return iter(sorted(self.terms.items(), key=lambda t: _grlex(t[0]), reverse=True))

    def coefficients_in(self, var: str) -> dict[int, "MultiPoly"]:
        """Split into {k: coefficient of var^k}; coefficients keep the same variable tuple."""
        if var not in self.variables:
            return {0: self} if self.terms else {}
        i = self.variables.index(var)
        parts: dict[int, dict[Exponent, Coeff]] = {}
        for e, c in self.terms.items():
            k = e[i]
            parts.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: MultiPoly._raw(t, self.variables) for k, t in parts.items()}

    @classmethod
    def from_coefficients_in(cls, var: str, coeffs: Mapping[int, "MultiPoly"] | Sequence["MultiPoly"],
                             variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        i = variables.index(var)
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        out: dict[Exponent, Coeff] = {}
        for k, p in items:
            p = p.with_variables(variables)
            for e, c in p.terms.items():
                ne = e[:i] + (e[i] + k,) + e[i + 1:]
                v = out.get(ne, 0) + c
                if v:
                    out[ne] = v
                else:
                    out.pop(ne, None)
        return cls._raw(out, variables)

    # -- arithmetic --------------------------------------------------
    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({e: -c for e, c in self.terms.items()}, self.variables)

    def __pos__(self) -> "MultiPoly":
        return self

    def __add__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return self
            other = MultiPoly.constant(other, self.variables)
        elif not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._align(other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        out = dict(a.terms)
        for e, c in b.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(out, a.variables)

    __radd__ = __add__

    def __sub__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction, MultiPoly)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            other = as_coeff(other)
            if not other:
                return MultiPoly._raw({}, self.variables)
            return MultiPoly._raw({e: as_coeff(c * other) for e, c in self.terms.items()}, self.variables)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._align(other)
        if not a.terms or not b.terms:
            return MultiPoly._raw({}, a.variables)
        if len(b.terms) == 1:
            (eb, cb), = b.terms.items()
            return MultiPoly._raw(
                {tuple(x + y for x, y in zip(e, eb)): as_coeff(c * cb) for e, c in a.terms.items()},
                a.variables)
        out: dict[Exponent, Coeff] = {}
        bt = list(b.terms.items())
        for ea, ca in a.terms.items():
            for eb, cb in bt:
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return MultiPoly._raw({e: as_coeff(c) for e, c in out.items() if c}, a.variables)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = MultiPoly.one(self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "MultiPoly":
        return self * as_coeff(c)

    def exact_div(self, other) -> "MultiPoly":
        """Quotient ``self / other``; raises NotExactDivisionError on a nonzero remainder."""
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero polynomial")
            return MultiPoly._raw({e: _div(c, other) for e, c in self.terms.items()}, self.variables)
        a, b = self._align(other)
        if not b.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if b.is_constant():
            return a.exact_div(b.constant_value())
        le, lc = b.leading_term()
        rem = dict(a.terms)
        quo: dict[Exponent, Coeff] = {}
        bt = list(b.terms.items())
        while rem:
            e = max(rem, key=_grlex)
            d = tuple(x - y for x, y in zip(e, le))
            if any(k < 0 for k in d):
                raise NotExactDivisionError(f"{self} is not divisible by {other}")
            q = _div(rem[e], lc)
            quo[d] = q
            for eb, cb in bt:
                m = tuple(x + y for x, y in zip(d, eb))
                v = rem.get(m, 0) - q * cb
                if v:
                    rem[m] = as_coeff(v)
                else:
                    rem.pop(m, None)
        return MultiPoly._raw(quo, a.variables)

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.exact_div(self)
        except NotExactDivisionError:
            return False
        return True

    # -- calculus and substitution ----------------------------------
    def derivative(self, var: str) -> "MultiPoly":
        if var not in self.variables:
            raise UnknownVariableError(var)
        i = self.variables.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return MultiPoly._raw(out, self.variables)

    def compose(self, var: str, value: "MultiPoly") -> "MultiPoly":
        """Substitute the polynomial ``value`` for ``var`` (Horner over the var-coefficients)."""
        if var not in self.variables:
            raise UnknownVariableError(var)
        if not self.occurs(var):
            return self
        coeffs = self.coefficients_in(var)
        a, value = self._align(value)
        vs = a.variables
        result = MultiPoly.zero(vs)
        for k in range(max(coeffs), -1, -1):
            result = result * value
            if k in coeffs:
                result = result + coeffs[k].with_variables(vs)
        return result

    def shift(self, var: str, k: int) -> "MultiPoly":
        """Replace ``var`` by ``var + k``."""
        if var not in self.variables:
            raise UnknownVariableError(var)
        if not k or not self.occurs(var):
            return self
        i = self.variables.index(var)
        out: dict[Exponent, Coeff] = {}
        for e, c in self.terms.items():
            d = e[i]
            for j in range(d + 1):
                ne = e[:i] + (j,) + e[i + 1:]
                out[ne] = out.get(ne, 0) + c * comb(d, j) * k ** (d - j)
        return MultiPoly._raw({e: as_coeff(c) for e, c in out.items() if c}, self.variables)

    def subs(self, values: Mapping[str, object]) -> "MultiPoly":
        """Substitute exact rational values for some variables; the variable tuple is kept."""
        idx = [(self.variables.index(v), as_coeff(x)) for v, x in values.items() if v in self.variables]
        if not idx:
            return self
        out: dict[Exponent, Coeff] = {}
        for e, c in self.terms.items():
            ne = list(e)
            for i, x in idx:
                if e[i]:
                    c = c * x ** e[i]
                    ne[i] = 0
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + c
        return MultiPoly._raw({e: as_coeff(c) for e, c in out.items() if c}, self.variables)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate with every used variable bound; works for any numeric type (Fraction, mpf, ...)."""
        missing = [v for v in self.used_variables() if v not in values]
        if missing:
            raise UnknownVariableError(f"no value for {', '.join(missing)}")
        pts = [values.get(v, 0) for v in self.variables]
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(pts, e):
                if k:
                    t = t * x ** k
            total = total + t
        return total

    # -- content / normalization --------------------------------------
    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self.terms:
            return Fraction(0)
        g, l = 0, 1
        for c in self.terms.values():
            if isinstance(c, int):
                g = igcd(g, c)
            else:
                g = igcd(g, c.numerator)
                l = ilcm(l, c.denominator)
        return Fraction(g, l)

    def primitive(self) -> tuple[Coeff, "MultiPoly"]:
        """Return ``(c, p)`` with ``self == c*p``, p integral, content 1, positive leading coefficient."""
        if not self.terms:
            return 0, self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        c = as_coeff(c)
        if c == 1:
            return 1, self
        return c, MultiPoly._raw({e: _div(v, c) for e, v in self.terms.items()}, self.variables)

    def monic_normalized(self) -> "MultiPoly":
        """Rational content times primitive part: the sign-normalized representative."""
        c, p = self.primitive()
        return p * abs(c) if c != 1 else p

    # -- comparison ---------------------------------------------------
    def _canonical(self) -> frozenset:
        vs = self.variables
        return frozenset(
            (tuple(sorted((v, k) for v, k in zip(vs, e) if k)), c) for e, c in self.terms.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.variables == other.variables:
            return self.terms == other.terms
        return self._canonical() == other._canonical()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.constant_value()) if self.is_constant() else hash(self._canonical())
        return self._hash

    # -- printing -----------------------------------------------------
    def _monomial(self, e: Exponent) -> str:
        parts = []
        for v, k in zip(self.variables, e):
            if k == 1:
                parts.append(v)
            elif k:
                parts.append(f"{v}^{k}")
        return "*".join(parts)

    def to_str(self, order: str = "desc") -> str:
        """Canonical text. ``order='asc'`` lists low-degree terms first."""
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: _grlex(t[0]), reverse=(order == "desc"))
        out = []
        for i, (e, c) in enumerate(items):
            neg = c < 0
            a = -c if neg else c
            mono = self._monomial(e)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_str()!r}, variables={self.variables!r})"


# ---------------------------------------------------------------------------
# gcd machinery


def _coeff_gcd(a: Fraction, b: Fraction) -> Fraction:
    a, b = Fraction(a), Fraction(b)
    return Fraction(igcd(a.numerator, b.numerator), ilcm(a.denominator, b.denominator))


def content_in(p: MultiPoly, var: str) -> MultiPoly:
    """gcd of the coefficients of ``p`` viewed as a polynomial in ``var``."""
    coeffs = list(p.coefficients_in(var).values())
    if not coeffs:
        return p
    coeffs.sort(key=len)
    g = coeffs[0].monic_normalized()
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = gcd(g, c)
    if g.is_constant():
        # rational content of the whole thing
        return MultiPoly.constant(p.content(), p.variables)
    return g


def _to_list(p: MultiPoly, var: str) -> list[MultiPoly]:
    parts = p.coefficients_in(var)
    d = max(parts)
    zero = MultiPoly.zero(p.variables)
    return [parts.get(k, zero) for k in range(d + 1)]


def _prem(a: list[MultiPoly], b: list[MultiPoly]) -> list[MultiPoly]:
    k = len(b) - 1
    lc = b[-1]
    r = list(a)
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= k:
        d = len(r) - 1
        t = r[-1]
        shift = d - k
        r = [lc * c for c in r]
        for i, bi in enumerate(b):
            r[i + shift] = r[i + shift] - t * bi
        while r and r[-1].is_zero():
            r.pop()
        e -= 1
    if e > 0 and r:
        f = lc ** e
        r = [f * c for c in r]
    return r


def _subresultant_gcd(a: list[MultiPoly], b: list[MultiPoly]) -> list[MultiPoly]:
    if len(a) < len(b):
        a, b = b, a
    vs = a[0].variables
    g = h = MultiPoly.one(vs)
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            return b
        if len(r) == 1:
            return [MultiPoly.one(vs)]
        a = b
        div = g * h ** delta
        b = [c.exact_div(div) for c in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g ** delta).exact_div(h ** (delta - 1))


def _gcd_primitive(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """gcd of two nonzero polynomials up to a rational scalar."""
    vs = p.variables
    if p.is_constant() or q.is_constant():
        return MultiPoly.one(vs)
    up, uq = set(p.used_variables()), set(q.used_variables())
    for v in vs:
        if v in up and v not in uq:
            return _gcd_primitive(content_in(p, v), q)
        if v in uq and v not in up:
            return _gcd_primitive(p, content_in(q, v))
    common = [v for v in vs if v in up]
    var = min(common, key=lambda v: (min(p.degree(v), q.degree(v)), vs.index(v)))
    pc, qc = content_in(p, var), content_in(q, var)
    pp, qq = p.exact_div(pc), q.exact_div(qc)
    c = _gcd_primitive(pc, qc)
    g_list = _subresultant_gcd(_to_list(pp, var), _to_list(qq, var))
    g = MultiPoly.from_coefficients_in(var, g_list, vs)
    if g.occurs(var):
        g = g.exact_div(content_in(g, var))
    else:
        g = MultiPoly.one(vs)
    return c * g


def gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized.

    The result is the gcd of the rational contents times the primitive gcd
    with positive leading coefficient, so ``gcd(6, 4) == 2`` and
    ``gcd(x^2 - 1, x^2 - 2*x + 1) == x - 1``.  ``gcd(p, 0)`` is ``p`` normalized.
    """
    if not isinstance(p, MultiPoly):
        p = MultiPoly.constant(p, q.variables if isinstance(q, MultiPoly) else ())
    p, q = p._align(q)
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero():
        return q.monic_normalized()
    if q.is_zero():
        return p.monic_normalized()
    c = _coeff_gcd(p.content(), q.content())
    if p.is_constant() or q.is_constant():
        return MultiPoly.constant(c, p.variables)
    _, pp = p.primitive()
    _, qq = q.primitive()
    if pp == qq:
        g = pp
    else:
        _, g = _gcd_primitive(pp, qq).primitive()
    return g * c if c != 1 else g


def lcm(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Least common multiple with the same normalization as ``gcd``."""
    p, q = p._align(q)
    if p.is_zero() or q.is_zero():
        return MultiPoly.zero(p.variables)
    return (p * q).exact_div(gcd(p, q)).monic_normalized()


def gcd_list(polys: Iterable[MultiPoly]) -> MultiPoly:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("gcd of an empty/zero list")
    polys.sort(key=len)
    g = polys[0].monic_normalized()
    for p in polys[1:]:
        g = gcd(g, p)
    return g
