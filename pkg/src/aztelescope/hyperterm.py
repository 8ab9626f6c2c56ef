"""Canonical hyperexponential integrands F_n(x).

Supported class (a chosen concretization; other hypergeometric terms are
rejected with NotHyperexponentialError)::

    F_n(x) = c(n) * prod_i b_i(x)^(alpha_i*n + beta_i) * exp(u(x))

* ``b_i`` rational in x (coefficients may involve parameters), free of n
* ``alpha_i`` a literal integer, ``beta_i`` a polynomial in the parameters
* ``u`` rational in x and the parameters
* ``c`` rational in n and the parameters

Factors with a constant integer exponent are folded into a single "static"
rational base with exponent 1.  Both ``F_{n+1}/F_n`` and ``F'/F`` are then
rational by construction.
"""

from __future__ import annotations

from contextlib import nullcontext
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

import mpmath

from . import expr as E
from .errors import NotHyperexponentialError, PoleError
from .polys import MultiPoly, content_in
from .ratfunc import RatFunc, from_tree


@dataclass(frozen=True)
class LinearExponent:
    """``alpha*n + beta`` with integer ``alpha`` and ``beta`` polynomial in the parameters."""

    alpha: int
    beta: MultiPoly

    def __add__(self, other: "LinearExponent") -> "LinearExponent":
        return LinearExponent(self.alpha + other.alpha, self.beta + other.beta)

    def __neg__(self) -> "LinearExponent":
        return LinearExponent(-self.alpha, -self.beta)

    def is_zero(self) -> bool:
        return self.alpha == 0 and self.beta.is_zero()

    def is_integer_constant(self) -> bool:
        return (self.alpha == 0 and self.beta.is_constant()
                and Fraction(self.beta.constant_value()).denominator == 1)

    def as_poly(self, disc: str) -> MultiPoly:
        return MultiPoly.variable(disc, self.beta.variables) * self.alpha + self.beta

    def to_str(self, disc: str) -> str:
        return self.as_poly(disc).to_str()


@dataclass(frozen=True)
class HyperTerm:
    """A parsed, canonical integrand.  See the module docstring for the class."""

    var: str
    disc: str
    params: tuple[str, ...]
    factors: tuple[tuple[RatFunc, LinearExponent], ...]
    exp_part: RatFunc
    prefactor: RatFunc
    source: str | None = field(default=None, compare=False)

    def __post_init__(self):
        # derived quotients must come out rational; computing them checks it
        _ = self.shift_ratio
        _ = self.log_derivative

    @property
    def variables(self) -> tuple[str, ...]:
        return (self.disc, *self.params, self.var)

    @cached_property
    def shift_ratio(self) -> RatFunc:
        """R1(n, x) = F_{n+1}(x) / F_n(x)."""
        vs = self.variables
        r = self.prefactor.shift(self.disc, 1) / self.prefactor
        for base, ex in self.factors:
            if ex.alpha:
                r = r * base.with_variables(vs) ** ex.alpha
        return r

    @cached_property
    def log_derivative(self) -> RatFunc:
        """R2(n, x) = F_n'(x) / F_n(x)."""
        vs = self.variables
        total = self.exp_part.with_variables(vs).derivative(self.var)
        for base, ex in self.factors:
            b = base.with_variables(vs)
            if not b.occurs(self.var):
                continue
            e = RatFunc(ex.as_poly(self.disc).with_variables(vs))
            total = total + e * b.derivative(self.var) / b
        return total

    def shift_quotient(self, j: int = 0) -> RatFunc:
        """F_{n+j+1}/F_{n+j}: the shift ratio with n replaced by n+j."""
        if j < 0:
            raise ValueError("j must be nonnegative")
        return self.shift_ratio.shift(self.disc, j)

    def to_text(self) -> str:
        """Parseable text; reparsing yields an identical HyperTerm."""
        parts = []
        pre = self.prefactor
        if pre != 1:
            parts.append(f"({pre})")
        for base, ex in self.factors:
            es = ex.to_str(self.disc)
            parts.append(f"({base})" if es == "1" else f"({base})^({es})")
        if not self.exp_part.is_zero():
            parts.append(f"exp({self.exp_part})")
        return "*".join(parts) if parts else "1"

    def __str__(self) -> str:
        return self.to_text()

    def evaluate(self, n: int, x, param_values: Mapping[str, object] | None = None):
        return evaluate_numeric(self, n, x, param_values)


# ---------------------------------------------------------------------------
# tree -> HyperTerm


@dataclass
class _Part:
    factors: dict[RatFunc, LinearExponent]
    u: RatFunc
    rational: RatFunc

    def is_rational(self) -> bool:
        return not self.factors and self.u.is_zero()


class _Builder:
    def __init__(self, var: str, disc: str, params: tuple[str, ...], text: str | None):
        self.var, self.disc, self.params = var, disc, params
        self.vs = (disc, *params, var)
        self.text = text

    def fail(self, msg: str, node: E.Node):
        raise NotHyperexponentialError(msg, E.to_text(node))

    def rational(self, f: RatFunc) -> _Part:
        return _Part({}, RatFunc.constant(0, self.vs), f)

    def mul(self, a: _Part, b: _Part) -> _Part:
        factors = dict(a.factors)
        for base, ex in b.factors.items():
            new = factors[base] + ex if base in factors else ex
            if new.is_zero():
                factors.pop(base, None)
            else:
                factors[base] = new
        out = _Part(factors, a.u + b.u, a.rational * b.rational)
        return self.fold(out)

    def inv(self, a: _Part, node: E.Node) -> _Part:
        if a.rational.is_zero():
            self.fail("division by zero", node)
        return _Part({b: -e for b, e in a.factors.items()}, -a.u, a.rational.inverse())

    def fold(self, p: _Part) -> _Part:
        """Move factors with constant integer exponent into the rational part."""
        keep = {}
        rat = p.rational
        for base, ex in p.factors.items():
            if ex.is_integer_constant():
                rat = rat * base ** int(ex.beta.constant_value())
            else:
                keep[base] = ex
        return _Part(keep, p.u, rat)

    def exponent(self, node: E.Node) -> RatFunc:
        try:
            return from_tree(node, self.vs)
        except (ValueError, KeyError) as exc:
            self.fail(f"unsupported exponent ({exc})", node)

    def linear_exponent(self, f: RatFunc, node: E.Node) -> LinearExponent:
        if f.occurs(self.var):
            self.fail(f"exponent depends on {self.var}", node)
        if not f.is_polynomial():
            self.fail(f"exponent is not polynomial in {self.disc} and the parameters", node)
        p = f.num * Fraction(1, Fraction(f.den.constant_value()))
        if p.degree(self.disc) > 1:
            self.fail(f"exponent is not linear in {self.disc}", node)
        parts = p.coefficients_in(self.disc)
        slope = parts.get(1)
        alpha = 0
        if slope is not None:
            if not slope.is_constant() or Fraction(slope.constant_value()).denominator != 1:
                self.fail(f"the {self.disc}-slope of an exponent must be a literal integer", node)
            alpha = int(slope.constant_value())
        beta = parts.get(0, MultiPoly.zero(self.vs))
        return LinearExponent(alpha, beta)

    def power(self, base: _Part, node: E.BinOp) -> _Part:
        ef = self.exponent(node.right)
        if ef.is_constant():
            k = Fraction(ef.constant_value())
            if k.denominator == 1:
                k = int(k)
                factors = {b: LinearExponent(e.alpha * k, e.beta * k) for b, e in base.factors.items()}
                rat = base.rational ** k if base.rational or k > 0 else None
                if rat is None:
                    self.fail("zero raised to a nonpositive power", node)
                return self.fold(_Part(factors, base.u * k, rat))
            ex = LinearExponent(0, MultiPoly.constant(k, self.vs))
        else:
            ex = self.linear_exponent(ef, node.right)
        # non-integer or symbolic exponent
        if not base.u.is_zero():
            self.fail("exp(...) raised to a non-integer or symbolic power", node)
        out = _Part({}, RatFunc.constant(0, self.vs), RatFunc.constant(1, self.vs))
        for b, e in base.factors.items():
            if e.alpha != 0 or not e.beta.is_constant():
                self.fail("nested symbolic exponents", node)
            c = Fraction(e.beta.constant_value())
            alpha = ex.alpha * c
            if alpha.denominator != 1:
                self.fail(f"combined {self.disc}-slope is not an integer", node)
            out = self.mul(out, _Part({b: LinearExponent(int(alpha), ex.beta * c)},
                                      RatFunc.constant(0, self.vs), RatFunc.constant(1, self.vs)))
        r = base.rational
        if r.occurs(self.disc):
            self.fail(f"base depends on {self.disc} under a non-integer or symbolic exponent", node)
        if r.is_zero():
            self.fail("zero base under a symbolic exponent", node)
        if r != 1:
            out = self.mul(out, _Part({r: ex}, RatFunc.constant(0, self.vs), RatFunc.constant(1, self.vs)))
        return out

    def build(self, node: E.Node) -> _Part:
        if isinstance(node, (E.Num, E.Var)):
            if isinstance(node, E.Var) and node.name not in self.vs:
                self.fail(f"unknown identifier {node.name!r}", node)
            return self.rational(from_tree(node, self.vs))
        if isinstance(node, E.Neg):
            a = self.build(node.arg)
            return _Part(a.factors, a.u, -a.rational)
        if isinstance(node, E.Call):
            try:
                u = from_tree(node.arg, self.vs)
            except (ValueError, KeyError) as exc:
                self.fail(f"exp argument must be rational ({exc})", node)
            if u.occurs(self.disc):
                self.fail(f"exp argument depends on {self.disc}", node)
            return _Part({}, u, RatFunc.constant(1, self.vs))
        if node.op in ("+", "-"):
            a, b = self.build(node.left), self.build(node.right)
            if not (a.is_rational() and b.is_rational()):
                self.fail("sum of non-rational terms", node)
            r = a.rational + b.rational if node.op == "+" else a.rational - b.rational
            return self.rational(r)
        if node.op == "*":
            return self.mul(self.build(node.left), self.build(node.right))
        if node.op == "/":
            return self.mul(self.build(node.left), self.inv(self.build(node.right), node))
        return self.power(self.build(node.left), node)

    def finish(self, part: _Part, tree: E.Node) -> HyperTerm:
        rat = part.rational
        if rat.is_zero():
            self.fail("the integrand is identically zero", tree)

        def split(p: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
            c = content_in(p, self.var)
            q = p.exact_div(c)
            if q.occurs(self.disc):
                self.fail(f"rational factor mixes {self.disc} and {self.var} inseparably", tree)
            return c, q

        cn, sn = split(rat.num)
        cd, sd = split(rat.den)
        prefactor = RatFunc(cn, cd)
        static = RatFunc(sn, sd)
        # scalar (including sign) of the static base lives in the prefactor
        c, _ = static.num.primitive()
        if c != 1:
            static = static / c
            prefactor = prefactor * c
        factors = dict(part.factors)
        if static != 1:
            if static.is_constant():
                prefactor = prefactor * static
            elif static in factors:
                factors[static] = factors[static] + LinearExponent(0, MultiPoly.one(self.vs))
            else:
                factors[static] = LinearExponent(0, MultiPoly.one(self.vs))
        factors = {b: e for b, e in factors.items() if not e.is_zero()}
        ordered = tuple(sorted(factors.items(), key=lambda t: (t[0].to_str(), t[1].to_str(self.disc))))
        return HyperTerm(self.var, self.disc, self.params, ordered, part.u, prefactor,
                         source=self.text)


def to_hyperterm(tree: E.Node | str, var: str = "x", disc: str = "n",
                 params: Sequence[str] | None = None) -> HyperTerm:
    """Normalize an expression into the canonical factor-list form.

    ``params=None`` declares every name other than ``var`` and ``disc`` a parameter.
    Raises NotHyperexponentialError naming the offending subterm.
    """
    text = tree if isinstance(tree, str) else None
    if isinstance(tree, str):
        tree = E.parse(tree)
    names = E.free_names(tree)
    if params is None:
        params = tuple(sorted(names - {var, disc}))
    else:
        params = tuple(params)
        unknown = names - {var, disc} - set(params)
        if unknown:
            raise NotHyperexponentialError(f"undeclared identifier(s) {', '.join(sorted(unknown))}")
    b = _Builder(var, disc, params, text if text is not None else E.to_text(tree))
    return b.finish(b.build(tree), tree)


def shift_quotient(h: HyperTerm, j: int = 0) -> RatFunc:
    return h.shift_quotient(j)


def log_derivative(h: HyperTerm) -> RatFunc:
    return h.log_derivative


# ---------------------------------------------------------------------------
# numerics


def _mp(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpmathify(v)


def evaluate_numeric(h: HyperTerm, n: int, x, param_values: Mapping[str, object] | None = None,
                     dps: int | None = None):
    """High-precision value of F_n(x) (an ``mpmath.mpf``).

    Uses the ambient mpmath precision unless ``dps`` is given.  Raises
    PoleError at a pole and ValueError for a negative base under a
    non-integer exponent.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    param_values = dict(param_values or {})
    missing = [p for p in h.params if p not in param_values]
    if missing:
        raise ValueError(f"no value for parameter(s) {', '.join(missing)}")
    ctx = mpmath.workdps(dps) if dps else nullcontext()
    with ctx:
        xv = _mp(x)
        exact = {p: Fraction(v) if isinstance(v, (int, Fraction, str)) else v for p, v in param_values.items()}
        point = {h.disc: n, h.var: xv, **{p: _mp(v) for p, v in exact.items()}}
        try:
            pre = h.prefactor.evaluate({h.disc: n, **exact})
        except ZeroDivisionError as exc:
            raise PoleError(f"prefactor has a pole at {h.disc}={n}") from exc
        value = _mp(pre)
        for base, ex in h.factors:
            try:
                b = base.evaluate(point)
            except ZeroDivisionError as exc:
                raise PoleError(f"pole of {base} at {h.var}={x}") from exc
            e = ex.as_poly(h.disc).evaluate({h.disc: n, **exact})
            e_int = isinstance(e, int) or (isinstance(e, Fraction) and e.denominator == 1)
            if b < 0 and not e_int:
                raise ValueError(f"negative base {base} under non-integer exponent at {h.var}={x}")
            if b == 0 and e < 0:
                raise PoleError(f"zero base {base} under negative exponent at {h.var}={x}")
            value *= mpmath.power(b, int(e)) if e_int else mpmath.power(b, _mp(e))
        if not h.exp_part.is_zero():
            try:
                value *= mpmath.exp(h.exp_part.evaluate(point))
            except ZeroDivisionError as exc:
                raise PoleError(f"pole of exp argument at {h.var}={x}") from exc
        return +value
