"""Integer approximant pairs for 1/e and their Diophantine analysis.

For F_n = (x(1-x))^n e^{-x} on [0, 1] the integral is I(n) = a_n + b_n/e
with integers a_n, b_n, and the telescoper gives a recurrence for both.
Every inequality here is decided with exact rationals plus a certified
enclosure of 1/e; floating point is only used to *display* logarithmic
exponent estimates.

Exponent estimates use the reduced fraction p/q = -a_n/b_n in lowest terms.
The raw b_n carry a large common factor with a_n (empirically n!), which
makes exponents measured against the raw denominator meaningless; both
versions are reported.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .errors import NonIntegralStepError, PrecisionError
from .polys import MultiPoly
from .ratfunc import RatFunc
from .recop import RecOperator
from .recurrence import _coefficient_values, step_values

# the e-case telescoper and initial data, as a convenience
E_OPERATOR_TEXT = "-(n+1)*(n+2) + 2*(2*n+3)*(n+2)*N + N^2"
E_A_INITIAL = (-1, 14)
E_B_INITIAL = (3, -38)
E_START = 1


def e_operator() -> RecOperator:
    return RecOperator.parse(E_OPERATOR_TEXT)


# ---------------------------------------------------------------------------
# integer sequences


@dataclass(frozen=True)
class PairSequence:
    start: int
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __getitem__(self, n: int) -> tuple[int, int]:
        i = n - self.start
        if not 0 <= i < len(self.a):
            raise IndexError(n)
        return self.a[i], self.b[i]

    def indices(self) -> range:
        return range(self.start, self.start + len(self.a))


def _exact_int_divide(total, lead, m):
    q = Fraction(total) / lead
    if q.denominator != 1:
        raise NonIntegralStepError(m)
    return q.numerator


def integer_sequence(L: RecOperator, initial: Sequence[int], start: int, count: int) -> list[int]:
    for v in initial:
        if Fraction(v).denominator != 1:
            raise ValueError(f"initial value {v} is not an integer")
    for m in range(start, start + count - L.order):
        if any(Fraction(p).denominator != 1 for p in _coefficient_values(L, m)):
            raise NonIntegralStepError(m)
    return [int(v) for v in step_values(L, [int(v) for v in initial], start, count, _exact_int_divide)]


def integer_pair_sequence(L: RecOperator, a_initial: Sequence[int], b_initial: Sequence[int],
                          start: int, count: int) -> PairSequence:
    """Both integer solutions of ``L`` over ``count`` indices from ``start``.

    Raises NonIntegralStepError when a step leaves Z, SingularLeadingCoefficientError
    when p_d vanishes.
    """
    a = integer_sequence(L, a_initial, start, count)
    b = integer_sequence(L, b_initial, start, count)
    return PairSequence(start, tuple(a), tuple(b))


# ---------------------------------------------------------------------------
# certified 1/e


@dataclass(frozen=True)
class CertifiedRational:
    """A rational ``value`` with |value - target| <= ``bound``."""

    value: Fraction
    bound: Fraction
    terms: int

    @property
    def lower(self) -> Fraction:
        return self.value - self.bound

    @property
    def upper(self) -> Fraction:
        return self.value + self.bound

    def digits(self, count: int) -> str:
        """Decimal rendering of ``value`` truncated to ``count`` places."""
        return _decimal(self.value, count)


def constant_inv_e(precision: int | None = None, terms: int | None = None) -> CertifiedRational:
    """sum_{k<=K} (-1)^k/k! with remainder bound 1/(K+1)!.

    With ``precision`` the smallest K giving bound <= 10^-precision is used;
    with ``terms`` the series is truncated after k = terms.
    """
    if (precision is None) == (terms is None):
        raise ValueError("give exactly one of precision or terms")
    if precision is not None:
        if precision < 1:
            raise ValueError("precision must be at least 1")
        target = Fraction(1, 10 ** precision)
        K, fact = 0, 1
        while Fraction(1, fact * (K + 1)) > target:
            K += 1
            fact *= K
    else:
        if terms < 0:
            raise ValueError("terms must be nonnegative")
        K = terms
    total, fact = Fraction(0), 1
    for k in range(K + 1):
        if k:
            fact *= k
        total += Fraction((-1) ** k, fact)
    return CertifiedRational(total, Fraction(1, fact * (K + 1)), K)


def _abs_enclosure(x: Fraction, c: CertifiedRational) -> tuple[Fraction, Fraction]:
    """Bounds on |x - e^-1| given the enclosure ``c``."""
    d = abs(x - c.value)
    return max(d - c.bound, Fraction(0)), d + c.bound


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class ApproxRecord:
    n: int
    a: int
    b: int
    p: int
    q: int
    g: int
    distance_lower: Fraction       # bounds on |e^-1 - p/q|
    distance_upper: Fraction
    residual_upper: Fraction       # upper bound on |a + b e^-1|
    decay_bound: Fraction          # certified lower bound on (1 - e^-1) 4^-n
    decay_ok: bool
    exponent: float | None         # -log|e^-1 - p/q| / log q
    raw_exponent: float | None     # same against the raw pair (-a/b, |b|)
    agreeing_digits: int = field(default=0)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def unreduced(self) -> tuple[int, int]:
        """-a/b written with a positive denominator, without reduction."""
        s = 1 if self.b > 0 else -1
        return -self.a * s, abs(self.b)

    def to_json(self, digits: int = 40) -> dict:
        num, den = self.unreduced
        return {
            "n": self.n, "a": str(self.a), "b": str(self.b),
            "unreduced": {"numerator": str(num), "denominator": str(den)},
            "reduced": {"numerator": str(self.p), "denominator": str(self.q)},
            "gcd": str(self.g),
            "decimal": {"digits": digits, "value": _decimal(Fraction(self.p, self.q), digits)},
            "distanceUpper": {"digits": 6, "value": mpmath.nstr(_mp(self.distance_upper), 6)},
            "decayOk": self.decay_ok,
            "agreeingDigits": self.agreeing_digits,
            "exponent": None if self.exponent is None else round(self.exponent, 12),
            "rawExponent": None if self.raw_exponent is None else round(self.raw_exponent, 12),
        }


def _decimal(v: Fraction, digits: int) -> str:
    sign = "-" if v < 0 else ""
    v = abs(v)
    ip = v.numerator // v.denominator
    frac = v - ip
    return f"{sign}{ip}." + str(frac.numerator * 10 ** digits // frac.denominator).zfill(digits)


def _mp(v: Fraction):
    return mpmath.mpf(v.numerator) / v.denominator


def _exponent(dist_lo: Fraction, dist_hi: Fraction, q: int) -> float | None:
    if q <= 1:
        return None
    with mpmath.workdps(30):
        # the two bounds agree to many digits whenever the caller's precision is adequate
        mid = (_mp(dist_lo) + _mp(dist_hi)) / 2
        return float(-mpmath.log(mid) / mpmath.log(q))


def _agreeing_digits(lo: Fraction, hi: Fraction) -> int:
    """Decimal places k with |e^-1 - p/q| certainly below 10^-k."""
    if hi == 0:
        return 0
    k = 0
    while hi < Fraction(1, 10 ** (k + 1)):
        k += 1
    return k


def approximation_report(L: RecOperator | None = None, a_initial: Sequence[int] = E_A_INITIAL,
                         b_initial: Sequence[int] = E_B_INITIAL, n_max: int = 20,
                         precision: int | None = None, start: int = E_START) -> list[ApproxRecord]:
    """One certified record per index ``start..n_max``.

    ``precision`` (decimal digits for 1/e) should be about 4*n_max or more;
    PrecisionError is raised when the enclosure is too wide to separate p/q
    from 1/e or to decide the decay bound.
    """
    L = L or e_operator()
    if precision is None:
        precision = max(40, 5 * n_max)
    count = n_max - start + 1
    if count < L.order:
        count = L.order
    seq = integer_pair_sequence(L, a_initial, b_initial, start, count)
    einv = constant_inv_e(precision)
    one_minus = 1 - einv.upper  # lower bound for 1 - e^-1
    out = []
    for n in seq.indices():
        if n > n_max:
            break
        a, b = seq[n]
        if b == 0:
            raise ValueError(f"b_{n} = 0; -a/b undefined")
        g = math.gcd(a, b)
        frac = Fraction(-a, b)
        p, q = frac.numerator, frac.denominator
        lo, hi = _abs_enclosure(frac, einv)
        if lo == 0:
            raise PrecisionError(f"precision {precision} cannot separate p/q from 1/e at n={n}")
        # |a + b e^-1| = |b| |e^-1 - (-a/b)|
        res_hi = abs(b) * hi
        res_lo = abs(b) * lo
        decay_lo = one_minus / Fraction(4) ** n
        decay_hi = (1 - einv.lower) / Fraction(4) ** n
        if res_hi <= decay_lo:
            ok = True
        elif res_lo > decay_hi:
            ok = False
        else:
            raise PrecisionError(f"precision {precision} cannot decide the decay bound at n={n}")
        raw_lo = res_lo / abs(b)
        raw_hi = res_hi / abs(b)
        out.append(ApproxRecord(
            n, a, b, p, q, abs(g), lo, hi, res_hi, decay_lo, ok,
            _exponent(lo, hi, q), _exponent(raw_lo, raw_hi, abs(b)),
            _agreeing_digits(lo, hi)))
    return out


@dataclass(frozen=True)
class GcdRow:
    n: int
    g: int
    a_reduced: int
    b_reduced: int
    equals_factorial: bool


def gcd_structure(records: Sequence[ApproxRecord]) -> list[GcdRow]:
    if not records:
        raise ValueError("records must be nonempty")
    out = []
    for r in records:
        g = math.gcd(r.a, r.b)
        out.append(GcdRow(r.n, g, r.a // g, r.b // g, r.n >= 0 and g == math.factorial(r.n)))
    return out


# ---------------------------------------------------------------------------
# Poincare analysis


@dataclass(frozen=True)
class PoincareReport:
    parts: tuple[MultiPoly, ...]      # q_j(N), j = 0..top
    top: MultiPoly
    roots: tuple[Fraction, ...]
    unsolved: MultiPoly | None
    degenerate: bool
    disc: str = "n"
    shift_symbol: str = "N"

    @property
    def degree(self) -> int:
        return len(self.parts) - 1

    def reconstruct(self) -> RecOperator:
        """sum_j n^j q_j(N) collected back into an operator."""
        N = self.shift_symbol
        vs = (self.disc,) + tuple(v for v in self.top.variables if v != N)
        nvar = MultiPoly.variable(self.disc, vs)
        coeffs: dict[int, MultiPoly] = {}
        for j, qj in enumerate(self.parts):
            for k, c in qj.coefficients_in(N).items():
                term = c.with_variables(vs) * nvar ** j
                coeffs[k] = coeffs[k] + term if k in coeffs else term
        top = max(coeffs)
        zero = MultiPoly.zero(vs)
        return RecOperator(tuple(RatFunc(coeffs.get(k, zero)) for k in range(top + 1)),
                           self.disc, self.shift_symbol)

    def to_json(self) -> dict:
        return {
            "parts": [p.to_str() for p in self.parts],
            "top": self.top.to_str(),
            "roots": [str(r) for r in self.roots],
            "unsolved": None if self.unsolved is None else self.unsolved.to_str(),
            "degenerate": self.degenerate,
        }


def _divisors(m: int) -> list[int]:
    m = abs(m)
    small = [d for d in range(1, math.isqrt(m) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


def _rational_roots(p: MultiPoly, var: str) -> tuple[list[Fraction], MultiPoly]:
    """Rational roots of a univariate polynomial and the cofactor left over."""
    coeffs = p.coefficients_in(var)
    deg = max(coeffs)
    c = [Fraction(coeffs[k].constant_value()) if k in coeffs else Fraction(0) for k in range(deg + 1)]
    lcd = math.lcm(*(x.denominator for x in c))
    ints = [int(x * lcd) for x in c]
    roots: list[Fraction] = []
    vs = p.variables
    X = MultiPoly.variable(var, vs)
    rest = p
    while ints and ints[0] == 0:
        roots.append(Fraction(0))
        ints = ints[1:]
        rest = rest.exact_div(X)
    if len(ints) > 1:
        cands = sorted({Fraction(s * u, v) for u in _divisors(ints[0]) for v in _divisors(ints[-1])
                        for s in (1, -1)})
        for r in cands:
            while True:
                val = rest.evaluate({var: r})
                if val != 0:
                    break
                roots.append(r)
                rest = rest.exact_div(X * r.denominator - r.numerator)
    return sorted(set(roots)), rest


def poincare_leading(L: RecOperator) -> PoincareReport:
    """Write L as sum_j n^j q_j(N) and solve q_top(N) = 0 over Q."""
    op = L.normalized()
    n, N = op.disc, op.shift_symbol
    if N in op.variables:
        raise ValueError(f"shift symbol {N} clashes with a variable")
    rest_vars = tuple(v for v in op.variables if v != n)
    vs = (N,) + rest_vars
    Nvar = MultiPoly.variable(N, vs)
    parts: dict[int, MultiPoly] = {}
    for k, c in enumerate(op.polynomial_coefficients()):
        for j, cj in c.coefficients_in(n).items():
            term = cj.with_variables(vs) * Nvar ** k
            parts[j] = parts[j] + term if j in parts else term
    top_j = max(j for j, q in parts.items() if not q.is_zero())
    zero = MultiPoly.zero(vs)
    qs = tuple(parts.get(j, zero) for j in range(top_j + 1))
    top = qs[-1]
    degenerate = top.degree(N) <= 0
    roots: tuple[Fraction, ...] = ()
    unsolved = None
    if not degenerate and all(not top.occurs(v) for v in rest_vars):
        rs, left = _rational_roots(top, N)
        roots = tuple(rs)
        if left.degree(N) > 0:
            unsolved = left
    elif not degenerate:
        unsolved = top
    return PoincareReport(qs, top, roots, unsolved, degenerate, n, N)


# ---------------------------------------------------------------------------
# criterion


@dataclass(frozen=True)
class CriterionRow:
    n: int
    q: int
    holds: bool


def irrationality_criterion_check(records: Sequence[ApproxRecord], C, delta) -> list[CriterionRow]:
    """Decide |e^-1 - p/q| <= C / q^(1+delta) for each record, rigorously.

    ``delta`` may be rational; the comparison is raised to the power of the
    denominator of 1+delta so that only integer powers appear.
    """
    C = Fraction(str(C)) if isinstance(C, float) else Fraction(C)
    delta = Fraction(str(delta)) if isinstance(delta, float) else Fraction(delta)
    if C <= 0 or delta <= 0:
        raise ValueError("C and delta must be positive")
    e = 1 + delta
    s = e.denominator
    t = e.numerator
    out = []
    for r in records:
        rhs = C ** s / Fraction(r.q) ** t
        if r.distance_upper ** s <= rhs:
            holds = True
        elif r.distance_lower ** s > rhs:
            holds = False
        else:
            raise PrecisionError(f"precision too low to decide the criterion at n={r.n}")
        out.append(CriterionRow(r.n, r.q, holds))
    return out


def report_json(records: Sequence[ApproxRecord], poincare: PoincareReport | None = None,
                digits: int = 40) -> str:
    doc = {
        "schemaVersion": 1,
        "records": [r.to_json(digits) for r in records],
        "gcd": [{"n": g.n, "g": str(g.g), "equalsFactorial": g.equals_factorial}
                for g in gcd_structure(records)] if records else [],
    }
    if poincare is not None:
        doc["poincare"] = poincare.to_json()
    return json.dumps(doc, indent=2)
