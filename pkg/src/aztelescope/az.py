"""Almkvist-Zeilberger creative telescoping for hyperexponential integrands.

Given F_n(x), find an operator L = sum_k p_k(n) N^k and a rational
certificate R(n, x) with::

    sum_k p_k(n) F_{n+k}(x) = d/dx (R(n, x) F_n(x))

Dividing by F_n, the left side is T = sum_k p_k S_k with S_0 = 1 and
S_k = S_{k-1} * R1(n+k-1, x); the right side is R' + R*R2.

Search strategy (ansatz and solve): write R2 = A/B, T = U/V, and posit
R = z(x)/W with W = B*V and z a polynomial in x of bounded degree whose
coefficients, together with the p_k, are unknowns in Q(n, params).  Clearing
denominators in ``R' + (A/B) R = U/V`` and matching powers of x gives a
homogeneous linear system.  Every candidate is re-verified exactly before it
is returned.
"""

from __future__ import annotations

import time
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Sequence

import mpmath

from .errors import NotFoundError, PoleError
from .hyperterm import HyperTerm, evaluate_numeric
from .linsolve import MODULUS, nullspace_mod_p, polynomial_nullspace
from .polys import MultiPoly, lcm
from .ratfunc import RatFunc, as_ratfunc
from .recop import RecOperator

__all__ = [
    "AZResult", "SearchConfig", "Verification", "az_derive", "endpoint_report",
    "telescoper_lhs", "verify_certificate",
]


@dataclass(frozen=True)
class SearchConfig:
    """Caps for the ansatz search.

    The first x-degree bound for z is ``deg W + max(deg A, deg B) + d + 2``;
    it is raised by ``degree_step`` up to ``degree_raises`` times, then W is
    multiplied by V once (``denominator_escalation``) and the degree schedule
    is repeated, then the order d increases.
    """

    max_order: int = 4
    degree_step: int = 2
    degree_raises: int = 3
    denominator_escalation: bool = True


@dataclass(frozen=True)
class AZResult:
    operator: RecOperator
    certificate: RatFunc
    orders_tried: tuple[int, ...]
    attempts: tuple[dict, ...]
    parameter_denominators: tuple[MultiPoly, ...] = ()
    elapsed: float = field(default=0.0, compare=False)

    @property
    def order(self) -> int:
        return self.operator.order


@dataclass(frozen=True)
class Verification:
    ok: bool
    residual: RatFunc
    factor: RatFunc | None = None  # lambda with L F = lambda * d/dx(R F), when one exists

    def __bool__(self) -> bool:
        return self.ok


def _shift_products(h: HyperTerm, d: int) -> list[RatFunc]:
    s = [RatFunc.constant(1, h.variables)]
    for k in range(1, d + 1):
        s.append(s[-1] * h.shift_quotient(k - 1))
    return s


def telescoper_lhs(h: HyperTerm, coeffs: Sequence) -> RatFunc:
    """(sum_k q_k F_{n+k}) / F_n as a reduced rational function."""
    vs = h.variables
    total = RatFunc.constant(0, vs)
    s = _shift_products(h, len(coeffs) - 1)
    for q, sk in zip(coeffs, s):
        q = as_ratfunc(q, vs)
        if not q.is_zero():
            total = total + q.with_variables(vs) * sk
    return total


def _certificate_image(h: HyperTerm, R: RatFunc) -> RatFunc:
    """(d/dx (R F)) / F = R' + R*R2."""
    vs = h.variables
    R = as_ratfunc(R, vs).with_variables(vs)
    return R.derivative(h.var) + R * h.log_derivative


def verify_certificate(h: HyperTerm, L: RecOperator, R) -> Verification:
    """Exact check of ``L F = d/dx(R F)``.

    On failure the nonzero residual is returned, and when ``L F`` is an
    x-free multiple of ``d/dx(R F)`` that multiple is reported as ``factor``.
    """
    vs = h.variables
    L = L.with_variables(vs)
    lhs = telescoper_lhs(h, L.coeffs)
    rhs = _certificate_image(h, as_ratfunc(R, vs))
    residual = lhs - rhs
    if residual.is_zero():
        return Verification(True, residual, RatFunc.constant(1, vs))
    factor = None
    if not rhs.is_zero():
        lam = lhs / rhs
        if not lam.occurs(h.var):
            factor = lam
    return Verification(False, residual, factor)


def _x_coefficient_rows(columns: list[MultiPoly], var: str) -> list[list[MultiPoly]]:
    vs = columns[0].variables
    zero = MultiPoly.zero(vs)
    split = [c.coefficients_in(var) for c in columns]
    top = max((max(s) for s in split if s), default=-1)
    rows = []
    for i in range(top + 1):
        row = [s.get(i, zero) for s in split]
        if any(not e.is_zero() for e in row):
            rows.append(row)
    return rows


# Fixed sample points for the numeric prefilter (deterministic).
_SAMPLE_POINTS = ((1009, 7919, 104729, 1299709), (2003, 15461, 130363, 611953))


def _may_have_solution(rows: list[list[MultiPoly]], ncols: int, first_q: int, h: HyperTerm) -> bool:
    """Cheap necessary test before the symbolic solve.

    The system is specialized at fixed values of n and the parameters and
    reduced modulo a large prime.  A generic solution (primitive, polynomial
    in n and the parameters) maps to a solution of the specialized system,
    so if no specialized null-space vector has a nonzero q-part at either
    sample, the generic system has none, unless every q_k happens to vanish
    there.  That can only cost completeness, never soundness: answers are
    still verified exactly.
    """
    names = (h.disc, *h.params)
    for pt in _SAMPLE_POINTS:
        values = {v: Fraction(pt[i % len(pt)] + i // len(pt)) for i, v in enumerate(names)}
        numeric = []
        for row in rows:
            out = []
            for e in row:
                val = Fraction(e.evaluate(values)) if not e.is_zero() else Fraction(0)
                if val.denominator % MODULUS == 0:
                    return True
                out.append(val.numerator * pow(val.denominator, -1, MODULUS) % MODULUS)
            numeric.append(out)
        if any(any(v[first_q:]) for v in nullspace_mod_p(numeric, ncols)):
            return True
    return False


def _try_ansatz(h: HyperTerm, d: int, W: MultiPoly, V: MultiPoly, U: list[MultiPoly],
                A: MultiPoly, B: MultiPoly, zdeg: int):
    x = h.var
    vs = h.variables
    xp = MultiPoly.variable(x, vs)
    Wd = W.derivative(x)
    W_over_B = W.exact_div(B)
    W2_over_V = (W * W).exact_div(V)
    columns = []
    # identity divided by B:  z'W - zW' + A z (W/B) - U (W^2/V) = 0
    xpow = [MultiPoly.one(vs)]
    for j in range(1, zdeg + 1):
        xpow.append(xpow[-1] * xp)
    AWB = A * W_over_B
    for j in range(zdeg + 1):
        col = xpow[j] * (AWB - Wd)
        if j:
            col = col + xpow[j - 1] * W * j
        columns.append(col)
    for k in range(d + 1):
        columns.append(-(U[k] * W2_over_V))
    rows = _x_coefficient_rows(columns, x)
    ncols = len(columns)
    if not rows or not _may_have_solution(rows, ncols, zdeg + 1, h):
        return None, []
    basis, pivot_values = polynomial_nullspace(rows, ncols, with_pivots=True)
    candidates = []
    for vec in basis:
        qs = vec[zdeg + 1:]
        nz = sum(1 for q in qs if not q.is_zero())
        if nz:
            candidates.append((nz, vec))
    if not candidates:
        return None, []
    candidates.sort(key=lambda t: t[0])
    vec = candidates[0][1]
    z = MultiPoly.zero(vs)
    for j in range(zdeg + 1):
        if not vec[j].is_zero():
            z = z + vec[j] * xpow[j]
    qs = [RatFunc(q) for q in vec[zdeg + 1:]]
    return (qs, RatFunc(z, W)), pivot_values


def az_derive(h: HyperTerm, max_order: int | None = None,
              config: SearchConfig | None = None) -> AZResult:
    """Find the minimal-order telescoper (under the search bounds) and its certificate.

    Orders d = 0, 1, ... are tried in increasing sequence.  The returned pair is
    normalized (primitive polynomial coefficients, positive leading coefficient
    of p_d) and has passed ``verify_certificate``.  Raises NotFoundError when
    the bounds are exhausted.
    """
    cfg = config or SearchConfig()
    if max_order is None:
        max_order = cfg.max_order
    t0 = time.perf_counter()
    vs = h.variables
    x = h.var
    R2 = h.log_derivative
    A, B = R2.num, R2.den
    base_deg = max(A.degree(x), B.degree(x))
    attempts: list[dict] = []
    orders: list[int] = []
    S = _shift_products(h, max_order)
    for d in range(max_order + 1):
        orders.append(d)
        V = MultiPoly.one(vs)
        for s in S[:d + 1]:
            if not s.den.is_constant():
                V = lcm(V, s.den)
        U = [(s.num * V).exact_div(s.den) for s in S[:d + 1]]
        W = B * V
        denominators = [W, W * V] if cfg.denominator_escalation and V.occurs(x) else [W]
        for Wc in denominators:
            start = Wc.degree(x) + base_deg + d + 2
            for r in range(cfg.degree_raises + 1):
                zdeg = start + r * cfg.degree_step
                attempt = {"order": d, "denominator": str(Wc), "z_degree": zdeg}
                attempts.append(attempt)
                found, pivots = _try_ansatz(h, d, Wc, V, U, A, B, zdeg)
                if found is None:
                    attempt["outcome"] = "no solution"
                    continue
                qs, R = found
                op, lam = RecOperator(tuple(qs), h.disc).normalized_with_factor()
                R = R * lam
                check = verify_certificate(h, op, R)
                if not check.ok:
                    attempt["outcome"] = "candidate failed verification"
                    continue
                attempt["outcome"] = "verified"
                param_dens = _parameter_denominators(h, pivots, op, R)
                return AZResult(op, R, tuple(orders), tuple(attempts), param_dens,
                                time.perf_counter() - t0)
    raise NotFoundError(
        f"no telescoper of order <= {max_order} within the degree/denominator schedule",
        attempts)


def _parameter_denominators(h: HyperTerm, pivots: list[MultiPoly], op: RecOperator,
                            R: RatFunc) -> tuple[MultiPoly, ...]:
    """Parameter-dependent polynomials whose vanishing invalidates the generic answer.

    Raw elimination pivots are large products, so they are not listed
    verbatim.  Reported instead: exponent polynomials (alpha*n + beta) that
    divide a parameter-bearing pivot, the leading operator coefficient and the
    certificate denominator, each when it involves a parameter.
    """
    if not h.params:
        return ()

    def has_param(p: MultiPoly) -> bool:
        return any(p.occurs(v) for v in h.params)

    vs = h.variables
    loaded = [p.with_variables(vs) for p in pivots if has_param(p)]
    found: list[MultiPoly] = []

    def add(p: MultiPoly):
        q = p.with_variables(vs).monic_normalized()
        if not q.is_constant() and has_param(q) and q not in found:
            found.append(q)

    for _, e in h.factors:
        c = e.as_poly(h.disc).with_variables(vs)
        if has_param(c) and any(c.divides(p) for p in loaded):
            add(c)
    lead = op.coeffs[-1]
    if lead.is_polynomial() and has_param(lead.num):
        add(lead.num)
    if has_param(R.den):
        add(R.den)
    return tuple(found)


# ---------------------------------------------------------------------------
# endpoints


@dataclass(frozen=True)
class EndpointRecord:
    endpoint: str
    n: int
    samples: tuple[tuple[str, str], ...]
    limit: object | None
    vanishes: bool | None
    note: str = ""


def _approach_points(end, side: str, depth: int):
    if end == mpmath.inf:
        return [mpmath.mpf(10) ** k for k in range(1, depth + 1)]
    if end == -mpmath.inf:
        return [-mpmath.mpf(10) ** k for k in range(1, depth + 1)]
    sign = 1 if side == "left" else -1
    return [end + sign * mpmath.mpf(10) ** (-k) for k in range(1, depth + 1)]


def endpoint_report(h: HyperTerm, R, interval, ns: Sequence[int] = (0, 1, 2),
                    param_values=None, tol: float = 1e-20, depth: int = 30,
                    dps: int = 60) -> list[EndpointRecord]:
    """Numeric limits of R*F at each endpoint of ``interval`` for the sampled n.

    Finite endpoints are approached from inside along ``a +- 10^-k``, infinite
    ones along ``+-10^k``.  The limit estimate is the deepest sample; it
    "vanishes" when its magnitude is at most ``tol`` and the magnitudes are
    not increasing over the last three samples.  A pole on the approach path
    is reported in ``note`` instead of raising.
    """
    from .quadrature import Interval

    iv = interval if isinstance(interval, Interval) else Interval.parse(interval)
    vs = h.variables
    R = as_ratfunc(R, vs).with_variables(vs)
    pv = dict(param_values or {})
    out = []
    with mpmath.workdps(dps):
        ends = [("left", iv.lower_mp()), ("right", iv.upper_mp())]
        for side, end in ends:
            for n in ns:
                samples = []
                note = ""
                for xv in _approach_points(end, side, depth):
                    try:
                        Rv = R.evaluate({h.disc: n, h.var: xv, **{p: mpmath.mpf(mpmath.mpmathify(v)) for p, v in pv.items()}})
                        Fv = evaluate_numeric(h, n, xv, pv)
                    except (ZeroDivisionError, PoleError, ValueError) as exc:
                        note = f"evaluation failed at {mpmath.nstr(xv, 5)}: {exc}"
                        continue
                    samples.append((xv, mpmath.mpf(Rv) * Fv))
                label = iv.endpoint_label(side)
                if not samples:
                    out.append(EndpointRecord(label, n, (), None, None, note or "no samples"))
                    continue
                mags = [abs(v) for _, v in samples[-3:]]
                limit = samples[-1][1]
                settled = all(b <= a * (1 + mpmath.mpf(10) ** -10) for a, b in zip(mags, mags[1:])) or mags[-1] == 0
                vanishes = bool(abs(limit) <= tol and settled)
                out.append(EndpointRecord(
                    label, n,
                    tuple((mpmath.nstr(a, 8), mpmath.nstr(b, 8)) for a, b in samples),
                    limit, vanishes, note))
    return out
