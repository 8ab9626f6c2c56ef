"""Deterministic high-precision quadrature, used as an independent numeric oracle.

Every interval is mapped onto a bounded parameter range and integrated with
adaptive Gauss-Legendre panels (fixed rule order, bisection driven by the
difference between a panel and its two halves).  Gauss nodes are interior, so
endpoint singularities of the substitution are never evaluated.  Panel
results are summed in a fixed left-to-right order, so repeated calls are
bitwise identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

import mpmath

from .errors import NonConvergenceError, PoleError
from .hyperterm import HyperTerm, evaluate_numeric

DEFAULT_TOL = 1e-12
MAX_DEPTH = 40
RULE_ORDER = 20


@dataclass(frozen=True)
class Interval:
    """``finite`` [a, b], ``half`` [a, inf) or ``line`` (-inf, inf)."""

    kind: str
    a: Fraction | None = None
    b: Fraction | None = None

    def __post_init__(self):
        if self.kind == "finite":
            if self.a is None or self.b is None or not self.a < self.b:
                raise ValueError("finite interval needs a < b")
        elif self.kind == "half":
            if self.a is None:
                raise ValueError("half-infinite interval needs a lower endpoint")
        elif self.kind != "line":
            raise ValueError(f"unknown interval kind {self.kind!r}")

    @classmethod
    def finite(cls, a, b) -> "Interval":
        return cls("finite", Fraction(a), Fraction(b))

    @classmethod
    def half(cls, a) -> "Interval":
        return cls("half", Fraction(a))

    @classmethod
    def line(cls) -> "Interval":
        return cls("line")

    @classmethod
    def parse(cls, text: str) -> "Interval":
        """``a,b`` | ``a,inf`` | ``-inf,inf`` with integer or fraction endpoints."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 2:
            raise ValueError(f"bad interval {text!r}")
        lo, hi = parts
        inf = ("inf", "+inf", "oo")
        if lo in ("-inf", "-oo") and hi in inf:
            return cls.line()
        if hi in inf:
            return cls.half(Fraction(lo))
        if lo in ("-inf", "-oo") or hi in ("-inf", "-oo"):
            raise ValueError(f"unsupported interval {text!r}")
        return cls.finite(Fraction(lo), Fraction(hi))

    def lower_mp(self):
        return -mpmath.inf if self.kind == "line" else mpmath.mpf(self.a.numerator) / self.a.denominator

    def upper_mp(self):
        return mpmath.inf if self.kind != "finite" else mpmath.mpf(self.b.numerator) / self.b.denominator

    def endpoint_label(self, side: str) -> str:
        if side == "left":
            return "-inf" if self.kind == "line" else str(self.a)
        return "inf" if self.kind != "finite" else str(self.b)

    def __str__(self) -> str:
        return f"{self.endpoint_label('left')},{self.endpoint_label('right')}"


@dataclass(frozen=True)
class Substitution:
    """x = x_of(t) on (t_lo, t_hi) with Jacobian dx/dt = jacobian(t).

    Both callables are exact on Fraction input and work on mpf input.
    """

    t_lo: int
    t_hi: int
    x_of: Callable
    jacobian: Callable


def transform(interval: Interval) -> Substitution:
    if interval.kind == "finite":
        a, b = interval.a, interval.b
        return Substitution(0, 1, lambda t: a + (b - a) * t, lambda t: (b - a) + 0 * t)
    if interval.kind == "half":
        a = interval.a
        return Substitution(0, 1, lambda t: a + t / (1 - t), lambda t: 1 / (1 - t) ** 2)
    return Substitution(-1, 1, lambda t: t / (1 - t * t), lambda t: (1 + t * t) / (1 - t * t) ** 2)


@lru_cache(maxsize=32)
def _gauss_legendre(m: int, dps: int) -> tuple[tuple, tuple]:
    """Nodes and weights on [-1, 1] by Newton iteration on P_m."""
    with mpmath.workdps(dps + 10):
        nodes, weights = [], []
        for i in range(1, m + 1):
            x = mpmath.cos(mpmath.pi * (i - mpmath.mpf(1) / 4) / (m + mpmath.mpf(1) / 2))
            for _ in range(100):
                p0, p1 = mpmath.mpf(1), x
                for k in range(2, m + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = m * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < mpmath.mpf(10) ** (-(dps + 5)):
                    break
            p0, p1 = mpmath.mpf(1), x
            for k in range(2, m + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = m * (x * p1 - p0) / (x * x - 1)
            nodes.append(x)
            weights.append(2 / ((1 - x * x) * dp * dp))
        return tuple(nodes), tuple(weights)


@dataclass(frozen=True)
class QuadResult:
    value: object  # mpmath.mpf
    error: object
    panels: int
    dps: int

    def __float__(self) -> float:
        return float(self.value)


def _integrate_function(g: Callable, lo, hi, tol: float, max_depth: int, order: int, dps: int):
    nodes, weights = _gauss_legendre(order, dps)

    def rule(a, b):
        c, r = (a + b) / 2, (b - a) / 2
        s = mpmath.mpf(0)
        for xi, wi in zip(nodes, weights):
            s += wi * g(c + r * xi)
        return s * r

    total_width = hi - lo
    accepted: list[tuple] = []
    # explicit stack, left panel processed first: fixed evaluation and summation order
    stack = [(mpmath.mpf(lo), mpmath.mpf(hi), 0, None)]
    while stack:
        a, b, depth, whole = stack.pop()
        if whole is None:
            whole = rule(a, b)
        mid = (a + b) / 2
        left, right = rule(a, mid), rule(mid, b)
        err = abs(left + right - whole)
        local_tol = tol * (b - a) / total_width
        if err <= local_tol:
            accepted.append((left + right, err))
            continue
        if depth >= max_depth:
            raise NonConvergenceError(
                f"panel [{mpmath.nstr(a, 8)}, {mpmath.nstr(b, 8)}] did not converge "
                f"(error {mpmath.nstr(err, 3)}) after {max_depth} bisections")
        stack.append((mid, b, depth + 1, right))
        stack.append((a, mid, depth + 1, left))
    value = mpmath.fsum(v for v, _ in accepted)
    error = mpmath.fsum(e for _, e in accepted)
    return value, error, len(accepted)


def _real_roots(p, var: str, values: Mapping[str, object]) -> list:
    """Real roots of a polynomial in ``var`` after substituting ``values``."""
    q = p.subs(values) if values else p
    coeffs = q.coefficients_in(var)
    if not coeffs or max(coeffs) == 0:
        return []
    deg = max(coeffs)
    cs = []
    for k in range(deg, -1, -1):
        c = coeffs.get(k)
        cs.append(mpmath.mpf(0) if c is None else _mpq(c.constant_value()))
    roots = mpmath.polyroots(cs, maxsteps=200, extraprec=200)
    eps = mpmath.mpf(10) ** (-(mpmath.mp.dps // 2))
    return [mpmath.re(r) for r in roots if abs(mpmath.im(r)) <= eps * max(1, abs(r))]


def _mpq(c):
    c = Fraction(c)
    return mpmath.mpf(c.numerator) / c.denominator


def interior_poles(h: HyperTerm, n: int, interval: Interval,
                   param_values: Mapping[str, object] | None = None) -> list:
    """Poles of F_n strictly inside ``interval`` (endpoint singularities are not reported)."""
    exact = {k: Fraction(v) for k, v in (param_values or {}).items()}
    lo, hi = interval.lower_mp(), interval.upper_mp()
    out = []
    candidates = [h.exp_part.den]
    for base, ex in h.factors:
        e = ex.as_poly(h.disc).evaluate({h.disc: n, **exact})
        if e > 0:
            candidates.append(base.den)
        elif e < 0:
            candidates.append(base.num)
    for poly in candidates:
        if not poly.occurs(h.var):
            continue
        for r in _real_roots(poly, h.var, exact):
            if lo < r < hi and all(abs(r - o) > mpmath.mpf(10) ** -10 for o in out):
                out.append(r)
    return sorted(out)


def integrate(h: HyperTerm, n: int, interval: Interval | str,
              param_values: Mapping[str, object] | None = None,
              tol: float = DEFAULT_TOL, max_depth: int = MAX_DEPTH,
              order: int = RULE_ORDER) -> QuadResult:
    """Integral of F_n over ``interval`` with absolute error estimate.

    Working precision is slaved to ``tol`` (about 20 digits beyond it).
    Raises NonConvergenceError or PoleError.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    iv = interval if isinstance(interval, Interval) else Interval.parse(interval)
    sub = transform(iv)
    dps = max(30, int(math.ceil(-math.log10(tol))) + 20)
    with mpmath.workdps(dps):
        poles = interior_poles(h, n, iv, param_values)
        if poles:
            raise PoleError(f"integrand has a pole at x={mpmath.nstr(poles[0], 12)} inside [{iv}]")

        def g(t):
            x = sub.x_of(t)
            try:
                return evaluate_numeric(h, n, x, param_values) * sub.jacobian(t)
            except ZeroDivisionError as exc:
                raise PoleError(f"pole at x={mpmath.nstr(x, 10)}") from exc

        value, error, panels = _integrate_function(g, sub.t_lo, sub.t_hi, tol, max_depth, order, dps)
        return QuadResult(+value, +error, panels, dps)
