"""Reference values computed without the package under test.

Everything here uses only the standard library and mpmath, so agreement with
the package is evidence rather than tautology.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

import mpmath


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def x_one_minus_x_power(n: int) -> list[int]:
    """Coefficients (ascending) of (x(1-x))^n."""
    p = [1]
    for _ in range(n):
        p = _poly_mul(p, [0, 1, -1])
    return p


def _derivatives_at(p: list[int], x0: int) -> list[int]:
    out = []
    cur = list(p)
    while cur:
        out.append(sum(c * x0 ** k for k, c in enumerate(cur)))
        cur = [k * c for k, c in enumerate(cur)][1:]
    return out


def e_integral_pair(n: int) -> tuple[int, int]:
    """(a_n, b_n) with  int_0^1 (x(1-x))^n e^{-x} dx = a_n + b_n/e.

    Repeated integration by parts: int_0^1 p e^{-x} = sum_k p^(k)(0) - e^{-1} sum_k p^(k)(1).
    """
    p = x_one_minus_x_power(n)
    return sum(_derivatives_at(p, 0)), -sum(_derivatives_at(p, 1))


def inv_e(dps: int = 250):
    with mpmath.workdps(dps):
        return mpmath.exp(-1)


def intro_closed_form(n: int):
    """int_R x^{2n}/(x^2+1)^{n+1} dx = pi 4^{-n} C(2n, n)."""
    return mpmath.pi * comb(2 * n, n) / mpmath.mpf(4) ** n


def factorial_integral(n: int) -> int:
    return factorial(n)


def beta_family(n: int, r: int) -> Fraction:
    """int_0^inf x^n/(x+1)^{n+r+1} dx = B(n+1, r) = 1/(r C(r+n, n))."""
    return Fraction(1, r * comb(r + n, n))


def central_binomial_integral(n: int) -> Fraction:
    """int_0^1 (x(1-x))^n dx = n!^2/(2n+1)!."""
    return Fraction(factorial(n) ** 2, factorial(2 * n + 1))


def binomial_sum(n: int) -> Fraction:
    return sum((Fraction((-1) ** k * comb(n, k), n + k + 1) for k in range(n + 1)), Fraction(0))


def exponent_estimate(a: int, b: int, dps: int = 250) -> float:
    """-log|e^-1 - p/q| / log q for the reduced p/q = -a/b."""
    f = Fraction(-a, b)
    with mpmath.workdps(dps):
        d = abs(inv_e(dps) - mpmath.mpf(f.numerator) / f.denominator)
        return float(-mpmath.log(d) / mpmath.log(f.denominator))
