"""Linear recurrence operators ``sum_k p_k(n) N^k``.

Text format (printed and parsed)::

    p_0 + p_1*N + ... + p_d*N^d

Coefficients print low-degree terms first, so ``N - n - 1`` prints as
``-1 - n + N``.  Coefficients may be rational in n while an operator is being
manipulated; ``normalized()`` clears them to primitive polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import expr as E
from .polys import MultiPoly, gcd_list, lcm, merge_variables
from .ratfunc import RatFunc, as_ratfunc, from_tree


@dataclass(frozen=True)
class RecOperator:
    coeffs: tuple[RatFunc, ...]
    disc: str = "n"
    shift_symbol: str = "N"

    def __post_init__(self):
        cs = tuple(as_ratfunc(c) for c in self.coeffs)
        # trailing zeros never define the order
        while len(cs) > 1 and cs[-1].is_zero():
            cs = cs[:-1]
        if not cs or cs[-1].is_zero():
            raise ValueError("the zero operator has no order")
        vs: tuple[str, ...] = (self.disc,)
        for c in cs:
            vs = merge_variables(vs, c.variables)
        object.__setattr__(self, "coeffs", tuple(c.with_variables(vs) for c in cs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def variables(self) -> tuple[str, ...]:
        return self.coeffs[0].variables

    @property
    def params(self) -> tuple[str, ...]:
        return tuple(v for v in self.variables if v != self.disc)

    def __getitem__(self, k: int) -> RatFunc:
        return self.coeffs[k]

    def with_variables(self, variables: Sequence[str]) -> "RecOperator":
        return RecOperator(tuple(c.with_variables(merge_variables(variables, c.variables))
                                 for c in self.coeffs), self.disc, self.shift_symbol)

    def scale(self, factor) -> "RecOperator":
        f = as_ratfunc(factor)
        return RecOperator(tuple(c * f for c in self.coeffs), self.disc, self.shift_symbol)

    def subs(self, values) -> "RecOperator":
        """Fix parameters to exact values; substituted names leave the variable list."""
        if self.disc in values:
            raise ValueError("cannot substitute the discrete variable")
        keep = tuple(v for v in self.variables if v not in values)
        return RecOperator(tuple(c.subs(values).with_variables(keep) for c in self.coeffs),
                           self.disc, self.shift_symbol)

    def normalized_with_factor(self) -> tuple["RecOperator", RatFunc]:
        """Return ``(L', lam)`` with ``L' = lam * self`` and L' normalized.

        Normalized: polynomial coefficients with no common polynomial factor,
        integer content 1, and positive leading coefficient of ``p_d``.
        """
        vs = self.variables
        dens = [c.den for c in self.coeffs if not c.is_zero()]
        d = dens[0]
        for x in dens[1:]:
            if not x.is_constant():
                d = lcm(d, x)
        polys = [(c.num * d).exact_div(c.den) for c in self.coeffs]
        g = gcd_list(polys)
        polys = [p.exact_div(g) for p in polys]
        lam = RatFunc(d, g)
        if polys[-1].leading_coefficient() < 0:
            polys = [-p for p in polys]
            lam = -lam
        one = MultiPoly.one(vs)
        op = RecOperator(tuple(RatFunc(p, one, _reduced=True) for p in polys), self.disc, self.shift_symbol)
        return op, lam

    def normalized(self) -> "RecOperator":
        return self.normalized_with_factor()[0]

    def is_normalized(self) -> bool:
        return self == self.normalized()

    def polynomial_coefficients(self) -> list[MultiPoly]:
        if not all(c.is_polynomial() for c in self.coeffs):
            raise ValueError("operator has rational coefficients; normalize it first")
        return [c.num for c in self.coeffs]

    def to_text(self) -> str:
        out = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            sym = "" if k == 0 else (self.shift_symbol if k == 1 else f"{self.shift_symbol}^{k}")
            ctext = c.to_str("asc")
            if not sym:
                term = ctext
            elif c == 1:
                term = sym
            elif c == -1:
                term = f"-{sym}"
            elif c.is_polynomial() and len(c.num) == 1:
                term = f"{ctext}*{sym}"
            else:
                term = f"({ctext})*{sym}"
            if out and term.startswith("-"):
                out.append(" - " + term[1:])
            elif out:
                out.append(" + " + term)
            else:
                out.append(term)
        return "".join(out)

    def __str__(self) -> str:
        return self.to_text()

    @classmethod
    def parse(cls, text: str, disc: str = "n", shift_symbol: str = "N",
              params: Sequence[str] | None = None) -> "RecOperator":
        tree = E.parse(text)
        names = E.free_names(tree)
        if params is None:
            params = sorted(names - {disc, shift_symbol})
        vs = (disc, *params, shift_symbol)
        f = from_tree(tree, vs)
        if f.den.occurs(shift_symbol):
            raise ValueError(f"{shift_symbol} appears in a denominator of {text!r}")
        inner = (disc, *params)
        den = RatFunc(f.den)
        parts = f.num.coefficients_in(shift_symbol)
        coeffs = []
        for k in range(max(parts) + 1 if parts else 1):
            p = parts.get(k, MultiPoly.zero(vs))
            coeffs.append((RatFunc(p) / den).with_variables(inner))
        return cls(tuple(coeffs), disc, shift_symbol)


def operator_equivalent(a: RecOperator, b: RecOperator) -> bool:
    """True iff the coefficient vectors are proportional over the rational-function field."""
    if a.order != b.order:
        return False
    ca, cb = a.coeffs, b.coeffs
    for j in range(len(ca)):
        for k in range(j + 1, len(ca)):
            if ca[j] * cb[k] != ca[k] * cb[j]:
                return False
    # zero patterns must match too (covered above unless both sides vanish)
    return all(x.is_zero() == y.is_zero() for x, y in zip(ca, cb))
