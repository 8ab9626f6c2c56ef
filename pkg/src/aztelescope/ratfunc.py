"""Reduced rational functions over Q.

``RatFunc(num, den)`` is always stored reduced: ``gcd(num, den) == 1`` and the
denominator is an integral polynomial with content 1 and positive leading
coefficient (graded-lex order).  Rational scalars live in the numerator, so
``(2n+2)/(4n+4)`` is stored as ``1/2`` over ``1``.
"""

from __future__ import annotations

import math

from fractions import Fraction
from typing import Mapping, Sequence

from . import expr as E
from .errors import UnknownVariableError
from .polys import Coeff, MultiPoly, as_coeff, gcd, merge_variables


def _to_poly(p, variables=()) -> MultiPoly:
    if isinstance(p, MultiPoly):
        return p
    return MultiPoly.constant(p, variables)


def normalize(num: MultiPoly, den: MultiPoly) -> "RatFunc":
    """Reduce ``num/den`` to canonical form. Raises ZeroDivisionError on a zero denominator."""
    return RatFunc(num, den)


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced: bool = False):
        if isinstance(num, RatFunc) and den is None:
            self.num, self.den = num.num, num.den
            return
        num = _to_poly(num, den.variables if isinstance(den, MultiPoly) else ())
        den = _to_poly(1 if den is None else den, num.variables)
        num, den = num._align(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if _reduced:
            self.num, self.den = num, den
            return
        if num.is_zero():
            self.num, self.den = num, MultiPoly.one(num.variables)
            return
        if not den.is_constant():
            g = gcd(num, den)
            if not g.is_constant():
                num = num.exact_div(g)
                den = den.exact_div(g)
        c, den = den.primitive()
        if c != 1:
            num = num.exact_div(c)
        self.num, self.den = num, den

    # -- construction -------------------------------------------------
    @classmethod
    def constant(cls, c, variables: Sequence[str] = ()) -> "RatFunc":
        return cls(MultiPoly.constant(Fraction(c), variables), MultiPoly.one(variables), _reduced=True)

    @classmethod
    def variable(cls, name: str, variables: Sequence[str] | None = None) -> "RatFunc":
        v = MultiPoly.variable(name, variables)
        return cls(v, MultiPoly.one(v.variables), _reduced=True)

    @classmethod
    def parse(cls, text: str, variables: Sequence[str] | None = None) -> "RatFunc":
        """Parse canonical text (no ``exp``, integer powers only).

        Without ``variables`` the variable tuple is the sorted set of names used.
        """
        tree = E.parse(text)
        if variables is None:
            variables = tuple(sorted(E.free_names(tree)))
        return from_tree(tree, variables)

    @property
    def variables(self) -> tuple[str, ...]:
        return self.num.variables

    def with_variables(self, variables: Sequence[str]) -> "RatFunc":
        return RatFunc(self.num.with_variables(variables), self.den.with_variables(variables), _reduced=True)

    def _coerce(self, other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MultiPoly):
            return RatFunc(other, MultiPoly.one(other.variables), _reduced=True)
        if isinstance(other, (int, Fraction)):
            return RatFunc.constant(other, self.variables)
        return None

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return as_coeff(Fraction(self.num.constant_value()) / self.den.constant_value())

    def occurs(self, var: str) -> bool:
        return self.num.occurs(var) or self.den.occurs(var)

    def used_variables(self) -> tuple[str, ...]:
        used = set(self.num.used_variables()) | set(self.den.used_variables())
        return tuple(v for v in self.variables if v in used)

    # -- arithmetic ---------------------------------------------------
    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _reduced=True)

    def __add__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        if o.den.is_constant() and o.den.constant_value() == 1:
            return RatFunc(self.num + o.num * self.den, self.den, _reduced=True)
        if self.den.is_constant() and self.den.constant_value() == 1:
            return RatFunc(self.num * o.den + o.num, o.den, _reduced=True)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RatFunc.constant(0, merge_variables(self.variables, o.variables))
        if o.is_constant():
            c = o.constant_value()
            return RatFunc(self.num * c, self.den, _reduced=True)
        if self.is_constant():
            c = self.constant_value()
            return RatFunc(o.num * c, o.den, _reduced=True)
        if self.is_polynomial() and o.is_polynomial():
            return RatFunc(self.num * o.num, self.den * o.den, _reduced=True)
        # cross-cancel first to keep the final gcd small
        g1 = gcd(self.num, o.den)
        g2 = gcd(o.num, self.den)
        n1, d2 = self.num.exact_div(g1), o.den.exact_div(g1)
        n2, d1 = o.num.exact_div(g2), self.den.exact_div(g2)
        num, den = n1 * n2, d1 * d2
        c, den = den.primitive()
        return RatFunc(num.exact_div(c) if c != 1 else num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        c, den = self.num.primitive()
        return RatFunc(self.den.exact_div(c) if c != 1 else self.den, den, _reduced=True)

    def __truediv__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if not isinstance(k, int):
            raise ValueError("rational functions only take integer powers")
        if k < 0:
            return self.inverse() ** (-k)
        # coprime num/den stay coprime; a primitive den stays primitive
        return RatFunc(self.num ** k, self.den ** k, _reduced=True)

    # -- calculus and substitution ------------------------------------
    def derivative(self, var: str) -> "RatFunc":
        if var not in self.variables:
            raise UnknownVariableError(var)
        if self.den.is_constant():
            return RatFunc(self.num.derivative(var), self.den, _reduced=True)
        dn = self.num.derivative(var) * self.den - self.num * self.den.derivative(var)
        return RatFunc(dn, self.den * self.den)

    def shift(self, var: str, k: int) -> "RatFunc":
        if var not in self.variables:
            raise UnknownVariableError(var)
        return RatFunc(self.num.shift(var, k), self.den.shift(var, k))

    def compose(self, var: str, value: "RatFunc | MultiPoly") -> "RatFunc":
        """Substitute a rational function for ``var``."""
        value = self._coerce(value)
        if not self.occurs(var):
            return self

        def sub_poly(p: MultiPoly) -> RatFunc:
            coeffs = p.coefficients_in(var)
            d = max(coeffs)
            # homogenize over value.den to avoid repeated gcds
            out = MultiPoly.zero(merge_variables(p.variables, value.variables))
            for k, c in coeffs.items():
                out = out + c * value.num ** k * value.den ** (d - k)
            return RatFunc(out, value.den ** d)

        return sub_poly(self.num) / sub_poly(self.den)

    def subs(self, values: Mapping[str, object]) -> "RatFunc":
        """Substitute exact rationals for some variables."""
        return RatFunc(self.num.subs(values), self.den.subs(values))

    def evaluate(self, values: Mapping[str, object]):
        d = self.den.evaluate(values)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at {dict(values)}")
        n = self.num.evaluate(values)
        if isinstance(n, (int, Fraction)) and isinstance(d, (int, Fraction)):
            return as_coeff(Fraction(n) / d)
        return n / d

    # -- comparison / printing ---------------------------------------
    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def to_str(self, order: str = "desc") -> str:
        if self.den.is_constant():
            return self.num.to_str(order)
        # clear fractional numerator content into the denominator: -1/(4*n + 6), not -1/2/(2*n + 3)
        k = math.lcm(*(Fraction(c).denominator for _, c in self.num))
        n, d = (self.num * k).to_str(order), (self.den * k).to_str(order)
        if len(self.num) > 1:
            n = f"({n})"
        if len(self.den) > 1 or (len(self.den) == 1 and next(iter(self.den.terms.values())) != 1):
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"RatFunc({self.to_str()!r})"


def as_ratfunc(value, variables: Sequence[str] = ()) -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, MultiPoly):
        return RatFunc(value, MultiPoly.one(value.variables), _reduced=True)
    if isinstance(value, str):
        return RatFunc.parse(value, variables or None)
    return RatFunc.constant(value, variables)


def from_tree(node: E.Node, variables: Sequence[str]) -> RatFunc:
    """Evaluate an expression tree as a rational function over ``variables``.

    Only integer exponents are accepted and ``exp`` is rejected.
    """
    variables = tuple(variables)
    if isinstance(node, E.Num):
        return RatFunc.constant(node.value, variables)
    if isinstance(node, E.Var):
        if node.name not in variables:
            raise UnknownVariableError(node.name)
        return RatFunc.variable(node.name, variables)
    if isinstance(node, E.Neg):
        return -from_tree(node.arg, variables)
    if isinstance(node, E.Call):
        raise ValueError(f"{node.func}(...) is not a rational function")
    if node.op == "^":
        k = from_tree(node.right, variables)
        if not k.is_constant() or Fraction(k.constant_value()).denominator != 1:
            raise ValueError(f"non-integer exponent {E.to_text(node.right)!r} in rational expression")
        return from_tree(node.left, variables) ** int(k.constant_value())
    a = from_tree(node.left, variables)
    b = from_tree(node.right, variables)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    return a / b
