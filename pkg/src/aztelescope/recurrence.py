"""Exact unrolling of recurrences and closed-form solution checks.

Sequence values live in ``Q + Q*c`` for a single symbolic constant ``c``
(``e^-1`` or ``pi``); that is enough for every integral family handled here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, NamedTuple, Sequence

import mpmath

from . import expr as E
from .errors import MixedConstantTagsError, SingularLeadingCoefficientError
from .ratfunc import RatFunc, as_ratfunc
from .recop import RecOperator

TAGS = ("none", "inv_e", "pi")
_TAG_TEXT = {"inv_e": "exp(-1)", "pi": "pi"}


def _q(v) -> Fraction:
    return Fraction(v) if not isinstance(v, Fraction) else v


@dataclass(frozen=True)
class ExactNumber:
    """``rational + coeff * c`` where ``c`` is named by ``tag``.

    With tag ``none`` the coefficient is always 0.  A zero coefficient keeps
    its tag, so sequences retain their constant through cancellations.
    """

    rational: Fraction = Fraction(0)
    coeff: Fraction = Fraction(0)
    tag: str = "none"

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown constant tag {self.tag!r}")
        object.__setattr__(self, "rational", _q(self.rational))
        object.__setattr__(self, "coeff", _q(self.coeff))
        if self.tag == "none" and self.coeff:
            raise ValueError("a nonzero constant coefficient needs a tag")

    @classmethod
    def of(cls, value) -> "ExactNumber":
        if isinstance(value, ExactNumber):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(_q(value))

    def _join(self, other: "ExactNumber") -> str:
        if self.tag == "none":
            return other.tag
        if other.tag in ("none", self.tag):
            return self.tag
        raise MixedConstantTagsError(f"cannot combine {self.tag} with {other.tag}")

    def __add__(self, other):
        o = ExactNumber.of(other)
        return ExactNumber(self.rational + o.rational, self.coeff + o.coeff, self._join(o))

    __radd__ = __add__

    def __neg__(self):
        return ExactNumber(-self.rational, -self.coeff, self.tag)

    def __sub__(self, other):
        return self + (-ExactNumber.of(other))

    def __rsub__(self, other):
        return ExactNumber.of(other) - self

    def __mul__(self, other):
        if isinstance(other, ExactNumber):
            if other.coeff == 0:
                return ExactNumber(self.rational * other.rational, self.coeff * other.rational,
                                   self._join(other))
            if self.coeff == 0:
                return other * self.rational
            raise TypeError("product of two constant-carrying numbers leaves Q + Q*c")
        c = _q(other)
        return ExactNumber(self.rational * c, self.coeff * c, self.tag)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ExactNumber):
            if other.coeff:
                raise TypeError("division by a constant-carrying number leaves Q + Q*c")
            other = other.rational
        c = _q(other)
        return ExactNumber(self.rational / c, self.coeff / c, self.tag)

    def __eq__(self, other):
        try:
            o = ExactNumber.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        if self.rational != o.rational or self.coeff != o.coeff:
            return False
        return self.coeff == 0 or self.tag == o.tag

    def __hash__(self):
        return hash((self.rational, self.coeff, self.tag if self.coeff else "none"))

    def is_zero(self) -> bool:
        return self.rational == 0 and self.coeff == 0

    def constant_value(self):
        if self.tag == "inv_e":
            return mpmath.exp(-1)
        if self.tag == "pi":
            return +mpmath.pi
        return mpmath.mpf(0)

    def to_mpf(self, dps: int = 30):
        with mpmath.workdps(dps):
            r = mpmath.mpf(self.rational.numerator) / self.rational.denominator
            if self.coeff:
                r += mpmath.mpf(self.coeff.numerator) / self.coeff.denominator * self.constant_value()
            return +r

    def to_text(self) -> str:
        if not self.coeff:
            return str(self.rational)
        c = self.coeff
        sym = _TAG_TEXT[self.tag]
        mag = abs(c)
        ctext = sym if mag == 1 else f"{mag}*{sym}"
        if not self.rational:
            return ctext if c > 0 else f"-{ctext}"
        return f"{self.rational} {'+' if c > 0 else '-'} {ctext}"

    def __str__(self) -> str:
        return self.to_text()

    @classmethod
    def parse(cls, text: str) -> "ExactNumber":
        """Read forms such as ``-1 + 3*exp(-1)``, ``14 - 38/e`` or ``pi/4``."""
        return _eval_exact(E.parse(text), text)

    def to_json(self) -> dict:
        return {"rational": str(self.rational), "constCoeff": str(self.coeff),
                "constTag": self.tag if self.coeff else "none"}

    @classmethod
    def from_json(cls, d: dict) -> "ExactNumber":
        return cls(Fraction(d["rational"]), Fraction(d.get("constCoeff", "0")), d.get("constTag", "none"))


def _eval_exact(node: E.Node, text: str) -> ExactNumber:
    if isinstance(node, E.Num):
        return ExactNumber(node.value)
    if isinstance(node, E.Var):
        if node.name == "pi":
            return ExactNumber(0, 1, "pi")
        if node.name == "e":
            raise ValueError(f"e itself is not representable, only 1/e: {text!r}")
        raise ValueError(f"unknown constant {node.name!r} in {text!r}")
    if isinstance(node, E.Neg):
        return -_eval_exact(node.arg, text)
    if isinstance(node, E.Call):
        arg = _eval_exact(node.arg, text)
        if node.func == "exp" and arg == ExactNumber(-1):
            return ExactNumber(0, 1, "inv_e")
        raise ValueError(f"only exp(-1) is supported, in {text!r}")
    if isinstance(node, E.BinOp):
        if node.op == "/" and isinstance(node.right, E.Var) and node.right.name == "e":
            return _eval_exact(node.left, text) * ExactNumber(0, 1, "inv_e")
        if node.op == "^" and isinstance(node.left, E.Var) and node.left.name == "e":
            if _eval_exact(node.right, text) == ExactNumber(-1):
                return ExactNumber(0, 1, "inv_e")
        a, b = _eval_exact(node.left, text), _eval_exact(node.right, text)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            return a / b
        if node.op == "^" and not b.coeff and b.rational.denominator == 1 and not a.coeff:
            return ExactNumber(a.rational ** int(b.rational))
    raise ValueError(f"cannot read {text!r} as rational + rational*constant")


# ---------------------------------------------------------------------------
# unrolling


def _coefficient_values(L: RecOperator, m: int) -> list[Fraction]:
    if L.params:
        raise ValueError(f"operator has symbolic parameters {L.params}; substitute them first")
    out = []
    for c in L.coeffs:
        if c.is_zero():
            out.append(Fraction(0))
            continue
        den = c.den.evaluate({L.disc: m})
        if den == 0:
            raise SingularLeadingCoefficientError(m)
        out.append(_q(c.num.evaluate({L.disc: m})) / den)
    return out


def step_values(L: RecOperator, initial: Sequence, start: int, count: int,
                divide: Callable | None = None) -> list:
    """Generic forward stepping: solve for the top term at each index.

    ``divide(total, p_d, m)`` performs the final division; it defaults to
    plain division and exists so integer sequences can insist on exactness.
    """
    d = L.order
    if len(initial) != d:
        raise ValueError(f"order {d} recurrence needs exactly {d} initial values, got {len(initial)}")
    if count < d:
        raise ValueError("count must be at least the number of initial values")
    vals = list(initial)
    m = start
    while len(vals) < count:
        p = _coefficient_values(L, m)
        if p[d] == 0:
            raise SingularLeadingCoefficientError(m)
        total = 0
        for k in range(d):
            if p[k]:
                total = total + vals[m - start + k] * p[k]
        total = -total
        vals.append(divide(total, p[d], m) if divide else total / p[d])
        m += 1
    return vals


@dataclass(frozen=True)
class SequenceTable:
    operator: RecOperator
    start: int
    values: tuple[ExactNumber, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, index: int) -> ExactNumber:
        """Value at sequence index ``index`` (not list position)."""
        i = index - self.start
        if not 0 <= i < len(self.values):
            raise IndexError(f"index {index} outside [{self.start}, {self.start + len(self.values) - 1}]")
        return self.values[i]

    def indices(self) -> range:
        return range(self.start, self.start + len(self.values))

    def items(self):
        return zip(self.indices(), self.values)

    def residuals(self) -> list[ExactNumber]:
        """sum_k p_k(m) v(m+k) for every complete window; all zero for a valid table."""
        d = self.operator.order
        out = []
        for i in range(len(self.values) - d):
            p = _coefficient_values(self.operator, self.start + i)
            acc = ExactNumber()
            for k in range(d + 1):
                acc = acc + self.values[i + k] * p[k]
            out.append(acc)
        return out

    def to_json(self) -> dict:
        return {"operator": self.operator.to_text(), "startIndex": self.start,
                "values": [v.to_json() for v in self.values]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, d: dict, disc: str = "n") -> "SequenceTable":
        return cls(RecOperator.parse(d["operator"], disc=disc), int(d["startIndex"]),
                   tuple(ExactNumber.from_json(v) for v in d["values"]))


def unroll(L: RecOperator, initial: Sequence, start: int, count: int) -> SequenceTable:
    """The first ``count`` values from ``start`` (initial values included)."""
    init = [ExactNumber.of(v) for v in initial]
    tag = "none"
    for v in init:
        tag = ExactNumber(0, 0, tag)._join(v)
    vals = step_values(L, init, start, count)
    return SequenceTable(L, start, tuple(vals))


# ---------------------------------------------------------------------------
# closed forms


@dataclass(frozen=True)
class HyperSeqRatio:
    """c_{n+1}/c_n as a rational function of n."""

    ratio: RatFunc
    disc: str = "n"

    def __post_init__(self):
        r = as_ratfunc(self.ratio)
        if r.den.is_zero():
            raise ValueError("ratio has zero denominator")
        object.__setattr__(self, "ratio", r)

    @classmethod
    def parse(cls, text: str, disc: str = "n") -> "HyperSeqRatio":
        return cls(RatFunc.parse(text), disc)

    def terms(self, first, start: int, count: int) -> list[ExactNumber]:
        out = [ExactNumber.of(first)]
        for m in range(start, start + count - 1):
            r = self.ratio.evaluate({self.disc: m}) if self.ratio.occurs(self.disc) else self.ratio.constant_value()
            out.append(out[-1] * _q(r))
        return out


def check_solution(L: RecOperator, ratio: HyperSeqRatio | RatFunc | str) -> bool:
    """True iff any c_n with the given consecutive ratio satisfies L c = 0."""
    if not isinstance(ratio, HyperSeqRatio):
        ratio = HyperSeqRatio(as_ratfunc(ratio) if not isinstance(ratio, str) else RatFunc.parse(ratio), L.disc)
    r = ratio.ratio
    vs = r.variables
    for c in L.coeffs:
        vs = tuple(dict.fromkeys(vs + c.variables))
    r = r.with_variables(vs)
    total = RatFunc.constant(0, vs)
    prod = RatFunc.constant(1, vs)
    for k, p in enumerate(L.coeffs):
        if k:
            prod = prod * r.shift(ratio.disc, k - 1)
        total = total + p.with_variables(vs) * prod
    return total.is_zero()


class BinomialIdentity(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    equal: bool


def binomial_sum_identity(n: int) -> BinomialIdentity:
    """sum_k C(n,k) (-1)^k/(n+k+1) against 1/((2n+1) C(2n,n))."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    lhs = sum((Fraction((-1) ** k * comb(n, k), n + k + 1) for k in range(n + 1)), Fraction(0))
    rhs = Fraction(1, (2 * n + 1) * comb(2 * n, n))
    return BinomialIdentity(lhs, rhs, lhs == rhs)


__all__ = [
    "BinomialIdentity", "ExactNumber", "HyperSeqRatio", "SequenceTable",
    "binomial_sum_identity", "check_solution", "step_values", "unroll",
]
