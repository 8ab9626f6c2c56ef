from __future__ import annotations

import json
import random
from fractions import Fraction
from math import factorial

import pytest

from aztelescope.errors import MixedConstantTagsError, SingularLeadingCoefficientError
from aztelescope.recop import RecOperator
from aztelescope.recurrence import (ExactNumber, HyperSeqRatio, SequenceTable,
                                    binomial_sum_identity, check_solution, unroll)

import oracles

E_OP = RecOperator.parse("N^2 + 2*(2*n+3)*(n+2)*N - (n+1)*(n+2)")


def test_exact_number_arithmetic():
    a = ExactNumber.parse("-1 + 3*exp(-1)")
    b = ExactNumber.parse("14 - 38/e")
    assert a + b == ExactNumber(13, -35, "inv_e")
    assert (a * 2).to_text() == "-2 + 6*exp(-1)"
    assert ExactNumber.parse("pi/4") == ExactNumber(0, Fraction(1, 4), "pi")
    with pytest.raises(MixedConstantTagsError):
        a + ExactNumber(0, 1, "pi")


def test_exact_number_text_round_trip():
    for v in [ExactNumber(Fraction(1, 6)), ExactNumber(-426, 1158, "inv_e"), ExactNumber(0, -1, "pi")]:
        assert ExactNumber.parse(v.to_text()) == v


def test_fibonacci():
    t = unroll(RecOperator.parse("N^2 - N - 1"), [1, 1], 1, 8)
    assert [v.rational for v in t.values] == [1, 1, 2, 3, 5, 8, 13, 21]
    assert t[1] == 1 and t[8] == 21


def test_factorials():
    t = unroll(RecOperator.parse("N - (n+1)"), [1], 0, 21)
    assert [v.rational for v in t.values] == [factorial(n) for n in range(21)]


def test_e_sequence():
    t = unroll(E_OP, ["-1 + 3*exp(-1)", "14 - 38*exp(-1)"], 1, 4)
    assert t[3] == ExactNumber(-426, 1158, "inv_e")
    assert t[4] == ExactNumber(24024, -65304, "inv_e")


def test_central_binomial_terms():
    t = unroll(RecOperator.parse("(n+1) + (-4*n-6)*N"), ["1/6"], 1, 7)
    assert [str(v) for v in t.values] == ["1/6", "1/30", "1/140", "1/630", "1/2772", "1/12012", "1/51480"]


def test_residuals_vanish():
    t = unroll(E_OP, ["-1 + 3*exp(-1)", "14 - 38*exp(-1)"], 1, 12)
    assert all(r.is_zero() for r in t.residuals())


def test_singular_leading_coefficient():
    with pytest.raises(SingularLeadingCoefficientError) as info:
        unroll(RecOperator.parse("(n-3)*N - 1"), [1], 0, 6)
    assert info.value.index == 3


def test_initial_count_checked():
    with pytest.raises(ValueError):
        unroll(E_OP, [1], 1, 5)


def test_mixed_tags_in_initials():
    with pytest.raises(MixedConstantTagsError):
        unroll(E_OP, ["exp(-1)", "pi"], 1, 4)


def test_json_round_trip():
    t = unroll(E_OP, ["-1 + 3*exp(-1)", "14 - 38*exp(-1)"], 1, 5)
    doc = json.loads(t.dumps())
    assert doc["startIndex"] == 1 and doc["values"][0] == {"rational": "-1", "constCoeff": "3", "constTag": "inv_e"}
    assert SequenceTable.from_json(doc) == t


@pytest.mark.parametrize("op, ratio, expected", [
    ("(2*n+2)*N - (2*n+1)", "(2*n+1)/(2*(n+1))", True),
    ("(n+1) - (n+r+1)*N", "(n+1)/(n+r+1)", True),
    ("N - (n+1)", "n+2", False),
    ("N - (n+1)", "n+1", True),
    ("(n+1) + (-4*n-6)*N", "(n+1)/(2*(2*n+3))", True),
])
def test_check_solution(op, ratio, expected):
    assert check_solution(RecOperator.parse(op), HyperSeqRatio.parse(ratio)) is expected


@pytest.mark.parametrize("op, ratio, start", [
    ("(2*n+2)*N - (2*n+1)", "(2*n+1)/(2*(n+1))", 0),
    ("N - (n+1)", "n+1", 0),
    ("(n+1) - (n+3)*N", "(n+1)/(n+3)", 0),
    ("(n+1) + (-4*n-6)*N", "(n+1)/(2*(2*n+3))", 1),
])
def test_solution_implies_unroll_agreement(op, ratio, start):
    rng = random.Random(op)
    L = RecOperator.parse(op)
    r = HyperSeqRatio.parse(ratio)
    assert check_solution(L, r)
    c = Fraction(rng.randint(1, 50), rng.randint(1, 50))
    assert list(unroll(L, [c], start, 20).values) == r.terms(c, start, 20)


@pytest.mark.parametrize("n, value", [(0, 1), (1, Fraction(1, 6)), (2, Fraction(1, 30))])
def test_binomial_identity_examples(n, value):
    lhs, rhs, equal = binomial_sum_identity(n)
    assert lhs == rhs == value and equal


def test_binomial_identity_up_to_50():
    for n in range(51):
        res = binomial_sum_identity(n)
        assert res.equal and res.lhs == oracles.binomial_sum(n)
