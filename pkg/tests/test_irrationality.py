from __future__ import annotations

import json
import math
from fractions import Fraction

import mpmath
import pytest

from aztelescope.errors import NonIntegralStepError, PrecisionError
from aztelescope.irrationality import (approximation_report, constant_inv_e, e_operator,
                                       gcd_structure, integer_pair_sequence,
                                       irrationality_criterion_check, poincare_leading, report_json)
from aztelescope.recop import RecOperator

import oracles

N20_NUM = 493294164866383351699429534601141833239920640000
N20_DEN = 1340912564441170249019237618446466016434749440000


@pytest.fixture(scope="module")
def records():
    return approximation_report(n_max=40, precision=200)


def test_integer_pairs():
    s = integer_pair_sequence(e_operator(), (-1, 14), (3, -38), 1, 4)
    assert s.a == (-1, 14, -426, 24024)
    assert s.b == (3, -38, 1158, -65304)


def test_integer_pairs_match_oracle():
    s = integer_pair_sequence(e_operator(), (-1, 14), (3, -38), 1, 30)
    for n in s.indices():
        assert s[n] == oracles.e_integral_pair(n)


def test_factorial_sequence():
    s = integer_pair_sequence(RecOperator.parse("N - (n+1)"), [1], [1], 0, 5)
    assert s.a == (1, 1, 2, 6, 24)


def test_non_integral_step():
    with pytest.raises(NonIntegralStepError):
        integer_pair_sequence(RecOperator.parse("(n+2)*N - 1"), [1], [1], 0, 4)


def test_constant_inv_e():
    c = constant_inv_e(terms=5)
    assert c.value == Fraction(11, 30) and c.bound == Fraction(1, 720)
    c1 = constant_inv_e(1)
    assert abs(c1.value - Fraction("0.36787944117144232")) <= Fraction(1, 10)
    c40 = constant_inv_e(40)
    assert c40.bound <= Fraction(1, 10 ** 40)
    assert c40.digits(39) == "0.367879441171442321595523770161460867445"
    with mpmath.workdps(60):
        assert abs(mpmath.mpf(c40.value.numerator) / c40.value.denominator - oracles.inv_e(60)) < mpmath.mpf(10) ** -40


def test_record_at_four(records):
    r = records[3]
    assert r.n == 4 and r.unreduced == (24024, 65304)
    assert r.fraction == Fraction(24024, 65304)
    assert abs(float(r.fraction) - 0.36787945) < 1e-8


def test_record_at_twenty(records):
    r = records[19]
    assert r.unreduced == (N20_NUM, N20_DEN)
    assert r.b < 0
    assert r.distance_upper < Fraction(1, 10 ** 37)
    assert r.agreeing_digits >= 37


def test_decay_bound_everywhere(records):
    assert all(r.decay_ok for r in records)


def test_gcd_structure(records):
    rows = gcd_structure(records)
    assert [rows[i].g for i in (0, 1, 3)] == [1, 2, 24]
    # empirical regularity, confirmed against the brute-force oracle for n <= 41
    assert all(row.equals_factorial for row in rows)
    for row, rec in zip(rows, records):
        assert row.a_reduced * row.g == rec.a and row.b_reduced * row.g == rec.b
    with pytest.raises(ValueError):
        gcd_structure([])


def test_exponents_match_oracle(records):
    for r in records:
        assert abs(r.exponent - oracles.exponent_estimate(r.a, r.b)) < 1e-9


def test_raw_exponent_degenerates(records):
    assert all(r.raw_exponent < 1.5 for r in records[19:])


def test_precision_too_low():
    with pytest.raises(PrecisionError):
        approximation_report(n_max=20, precision=20)


@pytest.mark.parametrize("text, top, roots, degenerate", [
    ("N^2 + 2*(2*n+3)*(n+2)*N - (n+1)*(n+2)", "4*N - 1", [Fraction(1, 4)], False),
    ("(n+1) + (-4*n-6)*N", "4*N - 1", [Fraction(1, 4)], False),
    ("N - (n+1)", "-1", [], True),
])
def test_poincare(text, top, roots, degenerate):
    L = RecOperator.parse(text)
    rep = poincare_leading(L)
    # the top polynomial is reported for the normalized operator, so up to sign
    assert top in (rep.top.to_str(), (-rep.top).to_str())
    assert list(rep.roots) == roots and rep.degenerate is degenerate
    assert rep.reconstruct() == L.normalized()


def test_poincare_unsolved_factor():
    rep = poincare_leading(RecOperator.parse("n*N^2 - 2*n"))
    assert rep.roots == () and rep.unsolved is not None


def test_criterion(records):
    first, twentieth = records[0], records[19]
    assert first.fraction == Fraction(1, 3)
    res = irrationality_criterion_check([first, twentieth], 1, 1)
    assert [r.holds for r in res] == [True, True]
    strong = irrationality_criterion_check(records[-5:], 1, 100)
    assert not any(r.holds for r in strong)
    with pytest.raises(ValueError):
        irrationality_criterion_check(records, 0, 1)


def test_criterion_oracle_value(records):
    r = records[19]
    with mpmath.workdps(100):
        scaled = abs(oracles.inv_e(100) - mpmath.mpf(r.p) / r.q) * mpmath.mpf(r.q) ** 2
    assert scaled < 1


def test_json_report(records):
    doc = json.loads(report_json(records[:20], poincare_leading(e_operator())))
    assert doc["schemaVersion"] == 1
    rec = doc["records"][19]
    assert rec["unreduced"] == {"numerator": str(N20_NUM), "denominator": str(N20_DEN)}
    assert rec["decimal"]["digits"] == 40
    assert doc["poincare"]["roots"] == ["1/4"]
    assert math.gcd(int(rec["reduced"]["numerator"]), int(rec["reduced"]["denominator"])) == 1
