from __future__ import annotations

from fractions import Fraction

import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from aztelescope.estimators import AlmkvistZeilberger, IrrationalityAnalyzer
from aztelescope.recop import RecOperator, operator_equivalent


def test_get_set_params_and_clone():
    est = AlmkvistZeilberger(max_order=2, params="r")
    assert est.get_params()["max_order"] == 2
    est.set_params(max_order=3)
    twin = clone(est)
    assert twin.get_params() == est.get_params()
    assert not hasattr(twin, "results_")


def test_fit_transform_batch(reference_integrands):
    exprs = [reference_integrands[k] for k in ("factorial", "central", "e")]
    est = AlmkvistZeilberger().fit(exprs)
    pairs = est.transform()
    assert pairs[0] == ("-1 - n + N", "-x")
    assert operator_equivalent(est.operators_[1], RecOperator.parse("n + 1 + (-4*n - 6)*N"))
    assert est.operators_[2].order == 2
    assert est.fit_transform(exprs) == pairs


def test_transform_new_expressions_and_predict():
    est = AlmkvistZeilberger().fit("exp(-x)*x^n")
    assert est.transform(["exp(-x)*x^n"]) == est.transform()
    (op,) = est.predict(["exp(-x)*x^n"])
    assert op.to_text() == "-1 - n + N"


def test_unfitted_and_bad_params():
    with pytest.raises(NotFittedError):
        AlmkvistZeilberger().transform()
    with pytest.raises(ValueError):
        AlmkvistZeilberger(max_order=-1).fit("exp(-x)*x^n")
    with pytest.raises(ValueError):
        AlmkvistZeilberger(var="n").fit("exp(-x)*x^n")
    with pytest.raises(ValueError):
        AlmkvistZeilberger(params="x").fit("exp(-x)*x^n")


def test_irrationality_analyzer():
    an = IrrationalityAnalyzer(n_max=20).fit()
    rows = an.transform()
    assert len(rows) == 20 and rows[0][0] == 1
    n, p, q, _ = rows[-1]
    assert Fraction(p, q) == Fraction(493294164866383351699429534601141833239920640000,
                                      1340912564441170249019237618446466016434749440000)
    assert all(g.equals_factorial for g in an.gcd_)
    assert an.poincare_.roots == (Fraction(1, 4),)
    with pytest.raises(NotFittedError):
        IrrationalityAnalyzer().transform()
    with pytest.raises(ValueError):
        IrrationalityAnalyzer(n_max=0).fit()
