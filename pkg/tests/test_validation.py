from __future__ import annotations

import pytest

from aztelescope.quadrature import Interval
from aztelescope.validation import (DEFAULT_PRECISION, check_expressions, check_identifier,
                                    check_interval, check_params, check_positive_int,
                                    check_precision, check_tol, check_variables,
                                    default_precision)


@pytest.mark.parametrize("name", ["x", "r_2", "alpha"])
def test_identifier_ok(name):
    assert check_identifier(name) == name


@pytest.mark.parametrize("name", ["", "2x", "a-b", "exp", "N", None])
def test_identifier_rejected(name):
    with pytest.raises(ValueError):
        check_identifier(name)


def test_params():
    assert check_params(None) is None
    assert check_params("r, s") == ("r", "s")
    assert check_params(["r"]) == ("r",)
    for bad in ("r,r", "x", "n", "r,2"):
        with pytest.raises(ValueError):
            check_params(bad)


def test_variables_and_ints():
    assert check_variables("t", "k") == ("t", "k")
    with pytest.raises(ValueError):
        check_variables("x", "x")
    assert check_positive_int(3, "k", 1) == 3
    for bad in (0, 1.5, True):
        with pytest.raises(ValueError):
            check_positive_int(bad, "k", 1)


def test_tol_and_interval():
    assert check_tol("1e-10") == 1e-10
    for bad in (0, -1e-3, float("nan")):
        with pytest.raises(ValueError):
            check_tol(bad)
    assert check_interval("0,inf") == Interval.half(0)
    assert check_interval("-inf,inf") == Interval.line()
    assert check_interval("1/2,3") == Interval.finite("1/2", 3)
    for bad in ("1,0", "0", "inf,0", "0,-inf"):
        with pytest.raises(ValueError):
            check_interval(bad)


def test_precision_env(monkeypatch):
    monkeypatch.delenv("AZ_PRECISION", raising=False)
    assert default_precision() == DEFAULT_PRECISION
    monkeypatch.setenv("AZ_PRECISION", "90")
    assert check_precision(None) == 90
    assert check_precision(40) == 40
    monkeypatch.setenv("AZ_PRECISION", "-5")
    with pytest.raises(ValueError):
        default_precision()
    with pytest.raises(ValueError):
        check_precision(0)


def test_expressions():
    assert check_expressions("x^n") == ["x^n"]
    assert check_expressions(("a", "b")) == ["a", "b"]
    with pytest.raises(ValueError):
        check_expressions([])
    with pytest.raises(TypeError):
        check_expressions(5)
