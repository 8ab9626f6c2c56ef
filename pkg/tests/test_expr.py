from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from aztelescope import expr as E
from aztelescope.errors import ParseError


def test_product_of_exp_and_power():
    tree = E.parse("exp(-x) * x^n")
    assert tree == E.BinOp("*", E.Call("exp", E.Neg(E.Var("x"))), E.BinOp("^", E.Var("x"), E.Var("n")))


def test_quotient_of_powers():
    tree = E.parse("x^(2*n) / (x^2 + 1)^(n + 1)")
    assert isinstance(tree, E.BinOp) and tree.op == "/"
    assert tree.left.op == "^" and tree.right.op == "^"


def test_syntax_error_offset():
    with pytest.raises(ParseError) as info:
        E.parse("x^^2")
    assert info.value.offset == 2
    assert "offset 2" in str(info.value)


@pytest.mark.parametrize("text", ["", "x +", "(x", "x)", "exp x", "2 $ 3", "x y"])
def test_malformed(text):
    with pytest.raises(ParseError):
        E.parse(text)


def test_precedence():
    # ^ binds tighter than unary minus, which binds tighter than *
    assert E.parse("-x^2") == E.Neg(E.BinOp("^", E.Var("x"), E.Num(Fraction(2))))
    assert E.parse("2^3^2") == E.BinOp("^", E.Num(Fraction(2)), E.BinOp("^", E.Num(Fraction(3)), E.Num(Fraction(2))))
    assert E.parse("a-b-c") == E.BinOp("-", E.BinOp("-", E.Var("a"), E.Var("b")), E.Var("c"))
    assert E.parse("x**2") == E.parse("x^2")


def test_free_names():
    assert E.free_names(E.parse("x^n/(x+1)^(n+r+1)*exp(-x)")) == {"x", "n", "r"}


_names = st.sampled_from(["x", "n", "r"])
_leaves = st.one_of(_names.map(E.Var), st.integers(0, 9).map(lambda k: E.Num(Fraction(k))))


def _extend(children):
    return st.one_of(
        children.map(E.Neg),
        st.tuples(st.sampled_from("+-*/^"), children, children).map(lambda t: E.BinOp(*t)),
        children.map(lambda c: E.Call("exp", c)),
    )


@given(st.recursive(_leaves, _extend, max_leaves=8))
def test_print_parse_round_trip(tree):
    assert E.parse(E.to_text(tree)) == tree
