"""Hypothesis strategies for small polynomials and rational functions."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from aztelescope.polys import MultiPoly
from aztelescope.ratfunc import RatFunc

VARS = ("n", "x")

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, variables=VARS, max_deg=2, max_terms=4, nonzero=False):
    k = draw(st.integers(1 if nonzero else 0, max_terms))
    terms = {}
    for _ in range(k):
        e = tuple(draw(st.integers(0, max_deg)) for _ in variables)
        c = draw(coeffs)
        if c:
            terms[e] = c
    p = MultiPoly(terms, variables)
    if nonzero and p.is_zero():
        p = MultiPoly.constant(draw(st.integers(1, 5)), variables)
    return p


@st.composite
def ratfuncs(draw, variables=VARS):
    return RatFunc(draw(polys(variables)), draw(polys(variables, nonzero=True)))


points = st.tuples(st.fractions(min_value=-7, max_value=7, max_denominator=5),
                   st.fractions(min_value=-7, max_value=7, max_denominator=5))


def at(point) -> dict:
    return dict(zip(VARS, point))


def safe_eval(f: RatFunc, point):
    try:
        return Fraction(f.evaluate(at(point)))
    except ZeroDivisionError:
        return None
