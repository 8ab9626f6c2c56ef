from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from aztelescope.errors import InconsistentSystemError
from aztelescope.linsolve import solve_linear
from aztelescope.ratfunc import RatFunc


def rf(t):
    return RatFunc.parse(t, ("n",))


def test_square_system():
    sol = solve_linear([[1, 1], [1, -1]], [rf("2*n"), 2])
    assert sol.particular == (rf("n+1"), rf("n-1"))
    assert sol.nullspace == () and sol.rank == 2


def test_homogeneous_null_space():
    sol = solve_linear([[1, 1]], [0])
    assert all(v.is_zero() for v in sol.particular)
    (v,) = sol.nullspace
    # proportional to (1, -1)
    assert v[0] == -v[1] and not v[0].is_zero()


def test_inconsistent():
    with pytest.raises(InconsistentSystemError):
        solve_linear([[rf("n"), 0], [0, 0]], [rf("n^2"), 1])


def test_general_solution():
    sol = solve_linear([[1, 1, 0]], [rf("n")])
    y = sol.general([rf("n^2"), 3])
    assert y[0] + y[1] == rf("n")


def _random_system(rng, rows, cols, rank):
    def entry():
        return RatFunc.parse(f"{rng.randint(-3, 3)}*n + {rng.randint(-3, 3)}", ("n",))
    basis = [[entry() for _ in range(cols)] for _ in range(rank)]
    mat = []
    for _ in range(rows):
        cs = [rng.randint(-2, 2) for _ in range(rank)]
        mat.append([sum((c * b[j] for c, b in zip(cs, basis)), RatFunc.constant(0, ("n",))) for j in range(cols)])
    return mat


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_solutions_substitute_back(seed):
    rng = random.Random(seed)
    mat = _random_system(rng, rng.randint(1, 4), rng.randint(2, 4), rng.randint(1, 2))
    x = [RatFunc.parse(f"{rng.randint(-3, 3)}*n + 1", ("n",)) for _ in mat[0]]
    rhs = [sum((a * b for a, b in zip(row, x)), RatFunc.constant(0, ("n",))) for row in mat]
    sol = solve_linear(mat, rhs)
    for row, b in zip(mat, rhs):
        assert sum((a * y for a, y in zip(row, sol.particular)), RatFunc.constant(0, ("n",))) == b
        for v in sol.nullspace:
            assert sum((a * y for a, y in zip(row, v)), RatFunc.constant(0, ("n",))).is_zero()
    assert sol.rank + len(sol.nullspace) == len(mat[0])
