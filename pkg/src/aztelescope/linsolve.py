"""Exact linear solving over the field of rational functions Q(vars).

Rows are first cleared of denominators, then reduced with fraction-free
(Bareiss) elimination over the polynomial ring, so no gcd is taken during
elimination.  Pivots are chosen deterministically: columns left to right,
first row (top to bottom) with a nonzero entry.  Back-substitution happens in
``RatFunc``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import InconsistentSystemError
from .polys import MultiPoly, gcd_list, lcm, merge_variables
from .ratfunc import RatFunc, as_ratfunc


@dataclass(frozen=True)
class LinearSolution:
    """Solution set ``particular + span(nullspace)``."""

    particular: tuple[RatFunc, ...]
    nullspace: tuple[tuple[RatFunc, ...], ...]
    rank: int
    pivots: tuple[int, ...] = field(default=())

    def general(self, coefficients: Sequence) -> tuple[RatFunc, ...]:
        out = list(self.particular)
        for c, v in zip(coefficients, self.nullspace):
            out = [a + as_ratfunc(c, a.variables) * b for a, b in zip(out, v)]
        return tuple(out)


def bareiss(rows: list[list[MultiPoly]], ncols: int) -> tuple[list[list[MultiPoly]], list[int]]:
    """Fraction-free forward elimination over the first ``ncols`` columns.

    ``rows`` may carry extra (augmented) columns; they are transformed too.
    Returns the echelon rows and the pivot columns.  Input is not modified.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    width = len(m[0]) if m else 0
    one = m[0][0].one(m[0][0].variables) if m else None
    prev = one
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        pr = m[r]
        for i in range(r + 1, nrows):
            row = m[i]
            a = row[c]
            if a.is_zero():
                # still needs the scaling by p/prev to keep later divisions exact
                for j in range(c + 1, width):
                    if not row[j].is_zero():
                        row[j] = (p * row[j]).exact_div(prev)
                continue
            for j in range(c + 1, width):
                t = p * row[j] - a * pr[j]
                row[j] = t.exact_div(prev) if not t.is_zero() else t
            row[c] = a.zero(a.variables)
        prev = p
        pivots.append(c)
        r += 1
    return m, pivots


def _clear_row(row: Sequence[RatFunc]) -> list[MultiPoly]:
    dens = [f.den for f in row if not f.is_zero() and not f.den.is_constant()]
    if not dens:
        return [f.num for f in row]
    d = dens[0]
    for x in dens[1:]:
        d = lcm(d, x)
    return [(f.num * d).exact_div(f.den) for f in row]


def _common_variables(matrix, rhs) -> tuple[str, ...]:
    vs: tuple[str, ...] = ()
    for row in matrix:
        for f in row:
            vs = merge_variables(vs, f.variables)
    for f in rhs or ():
        vs = merge_variables(vs, f.variables)
    return vs


def solve_linear(matrix: Sequence[Sequence], rhs: Sequence | None = None) -> LinearSolution:
    """Solve ``matrix @ y = rhs`` exactly over the rational-function field.

    Entries may be RatFunc, MultiPoly, int, Fraction or text.  ``rhs=None``
    means the homogeneous system.  Raises InconsistentSystemError when no
    solution exists.
    """
    if not matrix:
        raise ValueError("empty matrix")
    ncols = len(matrix[0])
    if any(len(r) != ncols for r in matrix):
        raise ValueError("matrix is not rectangular")
    if rhs is not None and len(rhs) != len(matrix):
        raise ValueError("right-hand side length does not match the number of rows")
    mat = [[as_ratfunc(v) for v in row] for row in matrix]
    b = [as_ratfunc(v) for v in rhs] if rhs is not None else None
    vs = _common_variables(mat, b)
    mat = [[f.with_variables(vs) for f in row] for row in mat]
    if b is None:
        b = [RatFunc.constant(0, vs)] * len(mat)
    else:
        b = [f.with_variables(vs) for f in b]

    rows = [_clear_row(list(row) + [bi]) for row, bi in zip(mat, b)]
    echelon, pivots = bareiss(rows, ncols)
    rank = len(pivots)
    for i in range(rank, len(echelon)):
        if not echelon[i][ncols].is_zero():
            raise InconsistentSystemError(
                f"inconsistent system: row {i} reduces to 0 = {echelon[i][ncols]}", row=i)

    free = [c for c in range(ncols) if c not in pivots]
    zero = RatFunc.constant(0, vs)

    def back_substitute(values: dict[int, RatFunc], use_rhs: bool) -> tuple[RatFunc, ...]:
        y = [zero] * ncols
        for c, v in values.items():
            y[c] = v
        for i in range(rank - 1, -1, -1):
            c = pivots[i]
            row = echelon[i]
            acc = as_ratfunc(row[ncols]) if use_rhs else zero
            for j in range(c + 1, ncols):
                if not row[j].is_zero() and not y[j].is_zero():
                    acc = acc - y[j] * row[j]
            y[c] = acc / as_ratfunc(row[c]) if not acc.is_zero() else zero
        return tuple(y)

    particular = back_substitute({}, True)
    one = RatFunc.constant(1, vs)
    basis = tuple(back_substitute({f: one}, False) for f in free)
    return LinearSolution(particular, basis, rank, tuple(pivots))


def polynomial_nullspace(rows: list[list[MultiPoly]], ncols: int,
                         with_pivots: bool = False):
    """Null-space basis of a polynomial matrix, each vector cleared to primitive polynomials.

    Vector ``k`` corresponds to the ``k``-th free column (left to right) set to a
    nonzero value and the other free columns to zero.  With ``with_pivots`` the
    pivot entries of the echelon form are returned as well.
    """
    echelon, pivots = bareiss(rows, ncols)
    rank = len(pivots)
    free = [c for c in range(ncols) if c not in pivots]
    vs = rows[0][0].variables
    out = []
    for f in free:
        y: list[RatFunc] = [RatFunc.constant(0, vs)] * ncols
        y[f] = RatFunc.constant(1, vs)
        for i in range(rank - 1, -1, -1):
            c = pivots[i]
            row = echelon[i]
            accr = None
            for j in range(c + 1, ncols):
                if not row[j].is_zero() and not y[j].is_zero():
                    term = y[j] * RatFunc(row[j], MultiPoly.one(vs), _reduced=True)
                    accr = term if accr is None else accr + term
            if accr is not None and not accr.is_zero():
                y[c] = -accr / RatFunc(row[c], MultiPoly.one(vs), _reduced=True)
        dens = [v.den for v in y if not v.is_zero()]
        d = dens[0]
        for x in dens[1:]:
            if not x.is_constant():
                d = lcm(d, x)
        vec = [(v.num * d).exact_div(v.den) for v in y]
        g = gcd_list(vec)
        vec = [p.exact_div(g) for p in vec]
        out.append(vec)
    if with_pivots:
        return out, [echelon[i][c] for i, c in enumerate(pivots)]
    return out



MODULUS = (1 << 61) - 1


def nullspace_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int = MODULUS) -> list[list[int]]:
    """Null-space basis over GF(p) by reduced row echelon form (entries already reduced mod p)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    out = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = -m[i][f] % p
        out.append(v)
    return out
