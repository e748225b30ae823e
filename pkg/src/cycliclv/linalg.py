"""Exact Gaussian elimination over Fraction: RREF, rank, nullspace.

Entries are arbitrary-precision rationals, so no pivoting heuristics are
needed; the first nonzero candidate in each column is taken as pivot,
which keeps the elimination fully deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Row = list[Fraction]

__all__ = ["rref", "rank", "nullspace_basis"]


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form. Returns (matrix, pivot column indices)."""
    m = [[Fraction(v) for v in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def nullspace_basis(rows: Sequence[Sequence[Fraction]]) -> list[Row]:
    """Basis of {v : M v = 0}, one vector per free column of the RREF.

    The vector for free column f has a 1 there, zeros at the other free
    columns, and the negated RREF entries at the pivot columns.
    """
    if not rows:
        return []
    m, pivots = rref(rows)
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis: list[Row] = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r_i, c in enumerate(pivots):
            v[c] = -m[r_i][f]
        basis.append(v)
    return basis
