"""Sparse Gaussian elimination over the rationals.

Rows are ``{column: Fraction}`` dicts.  Pivots are taken at the smallest
surviving column, so later columns end up free; the returned particular
solution sets every free column to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


class Inconsistent(Exception):
    def __init__(self, row: int):
        super().__init__(f"equation {row} is inconsistent")
        self.row = row


@dataclass
class SparseSolution:
    values: dict
    rank: int
    ncols: int
    pivots: list = field(default_factory=list)

    @property
    def kernel_dim(self) -> int:
        return self.ncols - self.rank


def _axpy(row: dict, piv_row: dict, factor: Fraction) -> None:
    for c, v in piv_row.items():
        nv = row.get(c, 0) - factor * v
        if nv:
            row[c] = nv
        else:
            row.pop(c, None)


def solve_sparse(rows, rhs, ncols: int) -> SparseSolution:
    """Solve ``rows @ x == rhs`` exactly; raise ``Inconsistent`` if impossible."""
    pivots: dict = {}  # col -> (row dict with pivot 1, rhs)
    for ri, (row, b) in enumerate(zip(rows, rhs)):
        row = {c: Fraction(v) for c, v in row.items() if v}
        b = Fraction(b)
        while True:
            hit = [c for c in row if c in pivots]
            if not hit:
                break
            c = min(hit)
            prow, pb = pivots[c]
            f = row[c]
            _axpy(row, prow, f)
            b -= f * pb
        if not row:
            if b:
                raise Inconsistent(ri)
            continue
        p = min(row)
        inv = 1 / row[p]
        pivots[p] = ({c: v * inv for c, v in row.items()}, b * inv)
    values: dict = {}
    for p in sorted(pivots, reverse=True):
        prow, pb = pivots[p]
        s = pb
        for c, v in prow.items():
            if c != p:
                s -= v * values.get(c, 0)
        if s:
            values[p] = s
    return SparseSolution(values, len(pivots), ncols, sorted(pivots))


def rank(matrix) -> int:
    """Exact rank of a dense matrix (list of rows)."""
    rows = [{j: Fraction(v) for j, v in enumerate(r) if v} for r in matrix]
    if not rows:
        return 0
    ncols = max((len(r) for r in matrix), default=0)
    return solve_sparse(rows, [0] * len(rows), ncols).rank


def inverse(matrix):
    """Exact inverse of a square dense matrix."""
    n = len(matrix)
    cols = []
    for k in range(n):
        rows = [{j: Fraction(v) for j, v in enumerate(r) if v} for r in matrix]
        rhs = [1 if i == k else 0 for i in range(n)]
        sol = solve_sparse(rows, rhs, n)
        if sol.rank != n:
            raise ValueError("matrix is singular")
        cols.append([sol.values.get(j, Fraction(0)) for j in range(n)])
    return [[cols[k][i] for k in range(n)] for i in range(n)]
