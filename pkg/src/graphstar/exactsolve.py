"""Exact rational linear systems via fraction-free Gaussian elimination."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass
class LinearSolution:
    """Outcome of an exact solve of A x = b.

    status is one of 'unique', 'affine', 'infeasible'.  For feasible systems
    `particular` holds a solution (free variables set to zero) and
    `free_columns` lists the indices of the free variables."""

    status: str
    particular: list[Fraction] = field(default_factory=list)
    free_columns: list[int] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.free_columns)


def solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> LinearSolution:
    """Solve the rational system given by coefficient rows and right-hand
    side.  Bareiss-style elimination keeps every intermediate value exact."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivot_cols: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pv = a[r][c]
        for i in range(n_rows):
            if i == r or not a[i][c]:
                continue
            factor = a[i][c] / pv
            for j in range(c, n_cols + 1):
                a[i][j] -= factor * a[r][j]
        pivot_cols.append(c)
        r += 1
        if r == n_rows:
            break
    for i in range(r, n_rows):
        if a[i][n_cols]:
            return LinearSolution(status="infeasible")
    solution = [Fraction(0)] * n_cols
    for i, c in enumerate(pivot_cols):
        solution[c] = a[i][n_cols] / a[i][c]
    free = [c for c in range(n_cols) if c not in pivot_cols]
    status = "unique" if not free else "affine"
    return LinearSolution(status=status, particular=solution, free_columns=free)
