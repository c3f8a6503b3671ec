"""Dense exact linear algebra over the rationals.

Elimination is fraction-free (Bareiss): every row is first scaled to integers,
then eliminated with exact integer division by the previous pivot, so
intermediate entries stay minors of the scaled matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

__all__ = ["RationalMatrix", "SingularMatrixError", "solve_exact", "determinant"]


class SingularMatrixError(ArithmeticError):
    def __init__(self, rank: int, size: int):
        super().__init__(f"matrix is singular: rank {rank} < {size}")
        self.rank = rank
        self.size = size


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        entries = tuple(tuple(Fraction(v) for v in row) for row in rows)
        if not entries or not entries[0]:
            raise ValueError("empty matrix")
        width = len(entries[0])
        if any(len(row) != width for row in entries):
            raise ValueError("ragged matrix")
        return cls(len(entries), width, entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def matvec(self, x: Sequence) -> list[Fraction]:
        if len(x) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((a * v for a, v in zip(row, x)), Fraction(0)) for row in self.entries]

    def determinant(self) -> Fraction:
        return determinant(self)


def _as_matrix(M) -> RationalMatrix:
    return M if isinstance(M, RationalMatrix) else RationalMatrix.from_rows(M)


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], list[int]]:
    scaled, scales = [], []
    for row in rows:
        L = lcm(*(Fraction(v).denominator for v in row))
        scaled.append([int(Fraction(v) * L) for v in row])
        scales.append(L)
    return scaled, scales


def _bareiss_echelon(a: list[list[int]], ncols: int) -> tuple[list[int], int]:
    """In-place fraction-free row echelon form on the first ``ncols`` columns.

    Returns (pivot columns, number of row swaps).
    """
    nrows = len(a)
    width = len(a[0])
    pivots: list[int] = []
    swaps = 0
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            swaps += 1
        piv = a[r][c]
        row_r = a[r]
        for i in range(r + 1, nrows):
            row_i = a[i]
            f = row_i[c]
            for j in range(c + 1, width):
                row_i[j] = (row_i[j] * piv - f * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return pivots, swaps


def determinant(M) -> Fraction:
    """Exact determinant of a square rational matrix."""
    M = _as_matrix(M)
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    a, scales = _integer_rows(M.entries)
    n = M.rows
    pivots, swaps = _bareiss_echelon(a, n)
    if len(pivots) < n:
        return Fraction(0)
    det = a[n - 1][n - 1] * (-1 if swaps % 2 else 1)
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(det, denom)


def solve_exact(M, b: Sequence) -> list[Fraction]:
    """Unique solution of M x = b; raises :class:`SingularMatrixError`."""
    M = _as_matrix(M)
    n = M.rows
    if M.cols != n:
        raise ValueError(f"solve_exact needs a square matrix, got {M.rows}x{M.cols}")
    if len(b) != n:
        raise ValueError("right-hand side has the wrong length")
    aug = [list(row) + [Fraction(v)] for row, v in zip(M.entries, b)]
    a, _ = _integer_rows(aug)
    pivots, _ = _bareiss_echelon(a, n)
    if len(pivots) < n:
        raise SingularMatrixError(len(pivots), n)
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        row = a[i]
        s = Fraction(row[n]) - sum((row[j] * x[j] for j in range(i + 1, n)), Fraction(0))
        x[i] = s / row[i]
    return x
