"""Fraction-free (Bareiss) elimination over Q(i).

Matrices are lists of rows of :class:`GaussianRational`. Elimination keeps every
intermediate entry a minor of the input, so rank decisions are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

from .gaussian_rational import ONE, ZERO, GaussianRational, Scalar

Matrix = List[List[GaussianRational]]


def to_matrix(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    return [[GaussianRational.coerce(value) for value in row] for row in rows]


@dataclass
class Echelon:
    """Row echelon form from Bareiss elimination."""

    rows: Matrix
    pivots: List[int]
    sign: int

    @property
    def rank(self) -> int:
        return len(self.pivots)


def bareiss_echelon(matrix: Sequence[Sequence[Scalar]]) -> Echelon:
    """Fraction-free row reduction; the input is not modified.

    Each update is row_i <- (p_k row_i - a_ik row_k) / p_{k-1}, where p_k is the
    current pivot and p_{k-1} the previous one.
    """
    m = to_matrix(matrix)
    if not m:
        return Echelon([], [], 1)
    n_rows, n_cols = len(m), len(m[0])
    pivots: List[int] = []
    sign = 1
    previous = ONE
    row = 0
    for col in range(n_cols):
        if row >= n_rows:
            break
        pivot_row = next((r for r in range(row, n_rows) if m[r][col]), None)
        if pivot_row is None:
            continue
        if pivot_row != row:
            m[row], m[pivot_row] = m[pivot_row], m[row]
            sign = -sign
        pivot = m[row][col]
        for r in range(row + 1, n_rows):
            factor = m[r][col]
            for c in range(col + 1, n_cols):
                m[r][c] = (pivot * m[r][c] - factor * m[row][c]) / previous
            m[r][col] = ZERO
        previous = pivot
        pivots.append(col)
        row += 1
    return Echelon(m, pivots, sign)


def rank(matrix: Sequence[Sequence[Scalar]]) -> int:
    return bareiss_echelon(matrix).rank


def determinant(matrix: Sequence[Sequence[Scalar]]) -> GaussianRational:
    """Determinant of a square matrix: the last Bareiss pivot, with the swap sign."""
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise ValueError("determinant needs a square matrix")
    if size == 0:
        return ONE
    echelon = bareiss_echelon(matrix)
    if echelon.rank < size:
        return ZERO
    return echelon.rows[size - 1][size - 1] * echelon.sign


def nullspace(matrix: Sequence[Sequence[Scalar]], n_cols: int = -1) -> Matrix:
    """Basis of {v : A v = 0}, one vector per free column, in column order.

    Each basis vector has a 1 in its free column and 0 in the other free columns.
    ``n_cols`` gives the width when the matrix has no rows.
    """
    width = len(matrix[0]) if matrix else n_cols
    if width < 0:
        raise ValueError("nullspace of an empty matrix needs n_cols")
    echelon = bareiss_echelon(matrix)
    rows = echelon.rows
    pivots = echelon.pivots
    free = [c for c in range(width) if c not in set(pivots)]

    basis: Matrix = []
    for free_col in free:
        vector = [ZERO] * width
        vector[free_col] = ONE
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            total = ZERO
            for c in range(pc + 1, width):
                if rows[r][c] and vector[c]:
                    total = total + rows[r][c] * vector[c]
            vector[pc] = -total / rows[r][pc]
        basis.append(vector)
    return basis


def mat_vec(
    matrix: Sequence[Sequence[GaussianRational]], vector: Sequence[Scalar]
) -> List[GaussianRational]:
    result = []
    for row in matrix:
        total = ZERO
        for a, b in zip(row, vector):
            if a and b:
                total = total + a * b
        result.append(total)
    return result


__all__ = [
    "Matrix",
    "Echelon",
    "to_matrix",
    "bareiss_echelon",
    "rank",
    "determinant",
    "nullspace",
    "mat_vec",
]
