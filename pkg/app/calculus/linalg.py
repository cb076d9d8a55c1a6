"""app/calculus/linalg.py
Exact linear algebra on square matrices of integers or Fractions held in numpy object arrays.

Two inversion strategies are provided. `bareiss` runs fraction-free elimination on the
augmented matrix [A | I] with integer arithmetic, then back-substitutes with Fractions.
`gauss_jordan` works on Fractions throughout and pivots on the entry of largest magnitude.
Both raise SingularMatrixError with the exact rank when no inverse exists.
"""
import math
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from app.calculus.exceptions import SingularMatrixError, ValidationError

BAREISS = "bareiss"
GAUSS_JORDAN = "gauss_jordan"
STRATEGIES = (BAREISS, GAUSS_JORDAN)


def fraction_matrix(rows) -> np.ndarray:
    """A square object array of Fractions from any nested sequence of rationals."""
    array = np.array([[Fraction(value) for value in row] for row in rows], dtype=object)
    if array.size and (array.ndim != 2 or array.shape[0] != array.shape[1]):
        raise ValidationError(f"expected a square matrix, got shape {array.shape}")
    if not array.size:
        return np.empty((0, 0), dtype=object)
    return array


def identity(n: int) -> np.ndarray:
    matrix = np.empty((n, n), dtype=object)
    for r in range(n):
        for c in range(n):
            matrix[r, c] = Fraction(int(r == c))
    return matrix


def exact_rank(matrix: np.ndarray) -> int:
    """Rank over the rationals by Gaussian elimination on Fractions."""
    rows: List[List[Fraction]] = [[Fraction(value) for value in row] for row in matrix.tolist()]
    if not rows:
        return 0
    n_cols = len(rows[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                factor = rows[r][col] / rows[rank][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _integer_rows(matrix: np.ndarray) -> List[Tuple[List[int], int]]:
    """Scale a rational matrix to integers row by row; returns the rows and the scale factors."""
    rows = []
    for row in matrix.tolist():
        fractions = [Fraction(value) for value in row]
        scale = 1
        for value in fractions:
            scale = scale * value.denominator // math.gcd(scale, value.denominator)
        rows.append(([int(value * scale) for value in fractions], scale))
    return rows


def bareiss_inverse(matrix: np.ndarray) -> np.ndarray:
    """
    Inverse by fraction-free elimination on [A | I].

    Every intermediate entry of the forward pass is an integer minor of the augmented matrix,
    so divisions by the previous pivot are exact.
    """
    n = matrix.shape[0]
    scaled = _integer_rows(matrix)
    # the right-hand side carries the row scales, so the solution is A^-1 itself
    augmented = [row + [scale if c == r else 0 for c in range(n)]
                 for r, (row, scale) in enumerate(scaled)]
    previous = 1
    for k in range(n):
        pivot = next((r for r in range(k, n) if augmented[r][k] != 0), None)
        if pivot is None:
            raise SingularMatrixError(n, exact_rank(matrix))
        augmented[k], augmented[pivot] = augmented[pivot], augmented[k]
        for i in range(k + 1, n):
            for j in range(k + 1, 2 * n):
                augmented[i][j] = (augmented[i][j] * augmented[k][k]
                                   - augmented[i][k] * augmented[k][j]) // previous
            augmented[i][k] = 0
        previous = augmented[k][k]

    inverse = np.empty((n, n), dtype=object)
    for col in range(n):
        solution = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            total = Fraction(augmented[i][n + col])
            for j in range(i + 1, n):
                total -= augmented[i][j] * solution[j]
            solution[i] = total / augmented[i][i]
        for i in range(n):
            inverse[i, col] = solution[i]
    return inverse


def gauss_jordan_inverse(matrix: np.ndarray) -> np.ndarray:
    """Inverse by Gauss-Jordan elimination on Fractions with largest-magnitude pivoting."""
    n = matrix.shape[0]
    rows = [[Fraction(value) for value in row] + [Fraction(int(c == r)) for c in range(n)]
            for r, row in enumerate(matrix.tolist())]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(rows[r][col]))
        if rows[pivot][col] == 0:
            raise SingularMatrixError(n, exact_rank(matrix))
        rows[col], rows[pivot] = rows[pivot], rows[col]
        head = rows[col][col]
        rows[col] = [value / head for value in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return np.array([row[n:] for row in rows], dtype=object).reshape(n, n)


def invert(matrix: np.ndarray, strategy: str = BAREISS) -> np.ndarray:
    """Exact inverse of a square rational matrix with the chosen elimination strategy."""
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {matrix.shape}")
    if strategy == BAREISS:
        return bareiss_inverse(matrix)
    if strategy == GAUSS_JORDAN:
        return gauss_jordan_inverse(matrix)
    raise ValidationError(f"unknown inversion strategy '{strategy}' (expected one of {STRATEGIES})")
