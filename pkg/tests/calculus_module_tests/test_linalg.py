"""tests/calculus_module_tests/test_linalg.py
Tests for exact rank and inversion over the rationals.
"""
from fractions import Fraction
import numpy as np
import pytest
from app.calculus import linalg
from app.calculus.exceptions import SingularMatrixError, ValidationError

def hilbert(n):
    return linalg.fraction_matrix([[Fraction(1, r + c + 1) for c in range(n)] for r in range(n)])

def test_fraction_matrix():
    '''Entries become Fractions; non-square input is rejected'''
    matrix = linalg.fraction_matrix([[1, 2], ["1/3", 0.5]])
    assert matrix[1, 0] == Fraction(1, 3)
    assert matrix[1, 1] == Fraction(1, 2)
    assert linalg.fraction_matrix([]).shape == (0, 0)
    with pytest.raises(ValidationError):
        linalg.fraction_matrix([[1, 2]])

@pytest.mark.parametrize("rows, rank", [
    ([[1, 2], [2, 4]], 1),
    ([[0, 0], [0, 0]], 0),
    ([[1, 2, 3], [4, 5, 6], [7, 8, 9]], 2),
    ([[2, 1], [1, 2]], 2),
])
def test_exact_rank(rows, rank):
    '''Rank over the rationals'''
    assert linalg.exact_rank(linalg.fraction_matrix(rows)) == rank

@pytest.mark.parametrize("strategy", linalg.STRATEGIES)
def test_inverse_of_hilbert_matrix(strategy):
    '''Both strategies invert the 5 x 5 Hilbert matrix exactly'''
    matrix = hilbert(5)
    inverse = linalg.invert(matrix, strategy)
    assert np.array_equal(matrix @ inverse, linalg.identity(5))
    assert inverse[0, 0] == 25

def test_strategies_agree():
    '''Pivot choice does not change the exact inverse'''
    matrix = linalg.fraction_matrix([[0, 2, 1], [3, Fraction(1, 2), 4], [1, 1, 7]])
    assert np.array_equal(linalg.invert(matrix, linalg.BAREISS), linalg.invert(matrix, linalg.GAUSS_JORDAN))

@pytest.mark.parametrize("strategy", linalg.STRATEGIES)
def test_singular_matrix(strategy):
    '''Singular input reports its order and exact rank'''
    with pytest.raises(SingularMatrixError) as error:
        linalg.invert(linalg.fraction_matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]]), strategy)
    assert (error.value.order, error.value.rank) == (3, 2)

def test_invert_rejects_bad_input():
    '''Non-square matrices and unknown strategies'''
    with pytest.raises(ValidationError):
        linalg.invert(np.zeros((2, 3), dtype=object))
    with pytest.raises(ValidationError):
        linalg.invert(hilbert(2), "lu")
