"""tests/calculus_module_tests/test_weingarten.py
Tests for the exact Gram and Weingarten matrices of the three pairing families.
"""
from fractions import Fraction
import numpy as np
import pytest
from app.calculus import linalg
from app.calculus.exceptions import BoundExceededError, GramSingular, ValidationError
from app.calculus.weingarten import RationalMatrix, gram_matrix, weingarten_matrix

def test_gram_classical_k4():
    '''N^2 on the diagonal and N off it'''
    gram = gram_matrix('classical', 4, 5)
    assert gram.order == 3
    assert gram.entries.tolist() == [[25, 5, 5], [5, 25, 5], [5, 5, 25]]
    assert gram.is_symmetric()

@pytest.mark.parametrize("N", range(2, 9))
def test_classical_k4_closed_form(N):
    '''W = (N(N-1)(N+2))^-1 [[N+1, -1, -1], [-1, N+1, -1], [-1, -1, N+1]]'''
    matrix = weingarten_matrix('classical', 4, N)
    scale = Fraction(1, N * (N - 1) * (N + 2))
    expected = [[scale * (N + 1 if r == c else -1) for c in range(3)] for r in range(3)]
    assert matrix.entries.tolist() == expected

@pytest.mark.parametrize("N", [2, 3, 7])
def test_free_k4_closed_form(N):
    '''W = (N(N^2-1))^-1 [[N, -1], [-1, N]]'''
    matrix = weingarten_matrix('free', 4, N)
    scale = Fraction(1, N * (N * N - 1))
    assert matrix.entries.tolist() == [[scale * N, -scale], [-scale, scale * N]]

def test_k2_and_k0():
    '''The smallest cases: W = 1/N at k = 2 and 1 at k = 0'''
    assert weingarten_matrix('half', 2, 6).entries.tolist() == [[Fraction(1, 6)]]
    assert weingarten_matrix('free', 0, 3).entries.tolist() == [[1]]

@pytest.mark.parametrize("family, k, N", [
    ('classical', 6, 3), ('half', 6, 3), ('free', 6, 2), ('classical', 4, 2), ('free', 8, 2),
])
def test_inverse_and_symmetry(family, k, N):
    '''G W = I, W is symmetric and both strategies agree'''
    gram = gram_matrix(family, k, N)
    matrix = weingarten_matrix(family, k, N)
    assert np.array_equal(gram @ matrix, linalg.identity(gram.order))
    assert matrix.is_symmetric()
    assert weingarten_matrix(family, k, N, strategy=linalg.GAUSS_JORDAN) == matrix

@pytest.mark.parametrize("N", [3, 4, 5])
def test_half_k6_rows_are_stochastic(N):
    '''Gram and Weingarten rows of the balanced pairings of six points have constant sums'''
    total = N ** 3 + 3 * N ** 2 + 2 * N
    assert set(gram_matrix('half', 6, N).row_sums()) == {total}
    assert set(weingarten_matrix('half', 6, N).row_sums()) == {Fraction(1, total)}

@pytest.mark.parametrize("family, k, N, rank", [
    ('classical', 4, 1, 1),
    ('free', 4, 1, 1),
    ('half', 4, 1, 1),
    ('classical', 6, 2, 10),
])
def test_singular_gram(family, k, N, rank):
    '''Singular Gram matrices raise GramSingular with the exact rank'''
    with pytest.raises(GramSingular) as error:
        weingarten_matrix(family, k, N)
    assert error.value.rank == rank
    assert error.value.N == N

def test_half_k6_needs_three_dimensions():
    '''The balanced Gram matrix at six points is singular at N = 2'''
    with pytest.raises(GramSingular):
        weingarten_matrix('half', 6, 2)

@pytest.mark.parametrize("k, N", [(3, 2), (-2, 2), (4, 0)])
def test_invalid_requests(k, N):
    '''k must be even and nonnegative, N positive'''
    with pytest.raises(ValidationError):
        gram_matrix('classical', k, N)

def test_k_bound(monkeypatch):
    '''Requests above the bound are refused; an explicit bound wins over WG_MAX_K'''
    with pytest.raises(BoundExceededError):
        gram_matrix('free', 6, 3, k_bound=4)
    monkeypatch.setenv("WG_MAX_K", "2")
    with pytest.raises(BoundExceededError):
        gram_matrix('free', 4, 3)
    assert gram_matrix('free', 4, 3, k_bound=4).order == 2

def test_rational_matrix_helpers():
    '''Row and column sums, payloads and shape checks'''
    matrix = weingarten_matrix('classical', 4, 3)
    assert matrix.column_sums() == [Fraction(1, 15)] * 3
    assert matrix.row_sums() == matrix.column_sums()
    assert matrix.total() == Fraction(1, 5)
    assert RationalMatrix.from_payload(matrix.to_payload()) == matrix
    assert matrix.to_payload()["entries"][0][1] == {"num": "-1", "den": "30"}
    with pytest.raises(ValidationError):
        RationalMatrix(matrix.entries, matrix.basis[:2])
    payload = matrix.to_payload()
    payload["entries"] = payload["entries"][:2]
    with pytest.raises(ValidationError):
        RationalMatrix.from_payload(payload)
