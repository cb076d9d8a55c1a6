"""tests/calculus_module_tests/test_linmaps.py
Tests for diagrams realized as integer matrices: the untwisted and twisted maps, their behavior
under the category operations, and fixed vectors.
"""
import itertools
import numpy as np
import pytest
from app.calculus.categories import CategoryTruncation
from app.calculus.exceptions import BoundExceededError, ValidationError
from app.calculus.linmaps import TensorMatrix, gram_of_fixed_vectors, t_bar_map, t_map, xi_vector
from app.calculus.operations import DiagramOperations as DO
from app.calculus.partitions import (Partition, enumerate_pairings, enumerate_two_row_pairings, join,
                                     noncrossing_even_partitions, permutation_diagram)
from app.calculus.weingarten import gram_matrix

CROSSING = permutation_diagram((2, 1))

def small_pairings():
    """Every pairing with at most four legs."""
    return [pi for total in (2, 4) for k in range(total + 1)
            for pi in enumerate_two_row_pairings(k, total - k, 'classical')]

def test_semicircle_and_string():
    '''The semicircle is the flattened identity; a string is the identity matrix'''
    assert np.array_equal(t_map(DO.cap_diagram(), 2).entries, np.array([[1], [0], [0], [1]]))
    assert np.array_equal(t_map(DO.identity(1), 3).entries, np.eye(3, dtype=np.int64))

def test_crossing_is_the_flip():
    '''The crossing swaps tensor factors; its twisted version adds a sign off the diagonal'''
    flip = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    assert np.array_equal(t_map(CROSSING, 2).entries, flip)
    signed = np.array([[1, 0, 0, 0], [0, 0, -1, 0], [0, -1, 0, 0], [0, 0, 0, 1]])
    assert np.array_equal(t_bar_map(CROSSING, 2).entries, signed)

@pytest.mark.parametrize("N", [2, 3, 4])
def test_tensor_and_involution_identities(N):
    '''T of a tensor is the Kronecker product; T of the turned diagram is the transpose'''
    pairings = small_pairings()
    for pi in pairings:
        assert t_map(DO.involution(pi), N) == t_map(pi, N).transpose()
        assert t_bar_map(DO.involution(pi), N) == t_bar_map(pi, N).transpose()
    for pi, sigma in itertools.product(pairings, repeat=2):
        if pi.size + sigma.size <= 6:
            assert t_map(DO.tensor(pi, sigma), N) == t_map(pi, N).tensor(t_map(sigma, N))
            assert t_bar_map(DO.tensor(pi, sigma), N) == t_bar_map(pi, N).tensor(t_bar_map(sigma, N))

@pytest.mark.parametrize("N", [2, 3, 4])
def test_composition_identity(N):
    '''T_pi T_sigma = N^loops T_(pi o sigma), twisted or not, for pairs with at most six points'''
    pairings = small_pairings()
    for pi, sigma in itertools.product(pairings, repeat=2):
        if sigma.lower_count != pi.upper_count or pi.size + sigma.size > 6:
            continue
        composed, loops = DO.composition(pi, sigma)
        assert t_map(pi, N) @ t_map(sigma, N) == t_map(composed, N).scaled(N ** loops)
        assert t_bar_map(pi, N) @ t_bar_map(sigma, N) == t_bar_map(composed, N).scaled(N ** loops)

def test_fixed_vectors():
    '''Coordinates, support and inner products of fixed vectors'''
    xi = xi_vector(DO.cap_diagram(), 3)
    assert xi.coordinate((2, 2)) == 1
    assert xi.coordinate((1, 2)) == 0
    assert xi.support_size == 3
    pairings = enumerate_pairings(4, 'classical')
    for pi, sigma in itertools.product(pairings, repeat=2):
        assert xi_vector(pi, 3).inner(xi_vector(sigma, 3)) == 3 ** join(pi, sigma)[1]
    twisted = xi_vector(pairings[1], 2, twisted=True)
    assert twisted.coordinate((1, 2, 1, 2)) == -1
    assert twisted.coordinate((1, 1, 1, 1)) == 1

@pytest.mark.parametrize("family, k, N", [('classical', 4, 3), ('half', 6, 2), ('free', 4, 1)])
def test_twisted_gram_identity(family, k, N):
    '''Twisted fixed vectors have the same inner products as the untwisted ones'''
    twisted = gram_of_fixed_vectors(family, k, N, twisted=True)
    assert np.array_equal(twisted, gram_of_fixed_vectors(family, k, N))
    assert np.array_equal(twisted, gram_matrix(family, k, N).entries)

def test_errors():
    '''Shape and size checks'''
    with pytest.raises(ValidationError):
        xi_vector(CROSSING, 2)
    with pytest.raises(ValidationError):
        t_bar_map(Partition.one_row([[1, 2, 3]]), 2)
    with pytest.raises(ValidationError):
        t_map(CROSSING, 0)
    with pytest.raises(ValidationError):
        TensorMatrix(np.zeros((2, 2), dtype=np.int64), 2, 1, 2)
    with pytest.raises(ValidationError):
        t_map(DO.cap_diagram(), 2) @ t_map(CROSSING, 2)

def test_entry_bound(monkeypatch):
    '''Dense maps larger than WG_MAX_ENTRIES are refused'''
    monkeypatch.setenv("WG_MAX_ENTRIES", "10")
    with pytest.raises(BoundExceededError):
        t_map(CROSSING, 2)

@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_noncrossing_maps_are_untwisted(N):
    '''T_bar equals T on noncrossing pairings of every shape and on noncrossing even partitions'''
    diagrams = list(CategoryTruncation.from_family('free', 6))
    diagrams += [pi for k in (4, 6) for pi in noncrossing_even_partitions(k)]
    for pi in diagrams:
        assert t_bar_map(pi, N) == t_map(pi, N), pi

def test_crossing_partitions_are_twisted():
    '''A crossing pairing has a signed twisted map'''
    assert t_bar_map(Partition.one_row([[1, 3], [2, 4]]), 2) != t_map(Partition.one_row([[1, 3], [2, 4]]), 2)
