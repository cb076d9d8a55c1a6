"""tests/calculus_module_tests/test_moments.py
Tests for Haar integrals, sphere moments and the moment sequences of a single coordinate.
The family, N and indices arguments are generated by conftest.py.
"""
from fractions import Fraction
import pytest
from app.calculus import oracles
from app.calculus.exceptions import ValidationError
from app.calculus.moments import (MomentQuery, convergence_gaps, haar_integral, has_odd_occurrence,
                                  law_moments, scalar_product_formula, scalar_product_matrix,
                                  half_twisted_scalar_matrix, independence_rank, sphere_moment)

@pytest.mark.parametrize("family, twisted, indices, expected", [
    ('classical', False, (1, 1, 1, 1), Fraction(1, 5)),
    ('classical', False, (1, 1, 2, 2), Fraction(1, 15)),
    ('classical', False, (1, 2, 1, 2), Fraction(1, 15)),
    ('classical', True, (1, 2, 1, 2), Fraction(-1, 15)),
    ('classical', True, (1, 2, 2, 1), Fraction(1, 15)),
    ('half', False, (1, 2, 1, 2), Fraction(0)),
    ('free', False, (1, 1, 1, 1), Fraction(1, 6)),
    ('free', False, (1, 2, 1, 2), Fraction(0)),
    ('half', False, (1, 2, 3), Fraction(0)),
])
def test_sphere_moments_at_n3(cache, family, twisted, indices, expected):
    '''Degree-four monomials on the spheres of dimension 3'''
    assert sphere_moment(family, twisted, indices, 3, cache) == expected

@pytest.mark.parametrize("i, j, expected", [
    ((1, 1), (2, 2), Fraction(1, 4)),
    ((2, 2), (3, 3), Fraction(1, 4)),
    ((1, 2), (2, 1), Fraction(0)),
    ((3,), (3,), Fraction(0)),
])
def test_haar_integrals_of_degree_two(cache, i, j, expected):
    '''u_{i1 j1} u_{i2 j2} integrates to delta(i1, i2) delta(j1, j2) / N'''
    query = MomentQuery.create_query('classical', False, 4, i, j)
    assert haar_integral(query, cache) == expected

def test_moment_query_validation():
    '''Indices range over 1..N and the tuples have equal length'''
    with pytest.raises(ValidationError):
        MomentQuery('free', False, 2, (1, 3))
    with pytest.raises(ValidationError):
        MomentQuery('free', False, 2, (1, 2), (1,))
    with pytest.raises(ValidationError):
        MomentQuery('free', False, 0, ())
    with pytest.raises(ValidationError):
        MomentQuery('quantum', False, 2, (1, 1))

def test_moment_query_describe(cache):
    '''Sphere queries carry no j tuple'''
    sphere = MomentQuery.create_query('Half', True, 3, (1, 1))
    assert sphere.is_sphere
    assert sphere.describe() == {"family": "half", "twisted": True, "N": 3, "i": [1, 1]}
    assert sphere.compute(cache) == Fraction(1, 3)
    haar = MomentQuery.create_query('half', False, 3, (1, 1), (2, 2))
    assert haar.describe()["j"] == [2, 2]
    assert "j=(2, 2)" in repr(haar)
    with pytest.raises(ValidationError):
        haar_integral(sphere, cache)

def test_sphere_is_first_row_of_haar(cache, family, N, indices):
    '''x_i is u_{1i}: the sphere moment is the Haar integral with i = (1, ..., 1)'''
    haar = MomentQuery.create_query(family, False, N, (1,) * len(indices), indices)
    assert sphere_moment(family, False, indices, N, cache) == haar_integral(haar, cache)

def test_sphere_moments_match_oracles(cache, family, N, indices):
    '''Weingarten values agree with the closed forms of the classical and half-liberated spheres'''
    value = sphere_moment(family, False, indices, N, cache)
    if family == 'classical':
        assert value == oracles.classical_sphere_integral(oracles.exponent_profile(indices), N)
    elif family == 'half':
        profile = oracles.half_liberated_profile(indices)
        expected = Fraction(0) if profile is None else oracles.half_liberated_integral_sum(profile, N)
        assert value == expected
    if has_odd_occurrence(indices):
        assert value == 0

def test_law_moments(cache):
    '''N^l m_2l of a classical coordinate at N = 4'''
    assert law_moments('classical', False, 4, 3, cache) == [1, 2, Fraction(15 * 64, 4 * 6 * 8)]
    with pytest.raises(ValidationError):
        law_moments('free', False, 4, 0, cache)

def test_convergence_gaps(cache):
    '''The second moment is exactly 1 in every dimension; higher gaps shrink with N'''
    assert convergence_gaps('free', False, 1, [3, 5, 8], cache) == [(3, 0), (5, 0), (8, 0)]
    gaps = [gap for _, gap in convergence_gaps('half', False, 2, [4, 8, 16], cache)]
    assert gaps[0] > gaps[1] > gaps[2] > 0

def test_scalar_product_matrix(cache):
    '''Twisted classical scalar products of degree two match their formula and are independent'''
    labels, matrix = scalar_product_matrix(3, cache)
    assert len(labels) == 6
    assert all(matrix[r, c] == scalar_product_formula(a, b, i, j, 3)
               for r, (a, b) in enumerate(labels) for c, (i, j) in enumerate(labels))
    assert independence_rank(matrix) == (6, 6)

@pytest.mark.slow
def test_half_twisted_scalar_matrix(cache):
    '''Degree-three monomials of the twisted half-liberated sphere at N = 3 are independent'''
    labels, matrix = half_twisted_scalar_matrix(3, cache)
    rank, order = independence_rank(matrix)
    assert order == len(labels) == 18
    assert rank == order
