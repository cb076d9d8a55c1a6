"""tests/calculus_module_tests/test_categories.py
Tests for truncated categories of pairings, their projective versions and the capping descent.
"""
import pytest
from app.calculus.categories import (AFFINE_TO_PROJECTIVE, PROJECTIVE_TO_AFFINE, CategoryTruncation,
                                     capping_descent, category_closure, descend, projective_correspondence,
                                     projective_round_trip, string_stable)
from app.calculus.exceptions import BoundExceededError, ValidationError
from app.calculus.operations import DiagramOperations as DO
from app.calculus.partitions import Partition, permutation_diagram

CROSSING4 = Partition.one_row([[1, 3], [2, 4]])

def test_from_family_counts():
    '''Pairings with at most four legs, by shape'''
    free = CategoryTruncation.from_family('free', 4)
    classical = CategoryTruncation.from_family('classical', 4)
    assert len(free) == 14
    assert len(classical) == 19
    assert classical.count(2, 2) == 3
    assert free.count(2, 2) == 2
    assert free.counts()["0,2"] == 1
    assert free <= classical
    assert not classical <= free
    assert CROSSING4 in classical and CROSSING4 not in free
    assert len(classical.restrict(2)) == 4
    assert classical.at(1, 1) == [DO.identity(1)]

@pytest.mark.parametrize("generators, family", [
    ([], 'free'),
    ([permutation_diagram((2, 1))], 'classical'),
])
def test_closure_at_four_legs(generators, family):
    '''The semicircle alone gives the noncrossing pairings; the crossing gives all pairings'''
    assert category_closure(generators, 4) == CategoryTruncation.from_family(family, 4)

@pytest.mark.slow
def test_closure_of_half_liberated_crossing():
    '''The reversal of three strings generates the balanced pairings'''
    assert category_closure([permutation_diagram((3, 2, 1))], 6) == CategoryTruncation.from_family('half', 6)

def test_closure_checks(monkeypatch):
    '''Generators must be pairings that fit the truncation'''
    with pytest.raises(ValidationError):
        category_closure([Partition.one_row([[1, 2, 3, 4]])], 4)
    with pytest.raises(ValidationError):
        category_closure([permutation_diagram((3, 2, 1))], 4)
    with pytest.raises(ValidationError):
        category_closure([], 1)
    monkeypatch.setenv("WG_MAX_K", "4")
    with pytest.raises(BoundExceededError):
        category_closure([], 6)

def test_projective_correspondence():
    '''Only even rows survive the passage to the projective version'''
    classical = CategoryTruncation.from_family('classical', 4)
    projective = projective_correspondence(AFFINE_TO_PROJECTIVE, classical)
    assert len(projective) == 12
    assert all(diagram.upper_count % 2 == 0 for diagram in projective)
    with pytest.raises(ValidationError):
        projective_correspondence("sideways", classical)

@pytest.mark.parametrize("family", ['classical', 'half', 'free'])
def test_projective_round_trip(family):
    '''D -> E -> D restores D below the truncation'''
    affine = CategoryTruncation.from_family(family, 6)
    assert projective_round_trip(affine, 4)
    recovered = projective_correspondence(PROJECTIVE_TO_AFFINE, projective_correspondence(AFFINE_TO_PROJECTIVE, affine))
    assert recovered.count(1, 1) == 1
    with pytest.raises(ValidationError):
        projective_round_trip(affine, 6)

def test_string_stable():
    '''Padding with strings on both sides stays in the projective category'''
    projective = projective_correspondence(AFFINE_TO_PROJECTIVE, CategoryTruncation.from_family('free', 6))
    assert string_stable(projective)

def test_capping_descent():
    '''Every capping of the crossing of four points is the semicircle'''
    steps = capping_descent(CROSSING4, 'free')
    assert [step.position for step in steps] == [1, 2, 3, 4]
    assert all(step.capped == DO.cap_diagram() and step.in_family for step in steps)
    with pytest.raises(ValidationError):
        capping_descent(Partition.one_row([[1, 2, 3, 4]]), 'free')

def test_descend():
    '''Capping a crossing next to a semicircle leads down to the crossing of four points'''
    pi = Partition.one_row([[1, 3], [2, 4], [5, 6]])
    chain = descend(pi, 'free')
    assert chain == [pi, CROSSING4]
    with pytest.raises(ValidationError):
        descend(CROSSING4, 'classical')

@pytest.mark.parametrize("generators", [[], [permutation_diagram((2, 1))], [CROSSING4]])
def test_closure_is_idempotent(generators):
    '''Closing a closed category changes nothing'''
    closure = category_closure(generators, 4)
    assert category_closure(list(closure), 4) == closure

def test_closure_is_monotone():
    '''More generators give a larger category'''
    free = category_closure([], 4)
    classical = category_closure([permutation_diagram((2, 1))], 4)
    assert free <= classical
    assert category_closure([permutation_diagram((2, 1)), CROSSING4], 4) == classical
