"""tests/calculus_module_tests/test_verification.py
Tests for the Verifier bookkeeping and for the verification suites themselves.
"""
import numpy as np
import pytest
from app.calculus.exceptions import ValidationError
from app.calculus.verification import (EXPECTED_MISMATCH, FAIL, PASS, SKIP, SUITES, Check, Verifier,
                                       prop_matrix)
from app.calculus.weingarten import weingarten_matrix

@pytest.fixture
def verifier(cache):
    return Verifier(cache, k_max=4)

def test_recording(verifier):
    '''Checks are collected in order and summarized by status'''
    assert verifier.record("demo", "one", True)
    verifier.skip("demo", "two", "singular")
    verifier.expect_mismatch("demo", "three", "stated 8/5 vs sum 1/3")
    assert verifier.passed
    assert not verifier.record("demo", "four", False, "off by one")
    assert not verifier.passed
    assert verifier.checks[1] == Check("demo", "two", SKIP, "singular")
    assert verifier.summary() == {PASS: 1, FAIL: 1, SKIP: 1, EXPECTED_MISMATCH: 1}

def test_failed_check_is_logged(verifier, caplog):
    '''A failing check is logged as an error'''
    verifier.record("demo", "broken", False, "detail")
    assert "Check failed: demo/broken detail" in caplog.text

def test_unknown_suite(verifier):
    '''Unknown suite names are rejected'''
    with pytest.raises(ValidationError):
        verifier.run("everything")

def test_weingarten_or_skip(verifier):
    '''Singular Gram matrices become skipped checks'''
    assert verifier._weingarten_or_skip("demo", "singular", 'classical', 4, 1) is None  # pylint: disable=protected-access
    assert verifier.checks[-1].status == SKIP
    assert "rank 1 of 3" in verifier.checks[-1].detail

@pytest.mark.parametrize("N", [2, 5])
def test_prop_matrix(N):
    '''The closed form used by the weingarten suite is the classical k = 4 matrix'''
    assert np.array_equal(prop_matrix(N), weingarten_matrix('classical', 4, N).entries)

@pytest.mark.slow
@pytest.mark.parametrize("suite", SUITES)
def test_suite_passes(verifier, suite):
    '''Each suite runs without failures'''
    checks = verifier.run(suite)
    assert checks
    assert {check.suite for check in checks} == {suite}
    failures = [check for check in checks if check.status == FAIL]
    assert not failures, failures

@pytest.mark.slow
def test_unbalanced_generators_checked_up_to_the_horizon(cache):
    '''The classify suite covers unbalanced generators of every length from 3 to k_max = 6'''
    verifier = Verifier(cache, k_max=6)
    checks = {check.name: check for check in verifier.run("classify")}
    for k in range(3, 7):
        assert checks[f"unbalanced permutations generate everything k={k}"].status == PASS
    assert checks["saturation is idempotent"].status == PASS
    assert checks["saturation is monotone"].status == PASS

def test_default_horizon():
    '''verify reaches k = 6 by default'''
    assert Verifier(None).k_max == 6
