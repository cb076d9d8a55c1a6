"""conftest.py: Automatic generation of test data for sphere integrals."""

import pytest
from faker import Faker
from app.calculus.cache import WeingartenCache

fake = Faker()

FAMILIES = ['classical', 'half', 'free']
MIN_N = 3  # smallest N with an invertible Gram matrix for every family up to k = 6
MAX_N = 4
DEFAULT_RECORDS = 5

def generate_test_data(num_records):
    """
    Generates random monomials x_{i1}...x_{ik} for the sphere integral tests.

    Parameters:
    - num_records (int): Number of records to generate.

    Yields:
    - tuple: (family name, dimension N, index tuple of even length at most 6).
    """
    for _ in range(num_records):
        family = fake.random_element(elements=FAMILIES)
        N = fake.random_int(min=MIN_N, max=MAX_N)
        k = fake.random_element(elements=(2, 4, 6))
        indices = tuple(fake.random_int(min=1, max=N) for _ in range(k))
        yield family, N, indices

def pytest_generate_tests(metafunc):
    """
    Parametrizes tests asking for a random monomial.

    Parameters:
    - metafunc: The Metafunc object for the test function.
    """
    if {"family", "N", "indices"}.issubset(set(metafunc.fixturenames)):
        num_records = metafunc.config.getoption("num_records", DEFAULT_RECORDS)
        metafunc.parametrize("family,N,indices", list(generate_test_data(num_records)))

@pytest.fixture
def cache(tmp_path):
    """A Weingarten cache in a private temporary directory."""
    return WeingartenCache(str(tmp_path))
