"""app/calculus/__init__.py
This module defines the WeingartenCalculus class, the single entry point the command plugins use.
It owns a WeingartenCache and delegates to the package modules: enumeration of pairings, Gram and
Weingarten matrices, Haar and sphere moments, the moment sequences of a coordinate, the oracles,
the classification of monomial spheres and the verification suites.
"""
import logging
from fractions import Fraction
from typing import List, Optional, Sequence

from app.calculus import monomial, oracles
from app.calculus.cache import WeingartenCache
from app.calculus.moments import MomentQuery, law_moments
from app.calculus.partitions import Partition, PairingFamily, enumerate_pairings
from app.calculus.verification import Verifier
from app.calculus.weingarten import RationalMatrix, gram_matrix


class WeingartenCalculus:
    """
    Serves as the core component of the weingarten-calculus application. Every computation that
    needs a Weingarten matrix goes through the shared cache, whose hit and miss counts end up in
    the command reports.
    """

    def __init__(self, cache_dir: Optional[str] = None, k_bound: Optional[int] = None):
        self.cache = WeingartenCache(cache_dir, k_bound)
        self.k_bound = k_bound

    def pairings(self, family, k: int) -> List[Partition]:
        return enumerate_pairings(k, family)

    def gram(self, family, k: int, N: int) -> RationalMatrix:
        return gram_matrix(family, k, N, self.k_bound)

    def weingarten(self, family, k: int, N: int) -> RationalMatrix:
        return self.cache.get(family, k, N)

    def moment(self, family, twisted: bool, N: int, i_tuple: Sequence[int],
               j_tuple: Optional[Sequence[int]] = None) -> Fraction:
        """Haar integral when j_tuple is given, sphere integral of x_i otherwise."""
        query = MomentQuery.create_query(family, twisted, N, i_tuple, j_tuple)
        value = query.compute(self.cache)
        logging.info(f"{query} evaluated to {value}")
        return value

    def law(self, family, twisted: bool, N: int, l_max: int) -> List[Fraction]:
        return law_moments(family, twisted, N, l_max, self.cache)

    def classical_oracle(self, profile: Sequence[int], N: int) -> Fraction:
        return oracles.classical_sphere_integral(profile, N)

    def half_liberated_oracle(self, profile: Sequence[int], N: int) -> Fraction:
        return oracles.half_liberated_integral_sum(profile, N)

    def free_oracle(self, l: int, N: int, digits: Optional[int] = None):
        return oracles.free_moment(l, N, digits)

    def classify(self, generators: Sequence[monomial.Permutation], k_max: int, twisted: bool = False):
        return monomial.classify_generators(generators, k_max, twisted)

    def verify(self, suite: str = "all", k_max: int = 6) -> Verifier:
        verifier = Verifier(self.cache, k_max=k_max)
        verifier.run(suite)
        return verifier


__all__ = ["WeingartenCalculus", "PairingFamily"]
