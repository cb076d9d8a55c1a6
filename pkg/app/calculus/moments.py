"""app/calculus/moments.py
Defines the MomentQuery class and the exact Haar and sphere moment functions.

Quantum group integrals follow the Weingarten formula

    integral of u_{i1 j1}...u_{ik jk} = sum over pi, sigma of delta_pi(i) delta_sigma(j) W(pi, sigma)

over the family's pairings of k points, with the signed symbols delta_bar in the twisted case.
Sphere coordinates are realized as x_i = u_{1i}, which turns the left symbol into 1 (or +1) for
every pairing and leaves column sums of W.
"""
import itertools
import logging
from collections import Counter
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.calculus import linalg
from app.calculus.cache import WeingartenCache
from app.calculus.exceptions import ValidationError
from app.calculus.oracles import reference_counts
from app.calculus.partitions import PairingFamily, delta, delta_bar, enumerate_pairings


class MomentQuery:
    """
    One Haar or sphere integral: a pairing family, the twisted flag, the dimension N and the
    index tuples. Sphere queries carry no j tuple and mean x_i = u_{1i}.
    """

    def __init__(self, family, twisted: bool, N: int, i_tuple: Sequence[int],
                 j_tuple: Optional[Sequence[int]] = None):
        self.family = PairingFamily.parse(family)
        self.twisted = bool(twisted)
        self.N = int(N)
        self.i_tuple = tuple(int(value) for value in i_tuple)
        self.j_tuple = None if j_tuple is None else tuple(int(value) for value in j_tuple)
        self._validate()

    @classmethod
    def create_query(cls, family, twisted: bool, N: int, i_tuple: Sequence[int],
                     j_tuple: Optional[Sequence[int]] = None) -> "MomentQuery":
        """Factory method returning a validated MomentQuery."""
        return cls(family, twisted, N, i_tuple, j_tuple)

    def _validate(self) -> None:
        if self.N < 1:
            raise ValidationError(f"N must be a positive integer, got {self.N}")
        tuples = [self.i_tuple] if self.j_tuple is None else [self.i_tuple, self.j_tuple]
        for values in tuples:
            if any(not 1 <= value <= self.N for value in values):
                raise ValidationError(f"indices {values} must lie in 1..{self.N}")
        if self.j_tuple is not None and len(self.j_tuple) != len(self.i_tuple):
            raise ValidationError(
                f"i and j tuples differ in length: {len(self.i_tuple)} vs {len(self.j_tuple)}")

    @property
    def is_sphere(self) -> bool:
        return self.j_tuple is None

    @property
    def k(self) -> int:
        return len(self.i_tuple)

    def compute(self, cache: WeingartenCache) -> Fraction:
        """Evaluate the query against the Weingarten data held by cache."""
        if self.is_sphere:
            return sphere_moment(self.family, self.twisted, self.i_tuple, self.N, cache)
        return haar_integral(self, cache)

    def describe(self) -> Dict:
        description = {
            "family": self.family.value,
            "twisted": self.twisted,
            "N": self.N,
            "i": list(self.i_tuple),
        }
        if self.j_tuple is not None:
            description["j"] = list(self.j_tuple)
        return description

    def __repr__(self) -> str:
        j_part = "" if self.j_tuple is None else f", j={self.j_tuple}"
        return (f"MomentQuery({self.family.value}, twisted={self.twisted}, N={self.N}, "
                f"i={self.i_tuple}{j_part})")


def pairing_symbols(family: PairingFamily, twisted: bool, indices: Sequence[int]) -> List[int]:
    symbol = delta_bar if twisted else delta
    return [symbol(pi, indices) for pi in enumerate_pairings(len(indices), family)]


def haar_integral(query: MomentQuery, cache: WeingartenCache) -> Fraction:
    """Haar integral of u_{i1 j1}...u_{ik jk} over the (twisted) quantum group of the family."""
    if query.is_sphere:
        raise ValidationError("a Haar integral needs both i and j tuples")
    if query.k % 2:
        return Fraction(0)
    left = pairing_symbols(query.family, query.twisted, query.i_tuple)
    right = pairing_symbols(query.family, query.twisted, query.j_tuple)
    if not any(left) or not any(right):
        return Fraction(0)
    weingarten = cache.get(query.family, query.k, query.N)
    total = Fraction(0)
    for r, c in itertools.product(range(weingarten.order), repeat=2):
        if left[r] and right[c]:
            total += left[r] * right[c] * weingarten[r, c]
    logging.info(f"{query} = {total}")
    return total


def has_odd_occurrence(indices: Sequence[int]) -> bool:
    return any(count % 2 for count in Counter(indices).values())


def sphere_moment(family, twisted: bool, indices: Sequence[int], N: int,
                  cache: WeingartenCache) -> Fraction:
    """
    Integral of x_{i1}...x_{ik} over the (twisted) sphere of the family. Monomials in which some
    coordinate occurs an odd number of times vanish without touching the Weingarten matrix.
    """
    family = PairingFamily.parse(family)
    indices = tuple(indices)
    if any(not 1 <= value <= N for value in indices):
        raise ValidationError(f"indices {indices} must lie in 1..{N}")
    if has_odd_occurrence(indices):
        return Fraction(0)
    symbols = pairing_symbols(family, twisted, indices)
    if not any(symbols):
        return Fraction(0)
    weingarten = cache.get(family, len(indices), N)
    column_sums = weingarten.column_sums()
    return sum((symbol * column_sums[c] for c, symbol in enumerate(symbols) if symbol), Fraction(0))


def law_moments(family, twisted: bool, N: int, l_max: int, cache: WeingartenCache) -> List[Fraction]:
    """Moments m_2, m_4, ..., m_{2 l_max} of the rescaled coordinate sqrt(N) x_1."""
    if l_max < 1:
        raise ValidationError(f"l_max must be a positive integer, got {l_max}")
    return [N ** l * sphere_moment(family, twisted, (1,) * (2 * l), N, cache)
            for l in range(1, l_max + 1)]


def asymptotic_reference(family, l: int) -> int:
    """Large-N limit of N^l times the moment of x_1^{2l}: the number of pairings of 2l points."""
    return reference_counts(family, l)


def convergence_gaps(family, twisted: bool, l: int, dimensions: Sequence[int],
                     cache: WeingartenCache) -> List[Tuple[int, Fraction]]:
    """|N^l m_{2l} - reference| for each N, exactly."""
    reference = asymptotic_reference(family, l)
    gaps = []
    for N in dimensions:
        moment = N ** l * sphere_moment(family, twisted, (1,) * (2 * l), N, cache)
        gaps.append((N, abs(moment - reference)))
    return gaps


def scalar_product_formula(a: int, b: int, i: int, j: int, N: int) -> Fraction:
    """(1 / (N (N + 2))) times the sum of delta_bar_sigma(a, b, j, i) over all pairings of 4 points."""
    total = sum(delta_bar(sigma, (a, b, j, i)) for sigma in enumerate_pairings(4, PairingFamily.CLASSICAL))
    return Fraction(total, N * (N + 2))


def scalar_product_matrix(N: int, cache: WeingartenCache) -> Tuple[List[Tuple[int, int]], np.ndarray]:
    """
    Scalar products <x_a x_b, x_i x_j> = integral of x_a x_b x_j x_i over the twisted classical
    sphere, for a <= b and i <= j. Returns the index labels and the matrix.
    """
    labels = [(a, b) for a in range(1, N + 1) for b in range(a, N + 1)]
    matrix = np.empty((len(labels), len(labels)), dtype=object)
    for r, (a, b) in enumerate(labels):
        for c, (i, j) in enumerate(labels):
            matrix[r, c] = sphere_moment(PairingFamily.CLASSICAL, True, (a, b, j, i), N, cache)
    return labels, matrix


def half_twisted_scalar_matrix(N: int, cache: WeingartenCache) -> Tuple[List[Tuple[int, int, int]], np.ndarray]:
    """
    Scalar products <x_a x_b x_c, x_i x_j x_k> = integral of x_a x_b x_c x_k x_j x_i over the
    twisted half-liberated sphere, for a <= c and i <= k.
    """
    labels = [(a, b, c) for a in range(1, N + 1) for b in range(1, N + 1) for c in range(a, N + 1)]
    matrix = np.empty((len(labels), len(labels)), dtype=object)
    for r, (a, b, c) in enumerate(labels):
        for col, (i, j, k) in enumerate(labels):
            matrix[r, col] = sphere_moment(PairingFamily.HALF, True, (a, b, c, k, j, i), N, cache)
    return labels, matrix


def independence_rank(matrix: np.ndarray) -> Tuple[int, int]:
    """Exact rank and order of a scalar product matrix."""
    return linalg.exact_rank(matrix), matrix.shape[0]
