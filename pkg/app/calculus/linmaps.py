"""app/calculus/linmaps.py
Diagrams as exact integer matrices on tensor powers of C^N.

For a partition pi of shape (k, l), T_pi maps (C^N)^{(x)k} to (C^N)^{(x)l}; its entry at row
(j_1..j_l) and column (i_1..i_k) is delta_pi(i_1..i_k, j_1..j_l). Tuples index rows and columns
in row-major order, (j_1..j_l) -> sum (j_t - 1) N^(l - t). The twisted map uses the signed symbol
delta_bar instead. Fixed vectors xi_pi are the one-row case, a single column.
"""
import logging
from typing import Dict, List, Sequence

import numpy as np

from app.calculus import config
from app.calculus.exceptions import BoundExceededError, ValidationError
from app.calculus.partitions import Partition, enumerate_pairings, kernel, signature


class TensorMatrix:
    """An integer matrix of a diagram of shape (k, l) at dimension N: N^l rows, N^k columns."""

    def __init__(self, entries: np.ndarray, N: int, upper_count: int, lower_count: int):
        expected = (N ** lower_count, N ** upper_count)
        if entries.shape != expected:
            raise ValidationError(f"matrix of shape {entries.shape} does not match {expected}")
        self.entries = entries
        self.N = N
        self.upper_count = upper_count
        self.lower_count = lower_count

    @property
    def row_dim(self) -> int:
        return self.entries.shape[0]

    @property
    def col_dim(self) -> int:
        return self.entries.shape[1]

    def tensor(self, other: "TensorMatrix") -> "TensorMatrix":
        return TensorMatrix(np.kron(self.entries, other.entries), self.N,
                            self.upper_count + other.upper_count,
                            self.lower_count + other.lower_count)

    def transpose(self) -> "TensorMatrix":
        return TensorMatrix(np.ascontiguousarray(self.entries.T), self.N,
                            self.lower_count, self.upper_count)

    def scaled(self, factor: int) -> "TensorMatrix":
        return TensorMatrix(self.entries * factor, self.N, self.upper_count, self.lower_count)

    def __matmul__(self, other: "TensorMatrix") -> "TensorMatrix":
        # self after other: other is (m -> k), self is (k -> l)
        if self.upper_count != other.lower_count:
            raise ValidationError("cannot multiply tensor matrices of incompatible shapes")
        return TensorMatrix(self.entries @ other.entries, self.N,
                            other.upper_count, self.lower_count)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorMatrix):
            return NotImplemented
        return (self.N == other.N
                and (self.upper_count, self.lower_count) == (other.upper_count, other.lower_count)
                and np.array_equal(self.entries, other.entries))

    __hash__ = None

    def __repr__(self) -> str:
        return (f"TensorMatrix(N={self.N}, shape=({self.upper_count}, {self.lower_count}), "
                f"dims={self.row_dim}x{self.col_dim})")


class FixedVector:
    """Coordinates of xi_pi (or its twisted version), indexed by k-tuples over {1..N}."""

    def __init__(self, coordinates: np.ndarray, N: int, k: int):
        if coordinates.shape != (N ** k,):
            raise ValidationError(f"fixed vector of length {coordinates.shape} does not match N^k = {N ** k}")
        self.coordinates = coordinates
        self.N = N
        self.k = k

    def inner(self, other: "FixedVector") -> int:
        return int(np.dot(self.coordinates, other.coordinates))

    def coordinate(self, indices: Sequence[int]) -> int:
        """The coordinate at a 1-based index tuple."""
        position = 0
        for value in indices:
            position = position * self.N + (value - 1)
        return int(self.coordinates[position])

    @property
    def support_size(self) -> int:
        return int(np.count_nonzero(self.coordinates))

    def __repr__(self) -> str:
        return f"FixedVector(N={self.N}, k={self.k}, support={self.support_size})"


def _check_size(pi: Partition, N: int) -> None:
    if N < 1:
        raise ValidationError(f"N must be a positive integer, got {N}")
    entries = N ** pi.size
    bound = config.max_entries()
    if entries > bound:
        raise BoundExceededError("N^(k+l)", entries, bound)


def _coincidence_mask(pi: Partition, N: int) -> np.ndarray:
    """Boolean array over all index tuples (diagram order): True where delta_pi = 1."""
    n = pi.size
    if n == 0:
        return np.ones((), dtype=bool)
    grids = np.indices((N,) * n, sparse=True)
    mask = np.ones((N,) * n, dtype=bool)
    for block in pi.blocks:
        for leg in block[1:]:
            mask &= grids[block[0]] == grids[leg]
    return mask


def _as_matrix(values: np.ndarray, pi: Partition, N: int) -> TensorMatrix:
    k, l = pi.shape
    # values are laid out as (i-tuple, j-tuple) in C order; rows must be j
    entries = np.ascontiguousarray(values.reshape(N ** k, N ** l).T.astype(np.int64))
    return TensorMatrix(entries, N, k, l)


def t_map(pi: Partition, N: int) -> TensorMatrix:
    """The untwisted map T_pi with entries delta_pi(i, j) in {0, 1}."""
    _check_size(pi, N)
    return _as_matrix(_coincidence_mask(pi, N), pi, N)


def t_bar_map(pi: Partition, N: int) -> TensorMatrix:
    """
    The twisted map of an even partition: the entry at (j, i) is the signature of ker(i j) when
    that kernel coarsens pi, and 0 otherwise.
    """
    if not pi.is_even:
        raise ValidationError(f"the twisted map needs an even partition, got {pi}")
    _check_size(pi, N)
    mask = _coincidence_mask(pi, N)
    if pi.size == 0:
        return _as_matrix(mask, pi, N)
    dims = (N,) * pi.size
    values = np.zeros(N ** pi.size, dtype=np.int64)
    signs: Dict[Partition, int] = {}
    for position in np.flatnonzero(mask):
        indices = tuple(int(value) for value in np.unravel_index(position, dims))
        tau = kernel(indices, pi.shape)
        if tau not in signs:
            signs[tau] = signature(tau)
        values[position] = signs[tau]
    logging.debug(f"Twisted map of {pi} at N={N}: {len(signs)} distinct kernels.")
    return _as_matrix(values, pi, N)


def xi_vector(pi: Partition, N: int, twisted: bool = False) -> FixedVector:
    """The fixed vector of a one-row partition: coordinates delta_pi(j), or delta_bar_pi(j) when twisted."""
    if pi.upper_count != 0:
        raise ValidationError(f"fixed vectors are built from one-row partitions, got shape {pi.shape}")
    matrix = t_bar_map(pi, N) if twisted else t_map(pi, N)
    return FixedVector(np.ascontiguousarray(matrix.entries[:, 0]), N, pi.lower_count)


def gram_of_fixed_vectors(family, k: int, N: int, twisted: bool = False) -> np.ndarray:
    """Inner products of the fixed vectors of a family, as an object array of Python ints."""
    vectors: List[FixedVector] = [xi_vector(pi, N, twisted) for pi in enumerate_pairings(k, family)]
    if not vectors:
        return np.empty((0, 0), dtype=object)
    stacked = np.stack([vector.coordinates for vector in vectors])
    products = stacked @ stacked.T
    return np.array(products.tolist(), dtype=object)
