"""app/calculus/weingarten.py
Exact Gram and Weingarten matrices of the pairing families.

For a family of one-row pairings of k points, the Gram matrix at dimension N has entries
N^{|pi v sigma|}, and the Weingarten matrix is its exact inverse. Both are indexed by the
canonical pairing order of `enumerate_pairings`. Twisted and untwisted integration share these
matrices, since the twisted fixed vectors have the same inner products.
"""
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.calculus import config, linalg
from app.calculus.exceptions import BoundExceededError, GramSingular, SingularMatrixError, ValidationError
from app.calculus.partitions import Partition, PairingFamily, enumerate_pairings, join


class RationalMatrix:
    """
    A dense square matrix of Fractions together with the pairing basis indexing its rows
    and columns.
    """

    def __init__(self, entries: np.ndarray, basis: Sequence[Partition]):
        if entries.shape != (len(basis), len(basis)):
            raise ValidationError(f"matrix of shape {entries.shape} does not fit a basis of {len(basis)}")
        self.entries = entries
        self.basis: Tuple[Partition, ...] = tuple(basis)

    @property
    def order(self) -> int:
        return len(self.basis)

    def __getitem__(self, position: Tuple[int, int]) -> Fraction:
        return self.entries[position]

    def is_symmetric(self) -> bool:
        return np.array_equal(self.entries, self.entries.T)

    def row_sums(self) -> List[Fraction]:
        return [sum(row, Fraction(0)) for row in self.entries.tolist()]

    def column_sums(self) -> List[Fraction]:
        return [sum(col, Fraction(0)) for col in self.entries.T.tolist()]

    def total(self) -> Fraction:
        return sum(self.row_sums(), Fraction(0))

    def __matmul__(self, other: "RationalMatrix") -> np.ndarray:
        return self.entries @ other.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.basis == other.basis and np.array_equal(self.entries, other.entries)

    __hash__ = None

    def to_payload(self) -> Dict:
        """JSON-ready form: basis as serialized partitions, entries as numerator/denominator strings."""
        return {
            "basis": [str(pi) for pi in self.basis],
            "entries": [[{"num": str(value.numerator), "den": str(value.denominator)} for value in row]
                        for row in self.entries.tolist()],
        }

    @classmethod
    def from_payload(cls, payload: Dict) -> "RationalMatrix":
        basis = [Partition.from_string(text) for text in payload["basis"]]
        rows = [[_fraction_of(value) for value in row] for row in payload["entries"]]
        if len(rows) != len(basis) or any(len(row) != len(basis) for row in rows):
            raise ValidationError("matrix payload is not square over its basis")
        entries = np.empty((len(basis), len(basis)), dtype=object)
        for r, row in enumerate(rows):
            for c, value in enumerate(row):
                entries[r, c] = value
        return cls(entries, basis)

    def __repr__(self) -> str:
        return f"RationalMatrix(order={self.order})"


def _fraction_of(value: Dict) -> Fraction:
    denominator = int(value["den"])
    if denominator == 0:
        raise ValidationError(f"zero denominator in matrix payload entry {value}")
    return Fraction(int(value["num"]), denominator)


def _check_request(family, k: int, N: int, k_bound: Optional[int]) -> PairingFamily:
    family = PairingFamily.parse(family)
    if k < 0 or k % 2:
        raise ValidationError(f"k must be a nonnegative even integer, got {k}")
    if N < 1:
        raise ValidationError(f"N must be a positive integer, got {N}")
    bound = config.max_k() if k_bound is None else k_bound
    if k > bound:
        raise BoundExceededError("k", k, bound)
    return family


def gram_matrix(family, k: int, N: int, k_bound: Optional[int] = None) -> RationalMatrix:
    """Gram matrix N^{|pi v sigma|} over the canonical basis of the family's pairings of k points."""
    family = _check_request(family, k, N, k_bound)
    basis = enumerate_pairings(k, family)
    n = len(basis)
    entries = np.empty((n, n), dtype=object)
    for r in range(n):
        for c in range(r, n):
            _, blocks = join(basis[r], basis[c])
            entries[r, c] = entries[c, r] = Fraction(N ** blocks)
    logging.info(f"Gram matrix for {family} k={k} N={N}: order {n}.")
    return RationalMatrix(entries, basis)


def weingarten_matrix(family, k: int, N: int, k_bound: Optional[int] = None,
                      strategy: str = linalg.BAREISS) -> RationalMatrix:
    """
    Exact inverse of the Gram matrix.

    Raises:
        GramSingular: if the Gram matrix has rank below its order; the exact rank is reported.
    """
    gram = gram_matrix(family, k, N, k_bound)
    try:
        inverse = linalg.invert(gram.entries, strategy)
    except SingularMatrixError as e:
        logging.warning(f"Gram matrix singular for {PairingFamily.parse(family)} k={k} N={N}: rank {e.rank}.")
        raise GramSingular(PairingFamily.parse(family), k, N, e.rank, gram.order) from None
    return RationalMatrix(inverse, gram.basis)
