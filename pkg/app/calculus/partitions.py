"""app/calculus/partitions.py
Two-row partitions and the combinatorics built on them.

A Partition of shape (k, l) has k upper legs and l lower legs. Internally legs are numbered
0..k-1 along the upper row and k..k+l-1 along the lower row, both left to right; the text
form numbers them from 1. The linearization reads the lower row left to right and then the
upper row right to left, so that crossings of a drawn two-row diagram are exactly the
interleaved chords of the linearized sequence.

This module holds enumeration (pairings, balanced pairings, noncrossing pairings), kernels,
joins, the coarsening order, Kronecker symbols, the signature map and crossing counts.
The categorical operations live in app.calculus.operations.
"""
import itertools
from enum import Enum
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from app.calculus.exceptions import ValidationError
from app.calculus.union_find import UnionFind

UPPER = "upper"
LOWER = "lower"


class Leg(NamedTuple):
    """A leg of a diagram: its row and its 1-based position within that row."""
    row: str
    position: int


def linearization_order(upper_count: int, lower_count: int) -> Tuple[int, ...]:
    """Leg indices in linear order: lower row left to right, then upper row right to left."""
    lower = range(upper_count, upper_count + lower_count)
    upper = range(upper_count - 1, -1, -1)
    return tuple(itertools.chain(lower, upper))


class Partition:
    """
    An immutable partition of the k + l legs of a two-row diagram into blocks.

    Blocks are stored canonically: legs sorted inside each block, blocks sorted by the linear
    position of their earliest leg. Two partitions are equal when their shapes and blocks agree.
    """

    __slots__ = ("upper_count", "lower_count", "blocks", "_block_index", "_positions")

    def __init__(self, upper_count: int, lower_count: int, blocks: Iterable[Iterable[int]]):
        if upper_count < 0 or lower_count < 0:
            raise ValidationError(f"row lengths must be nonnegative, got ({upper_count}, {lower_count})")
        size = upper_count + lower_count
        cleaned = [tuple(sorted(block)) for block in blocks]
        legs = sorted(leg for block in cleaned for leg in block)
        if any(not block for block in cleaned) or legs != list(range(size)):
            raise ValidationError(
                f"blocks {cleaned} are not a set partition of the {size} legs of shape ({upper_count}, {lower_count})")

        order = linearization_order(upper_count, lower_count)
        positions = [0] * size
        for position, leg in enumerate(order):
            positions[leg] = position
        cleaned.sort(key=lambda block: min(positions[leg] for leg in block))

        block_index = [0] * size
        for index, block in enumerate(cleaned):
            for leg in block:
                block_index[leg] = index

        self.upper_count = upper_count
        self.lower_count = lower_count
        self.blocks: Tuple[Tuple[int, ...], ...] = tuple(cleaned)
        self._block_index = tuple(block_index)
        self._positions = tuple(positions)

    # Factories

    @classmethod
    def empty(cls) -> "Partition":
        """The partition of shape (0, 0)."""
        return cls(0, 0, [])

    @classmethod
    def from_partner(cls, upper_count: int, lower_count: int, partner: Sequence[int]) -> "Partition":
        """Build a pairing from a 0-based partner array (partner[i] is the leg paired with i)."""
        blocks = [(leg, other) for leg, other in enumerate(partner) if leg < other]
        return cls(upper_count, lower_count, blocks)

    @classmethod
    def one_row(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        """Build a one-row partition (shape (0, n)) from blocks given with 1-based legs."""
        blocks = [[leg - 1 for leg in block] for block in blocks]
        size = sum(len(block) for block in blocks)
        return cls(0, size, blocks)

    @classmethod
    def from_string(cls, text: str) -> "Partition":
        """
        Parse the text form `k,l:[b1|b2|...]`, where each block is a comma separated list of
        1-based legs, e.g. `0,4:[1,3|2,4]`.
        """
        try:
            shape, body = text.strip().split(":", 1)
            k_text, l_text = shape.split(",")
            body = body.strip()
            if not (body.startswith("[") and body.endswith("]")):
                raise ValueError("missing brackets")
            inner = body[1:-1].strip()
            blocks = [] if not inner else [
                [int(leg) - 1 for leg in block.split(",")] for block in inner.split("|")]
            return cls(int(k_text), int(l_text), blocks)
        except ValidationError:
            raise
        except ValueError as e:
            raise ValidationError(f"cannot parse partition '{text}': {e}") from None

    # Views

    @property
    def shape(self) -> Tuple[int, int]:
        return self.upper_count, self.lower_count

    @property
    def size(self) -> int:
        return self.upper_count + self.lower_count

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def block_index(self) -> Tuple[int, ...]:
        """block_index[leg] is the index of the block containing leg, in canonical block order."""
        return self._block_index

    @property
    def linearization(self) -> Tuple[int, ...]:
        return linearization_order(self.upper_count, self.lower_count)

    @property
    def linear_positions(self) -> Tuple[int, ...]:
        """linear_positions[leg] is the 0-based position of leg in the linearization."""
        return self._positions

    @property
    def is_pairing(self) -> bool:
        return all(len(block) == 2 for block in self.blocks)

    @property
    def is_even(self) -> bool:
        return all(len(block) % 2 == 0 for block in self.blocks)

    @property
    def is_noncrossing(self) -> bool:
        spans = [sorted(self._positions[leg] for leg in block) for block in self.blocks]
        for first, second in itertools.combinations(spans, 2):
            if _interleaved(first, second):
                return False
        return True

    @property
    def partner_array(self) -> Tuple[int, ...]:
        """0-based partner array of a pairing."""
        if not self.is_pairing:
            raise ValidationError(f"{self} is not a pairing")
        partner = [0] * self.size
        for a, b in self.blocks:
            partner[a], partner[b] = b, a
        return tuple(partner)

    def leg(self, index: int) -> Leg:
        """The Leg (row, 1-based position) of internal leg index."""
        if not 0 <= index < self.size:
            raise ValidationError(f"leg {index} out of range for shape {self.shape}")
        if index < self.upper_count:
            return Leg(UPPER, index + 1)
        return Leg(LOWER, index - self.upper_count + 1)

    def sort_key(self) -> Tuple:
        if self.is_pairing:
            return self.shape, self.partner_array
        return self.shape, self.blocks

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.shape == other.shape and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.upper_count, self.lower_count, self.blocks))

    def __str__(self) -> str:
        body = "|".join(",".join(str(leg + 1) for leg in block) for block in self.blocks)
        return f"{self.upper_count},{self.lower_count}:[{body}]"

    def __repr__(self) -> str:
        return f"Partition('{self}')"


class PairingFamily(Enum):
    """The three pairing categories: all pairings, balanced pairings, noncrossing pairings."""
    CLASSICAL = "classical"
    HALF = "half"
    FREE = "free"

    @classmethod
    def parse(cls, value) -> "PairingFamily":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValidationError(
                f"unknown pairing family '{value}' (expected classical, half or free)") from None

    def contains(self, partition: Partition) -> bool:
        """Membership of a (two-row) partition in the family."""
        if not partition.is_pairing:
            return False
        if self is PairingFamily.CLASSICAL:
            return True
        if self is PairingFamily.HALF:
            return is_balanced_partition(partition)
        return partition.is_noncrossing

    def __str__(self) -> str:
        return self.value


def _interleaved(first: Sequence[int], second: Sequence[int]) -> bool:
    # two blocks cross iff their merged label sequence has at least 4 runs
    merged = sorted([(p, 0) for p in first] + [(p, 1) for p in second])
    runs = 1 + sum(1 for (_, a), (_, b) in zip(merged, merged[1:]) if a != b)
    return runs >= 4


def _partner_arrays(size: int) -> Iterator[List[int]]:
    """All perfect matchings of 0..size-1, pairing the smallest unpaired leg with each candidate."""
    partner = [-1] * size

    def extend() -> Iterator[List[int]]:
        try:
            first = partner.index(-1)
        except ValueError:
            yield list(partner)
            return
        for other in range(first + 1, size):
            if partner[other] == -1:
                partner[first], partner[other] = other, first
                yield from extend()
                partner[first] = partner[other] = -1

    if size % 2 == 0:
        yield from extend()


def enumerate_pairings(k: int, family) -> List[Partition]:
    """
    One-row pairings of k points (shape (0, k)) in the given family, in lexicographic order of
    the partner array. Odd k gives an empty list and k = 0 gives the empty pairing.
    """
    return enumerate_two_row_pairings(0, k, family)


def enumerate_two_row_pairings(k: int, l: int, family) -> List[Partition]:
    """Pairings of shape (k, l) in the given family, in lexicographic order of the partner array."""
    family = PairingFamily.parse(family)
    if k < 0 or l < 0:
        raise ValidationError(f"row lengths must be nonnegative, got ({k}, {l})")
    if (k + l) % 2:
        return []
    pairings = (Partition.from_partner(k, l, partner) for partner in _partner_arrays(k + l))
    selected = [pairing for pairing in pairings if family.contains(pairing)]
    selected.sort(key=lambda pairing: pairing.partner_array)
    return selected


def noncrossing_pairings_catalan(k: int) -> List[Partition]:
    """Noncrossing one-row pairings of k points by the Catalan recursion on the partner of leg 0."""

    def build(legs: Tuple[int, ...]) -> Iterator[List[Tuple[int, int]]]:
        if not legs:
            yield []
            return
        first = legs[0]
        for split in range(1, len(legs), 2):
            inside, outside = legs[1:split], legs[split + 1:]
            for inner in build(inside):
                for outer in build(outside):
                    yield [(first, legs[split])] + inner + outer

    if k % 2:
        return []
    pairings = [Partition(0, k, blocks) for blocks in build(tuple(range(k)))]
    pairings.sort(key=lambda pairing: pairing.partner_array)
    return pairings


def is_balanced_partition(partition: Partition) -> bool:
    """True for a pairing whose every string joins an odd and an even linear position."""
    if not partition.is_pairing:
        return False
    positions = partition.linear_positions
    return all((positions[a] + positions[b]) % 2 == 1 for a, b in partition.blocks)


def permutation_diagram(images: Sequence[int]) -> Partition:
    """The Perm(k, k) pairing joining upper position t to lower position images[t-1] (1-based)."""
    k = len(images)
    if sorted(images) != list(range(1, k + 1)):
        raise ValidationError(f"{tuple(images)} is not a permutation of 1..{k}")
    return Partition(k, k, [(t, k + image - 1) for t, image in enumerate(images)])


def kernel(indices: Sequence[int], shape: Optional[Tuple[int, int]] = None) -> Partition:
    """
    The partition of the legs into equal-value classes of indices, read in diagram order
    (upper row left to right, then lower row left to right). One-row shape by default.
    """
    indices = tuple(indices)
    k, l = shape if shape is not None else (0, len(indices))
    if len(indices) != k + l:
        raise ValidationError(f"index tuple of length {len(indices)} does not fit shape ({k}, {l})")
    classes = {}
    for leg, value in enumerate(indices):
        classes.setdefault(value, []).append(leg)
    return Partition(k, l, classes.values())


def _require_same_shape(first: Partition, second: Partition) -> None:
    if first.shape != second.shape:
        raise ValidationError(f"shape mismatch: {first.shape} vs {second.shape}")


def join(pi: Partition, sigma: Partition) -> Tuple[Partition, int]:
    """The finest partition coarser than both arguments, and its number of blocks."""
    _require_same_shape(pi, sigma)
    forest = UnionFind(pi.size)
    for block in itertools.chain(pi.blocks, sigma.blocks):
        for leg in block[1:]:
            forest.union(block[0], leg)
    joined = Partition(pi.upper_count, pi.lower_count, forest.classes())
    return joined, joined.block_count


def coarsens(tau: Partition, pi: Partition) -> bool:
    """True iff every block of pi lies inside a block of tau."""
    _require_same_shape(tau, pi)
    owner = tau.block_index
    return all(len({owner[leg] for leg in block}) == 1 for block in pi.blocks)


def _check_indices(pi: Partition, indices: Sequence[int]) -> Tuple[int, ...]:
    indices = tuple(indices)
    if len(indices) != pi.size:
        raise ValidationError(f"index tuple of length {len(indices)} does not fit shape {pi.shape}")
    return indices


def delta(pi: Partition, indices: Sequence[int]) -> int:
    """Kronecker symbol: 1 iff every block of pi joins equal index values."""
    indices = _check_indices(pi, indices)
    return int(all(len({indices[leg] for leg in block}) == 1 for block in pi.blocks))


def signature(pi: Partition) -> int:
    """
    The sign of an even partition: (-1)^inv where inv counts pairs of legs out of order
    with respect to the first-occurrence ranks of their blocks along the linearization.
    """
    if not pi.is_even:
        raise ValidationError(f"signature is defined for even partitions only, got {pi}")
    # canonical block order is first-occurrence order, so block indices are the ranks
    ranks = [pi.block_index[leg] for leg in pi.linearization]
    inversions = sum(1 for x, y in itertools.combinations(ranks, 2) if x > y)
    return -1 if inversions % 2 else 1


def delta_bar(pi: Partition, indices: Sequence[int]) -> int:
    """Twisted Kronecker symbol: the signature of ker(indices) when it coarsens pi, else 0."""
    indices = _check_indices(pi, indices)
    tau = kernel(indices, pi.shape)
    if not coarsens(tau, pi):
        return 0
    return signature(tau)


def crossing_count(pi: Partition) -> int:
    """Number of pairs of strings of a pairing that interleave in the linearization."""
    if not pi.is_pairing:
        raise ValidationError(f"crossing count is defined for pairings only, got {pi}")
    positions = pi.linear_positions
    chords = [tuple(sorted((positions[a], positions[b]))) for a, b in pi.blocks]
    return sum(1 for (a, b), (c, d) in itertools.combinations(chords, 2)
               if a < c < b < d or c < a < d < b)


def set_partitions(n: int) -> Iterator[Tuple[int, ...]]:
    """Restricted growth strings of length n, one per set partition of n elements."""
    if n == 0:
        yield ()
        return

    def grow(prefix: List[int], top: int) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for label in range(top + 2):
            prefix.append(label)
            yield from grow(prefix, max(top, label))
            prefix.pop()

    yield from grow([0], 0)


def merge_blocks(pi: Partition, labels: Sequence[int]) -> Partition:
    """The coarsening of pi whose blocks are unions of pi's blocks carrying the same label."""
    if len(labels) != pi.block_count:
        raise ValidationError(f"{len(labels)} labels given for {pi.block_count} blocks")
    merged = {}
    for block, label in zip(pi.blocks, labels):
        merged.setdefault(label, []).extend(block)
    return Partition(pi.upper_count, pi.lower_count, merged.values())


def coarsenings(pi: Partition) -> Iterator[Partition]:
    """Every partition obtained from pi by merging blocks, pi itself included."""
    for labels in set_partitions(pi.block_count):
        yield merge_blocks(pi, labels)


def noncrossing_even_partitions(k: int) -> List[Partition]:
    """One-row noncrossing partitions of k points whose blocks all have even size."""
    found = []
    for labels in set_partitions(k):
        blocks: Dict[int, List[int]] = {}
        for position, label in enumerate(labels, start=1):
            blocks.setdefault(label, []).append(position)
        partition = Partition.one_row(blocks.values())
        if partition.is_even and partition.is_noncrossing:
            found.append(partition)
    return found
