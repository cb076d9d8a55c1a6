"""app/calculus/categories.py
Truncated categories of pairings: closure of a generator set under the category operations,
the correspondence between affine and projective categories, and the capping descent.

A truncation keeps every diagram with at most `k_max` legs in total. Closure adds the semicircle
and then applies involution, rotation in both directions, tensor products and compositions in
both orders until nothing new with at most `k_max` legs appears.
"""
import logging
from collections import deque
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Set, Tuple

from app.calculus import config
from app.calculus.exceptions import BoundExceededError, ValidationError
from app.calculus.operations import LOWER_TO_UPPER, UPPER_TO_LOWER, DiagramOperations
from app.calculus.partitions import Partition, PairingFamily, enumerate_two_row_pairings

AFFINE_TO_PROJECTIVE = "affine_to_projective"
PROJECTIVE_TO_AFFINE = "projective_to_affine"


class CategoryTruncation:
    """The diagrams of a category of pairings with at most k_max legs, grouped by shape."""

    def __init__(self, k_max: int, diagrams: Iterable[Partition]):
        self.k_max = k_max
        by_shape: Dict[Tuple[int, int], Set[Partition]] = {}
        for diagram in diagrams:
            if diagram.size > k_max:
                continue
            by_shape.setdefault(diagram.shape, set()).add(diagram)
        self._by_shape = {shape: sorted(members, key=Partition.sort_key)
                          for shape, members in sorted(by_shape.items())}
        self._members = frozenset(diagram for members in by_shape.values() for diagram in members)

    @classmethod
    def from_family(cls, family, k_max: int) -> "CategoryTruncation":
        """Every pairing of the family with at most k_max legs."""
        family = PairingFamily.parse(family)
        diagrams = []
        for total in range(0, k_max + 1, 2):
            for k in range(total + 1):
                diagrams += enumerate_two_row_pairings(k, total - k, family)
        return cls(k_max, diagrams)

    def at(self, k: int, l: int) -> List[Partition]:
        return list(self._by_shape.get((k, l), []))

    def count(self, k: int, l: int) -> int:
        return len(self._by_shape.get((k, l), []))

    def shapes(self) -> List[Tuple[int, int]]:
        return list(self._by_shape)

    def restrict(self, k_max: int) -> "CategoryTruncation":
        return CategoryTruncation(k_max, (diagram for diagram in self if diagram.size <= k_max))

    def __iter__(self) -> Iterator[Partition]:
        for members in self._by_shape.values():
            yield from members

    def __contains__(self, diagram: Partition) -> bool:
        return diagram in self._members

    def __len__(self) -> int:
        return sum(len(members) for members in self._by_shape.values())

    def __le__(self, other: "CategoryTruncation") -> bool:
        return all(diagram in other for diagram in self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CategoryTruncation):
            return NotImplemented
        return self._by_shape == other._by_shape

    __hash__ = None

    def counts(self) -> Dict[str, int]:
        return {f"{k},{l}": len(members) for (k, l), members in self._by_shape.items()}

    def __repr__(self) -> str:
        return f"CategoryTruncation(k_max={self.k_max}, diagrams={len(self)})"


def _check_generators(generators: Iterable[Partition], k_max: int) -> List[Partition]:
    bound = config.max_k()
    if k_max > bound:
        raise BoundExceededError("k_max", k_max, bound)
    if k_max < 2:
        raise ValidationError(f"k_max must be at least 2 to hold the semicircle, got {k_max}")
    generators = list(generators)
    for generator in generators:
        if not generator.is_pairing:
            raise ValidationError(f"generator {generator} is not a pairing")
        if generator.size > k_max:
            raise ValidationError(f"generator {generator} has more than k_max = {k_max} legs")
    return generators


def category_closure(generators: Iterable[Partition], k_max: int) -> CategoryTruncation:
    """Smallest truncated category of pairings containing the generators and the semicircle."""
    generators = _check_generators(generators, k_max)
    known: Set[Partition] = set()
    pending: deque = deque()

    def add(diagram: Partition) -> None:
        if diagram.size <= k_max and diagram not in known:
            known.add(diagram)
            pending.append(diagram)

    for diagram in [DiagramOperations.cap_diagram()] + generators:
        add(diagram)

    processed: List[Partition] = []
    while pending:
        current = pending.popleft()
        add(DiagramOperations.involution(current))
        if current.lower_count:
            add(DiagramOperations.rotate(current, LOWER_TO_UPPER))
        if current.upper_count:
            add(DiagramOperations.rotate(current, UPPER_TO_LOWER))
        processed.append(current)
        for other in list(processed):
            for left, right in ((current, other), (other, current)):
                if left.size + right.size <= k_max:
                    add(DiagramOperations.tensor(left, right))
                # right stacked above left
                if right.lower_count == left.upper_count \
                        and right.upper_count + left.lower_count <= k_max:
                    add(DiagramOperations.composition(left, right)[0])

    truncation = CategoryTruncation(k_max, known)
    logging.info(f"Category closure of {len(generators)} generators up to {k_max} legs: {len(truncation)} diagrams")
    return truncation


def projective_correspondence(direction: str, truncation: CategoryTruncation) -> CategoryTruncation:
    """
    Pass between an affine category D and its projective version E.

    Affine to projective keeps the diagrams whose two rows both have even length. Projective to
    affine keeps those and adds, for odd row lengths, every sigma such that a vertical string
    placed to the left of sigma lies in E; those come from diagrams with two more legs, so the
    odd shapes are recovered up to k_max - 2 legs.
    """
    if direction == AFFINE_TO_PROJECTIVE:
        return CategoryTruncation(
            truncation.k_max,
            (diagram for diagram in truncation
             if diagram.upper_count % 2 == 0 and diagram.lower_count % 2 == 0))
    if direction == PROJECTIVE_TO_AFFINE:
        diagrams = [diagram for diagram in truncation
                    if diagram.upper_count % 2 == 0 and diagram.lower_count % 2 == 0]
        string = DiagramOperations.identity(1)
        for total in range(2, truncation.k_max - 1, 2):
            for k in range(1, total, 2):
                for sigma in enumerate_two_row_pairings(k, total - k, PairingFamily.CLASSICAL):
                    if DiagramOperations.tensor(string, sigma) in truncation:
                        diagrams.append(sigma)
        return CategoryTruncation(truncation.k_max, diagrams)
    raise ValidationError(f"unknown correspondence direction '{direction}'")


def projective_round_trip(truncation: CategoryTruncation, points: int) -> bool:
    """Whether D -> E -> D restores D on diagrams with at most `points` legs."""
    if points > truncation.k_max - 2:
        raise ValidationError(f"a round trip at {points} points needs a truncation at {points + 2} legs")
    projective = projective_correspondence(AFFINE_TO_PROJECTIVE, truncation)
    recovered = projective_correspondence(PROJECTIVE_TO_AFFINE, projective)
    return recovered.restrict(points) == truncation.restrict(points)


def string_stable(projective: CategoryTruncation) -> bool:
    """sigma in E implies |sigma| in E, checked where |sigma| still fits the truncation."""
    string = DiagramOperations.identity(1)
    for sigma in projective:
        if sigma.size + 4 > projective.k_max:
            continue
        padded = DiagramOperations.tensor(DiagramOperations.tensor(string, sigma), string)
        if padded not in projective:
            return False
    return True


class CappingStep(NamedTuple):
    position: int
    capped: Partition
    in_family: bool


def capping_descent(pi: Partition, family) -> List[CappingStep]:
    """All cappings of pi at cyclic positions 1..n with their membership in the family."""
    family = PairingFamily.parse(family)
    if not pi.is_pairing:
        raise ValidationError(f"capping descent needs a pairing, got {pi}")
    steps = []
    for position in range(1, pi.size + 1):
        capped = DiagramOperations.cap(pi, position)
        steps.append(CappingStep(position, capped, family.contains(capped)))
    return steps


def descend(pi: Partition, family, floor: Optional[int] = 4) -> List[Partition]:
    """
    Repeatedly cap pi while some capping stays outside the family. The chain starts at pi and
    stops at a pairing all of whose cappings fall inside the family, or at `floor` legs.
    """
    family = PairingFamily.parse(family)
    if family.contains(pi):
        raise ValidationError(f"{pi} already lies in the {family} family")
    chain = [pi]
    while floor is None or chain[-1].size > floor:
        outside = [step for step in capping_descent(chain[-1], family) if not step.in_family]
        if not outside:
            break
        chain.append(outside[0].capped)
    return chain
