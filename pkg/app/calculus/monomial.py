"""app/calculus/monomial.py
Filtered groups of permutations and the classification of monomial and polygonal spheres.

A monomial sphere is cut out by relations x_{i1}...x_{ik} = x_{i sigma(1)}...x_{i sigma(k)}; the
permutations whose relations hold form a filtered group G = (G_k). `saturate` computes the least
such family up to a truncation horizon, closing a generator set under group operations,
concatenation, outer-string removal and neighboring-string removal. `classify` then recognizes
the three possible answers: {1}, the balanced permutations S_k*, or all of S_k.

The twisted side uses signed relations x_{i1}...x_{ik} = eps(ker(i ; i o sigma)) x_{i sigma(1)}...,
which turn into sign predicates on coarsenings of permutation diagrams.
"""
import itertools
import logging
import math
from collections import deque
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from app.calculus import config
from app.calculus.exceptions import BoundExceededError, ValidationError
from app.calculus.partitions import coarsenings, is_balanced_partition, kernel, permutation_diagram, signature

TRIVIAL = "trivial"
STAR = "star"
FULL = "full"
UNKNOWN = "unknown"
LABELS = (TRIVIAL, STAR, FULL)

ALL_COARSENINGS = "all_coarsenings"
PAIR_COARSENINGS = "pair_coarsenings"
ONE_BLOCK = "one_block"
PREDICATE_MODES = (ALL_COARSENINGS, PAIR_COARSENINGS, ONE_BLOCK)


class Permutation:
    """A bijection of {1..k}, stored as the tuple of images (sigma(1), ..., sigma(k))."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(int(value) for value in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValidationError(f"{images} is not a permutation of 1..{len(images)}")
        self.images = images

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(range(1, k + 1))

    @classmethod
    def reversal(cls, k: int) -> "Permutation":
        return cls(range(k, 0, -1))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse `k:(a,b,...)` or `(a,b,...)`."""
        body = text.strip()
        declared = None
        if ":" in body:
            head, body = body.split(":", 1)
            try:
                declared = int(head)
            except ValueError:
                raise ValidationError(f"bad permutation size in '{text}'") from None
        body = body.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValidationError(f"permutation '{text}' must be written as (a,b,...)")
        try:
            images = [int(value) for value in body[1:-1].split(",") if value.strip()]
        except ValueError:
            raise ValidationError(f"permutation '{text}' has a non-integer image") from None
        permutation = cls(images)
        if declared is not None and declared != permutation.k:
            raise ValidationError(f"permutation '{text}' declares size {declared} but has {permutation.k} images")
        return permutation

    @property
    def k(self) -> int:
        return len(self.images)

    def __call__(self, t: int) -> int:
        return self.images[t - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """(self o other)(t) = self(other(t))."""
        return Permutation(self.images[value - 1] for value in other.images)

    def inverse(self) -> "Permutation":
        images = [0] * self.k
        for t, value in enumerate(self.images, start=1):
            images[value - 1] = t
        return Permutation(images)

    def direct_sum(self, other: "Permutation") -> "Permutation":
        """Concatenation: self on the first k points, other shifted onto the rest."""
        return Permutation(self.images + tuple(value + self.k for value in other.images))

    def sign(self) -> int:
        inversions = sum(1 for a, b in itertools.combinations(self.images, 2) if a > b)
        return -1 if inversions % 2 else 1

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.k + 1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __str__(self) -> str:
        return f"{self.k}:({','.join(str(value) for value in self.images)})"

    def __repr__(self) -> str:
        return f"Permutation({self.images})"


def symmetric_group(k: int) -> List[Permutation]:
    """All permutations of {1..k} in lexicographic order of their images."""
    return [Permutation(images) for images in itertools.permutations(range(1, k + 1))]


def is_balanced(sigma: Permutation) -> bool:
    """True iff sigma preserves parity: sigma(i) = i mod 2 for every i."""
    return all((value - t) % 2 == 0 for t, value in enumerate(sigma.images, start=1))


def is_balanced_by_coloring(sigma: Permutation) -> bool:
    """Balanced test on the diagram: every string joins legs of opposite color."""
    return is_balanced_partition(permutation_diagram(sigma.images))


def balanced_group(k: int) -> FrozenSet[Permutation]:
    return frozenset(sigma for sigma in symmetric_group(k) if is_balanced(sigma))


def star_group_order(k: int) -> int:
    """Order of S_k*: (k/2)!^2 for even k, floor(k/2)! ceil(k/2)! for odd k."""
    if k < 0:
        raise ValidationError(f"k must be nonnegative, got {k}")
    return math.factorial(k // 2) * math.factorial(k - k // 2)


def outer_removals(sigma: Permutation) -> List[Permutation]:
    """Permutations obtained by deleting a fixed leftmost or rightmost string."""
    reduced = []
    k = sigma.k
    if k >= 2 and sigma(1) == 1:
        reduced.append(Permutation(value - 1 for value in sigma.images[1:]))
    if k >= 2 and sigma(k) == k:
        reduced.append(Permutation(sigma.images[:-1]))
    return reduced


def neighbor_removals(sigma: Permutation) -> List[Permutation]:
    """
    Permutations on k-2 points obtained by deleting two strings that leave adjacent positions
    t, t+1 for adjacent positions s, s+1, in either order.
    """
    reduced = []
    k = sigma.k
    if k < 3:
        return reduced
    for t in range(1, k):
        a, b = sigma(t), sigma(t + 1)
        if abs(a - b) != 1:
            continue
        low = min(a, b)
        images = [value for position, value in enumerate(sigma.images, start=1)
                  if position not in (t, t + 1)]
        reduced.append(Permutation(value if value < low else value - 2 for value in images))
    return reduced


def generate_group(generators: Iterable[Permutation], k: int) -> FrozenSet[Permutation]:
    """The subgroup of S_k generated by the given permutations, by breadth-first search."""
    generators = list(generators)
    start = Permutation.identity(k)
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for generator in generators:
            product = generator.compose(current)
            if product not in seen:
                seen.add(product)
                queue.append(product)
    return frozenset(seen)


class FilteredGroupTruncation:
    """The groups G_1..G_{k_max} of a filtered group, with the rule statistics of its saturation."""

    def __init__(self, k_max: int, groups: Dict[int, FrozenSet[Permutation]],
                 rule_counts: Optional[Dict[str, int]] = None, sweeps: int = 0):
        self.k_max = k_max
        self.groups = groups
        self.rule_counts = dict(rule_counts or {})
        self.sweeps = sweeps

    def order(self, k: int) -> int:
        return len(self.groups[k])

    def orders(self) -> Dict[int, int]:
        return {k: len(group) for k, group in sorted(self.groups.items())}

    def contains(self, sigma: Permutation) -> bool:
        return sigma.k in self.groups and sigma in self.groups[sigma.k]

    def elements(self) -> List[Permutation]:
        return [sigma for _, group in sorted(self.groups.items()) for sigma in group]

    def __le__(self, other: "FilteredGroupTruncation") -> bool:
        return all(k in other.groups and group <= other.groups[k] for k, group in self.groups.items())

    def __repr__(self) -> str:
        return f"FilteredGroupTruncation(k_max={self.k_max}, orders={self.orders()})"


def _check_horizon(k_max: int) -> None:
    bound = config.max_kmax()
    if k_max > bound:
        raise BoundExceededError("k_max", k_max, bound)
    if k_max < 3:
        raise ValidationError(f"k_max must be at least 3 to separate the three groups, got {k_max}")


def saturate(generators: Iterable[Permutation], k_max: int) -> FilteredGroupTruncation:
    """
    The least filtered group truncation containing the generators.

    A worklist applies each closure rule once to every new group element; a final sweep over all
    elements then confirms that no rule produces anything new.
    """
    _check_horizon(k_max)
    groups: Dict[int, FrozenSet[Permutation]] = {
        k: frozenset([Permutation.identity(k)]) for k in range(1, k_max + 1)}
    group_generators: Dict[int, List[Permutation]] = {k: [] for k in groups}
    counts = {"input": 0, "group": 0, "concatenation": 0, "outer_removal": 0, "neighbor_removal": 0}
    pending: deque = deque()

    def offer(sigma: Permutation, rule: str) -> bool:
        if sigma.k not in groups or sigma in groups[sigma.k]:
            return False
        level = sigma.k
        group_generators[level].append(sigma)
        before = groups[level]
        groups[level] = generate_group(group_generators[level], level)
        counts[rule] += 1
        counts["group"] += len(groups[level]) - len(before) - 1
        pending.extend(sorted(groups[level] - before, key=lambda perm: perm.images))
        pending.append(("generator", sigma))
        return True

    def apply_rules(sigma: Permutation) -> bool:
        changed = False
        for reduced in outer_removals(sigma):
            changed |= offer(reduced, "outer_removal")
        for reduced in neighbor_removals(sigma):
            changed |= offer(reduced, "neighbor_removal")
        return changed

    def concatenate(sigma: Permutation) -> bool:
        changed = False
        for extra in range(1, k_max - sigma.k + 1):
            padding = Permutation.identity(extra)
            changed |= offer(sigma.direct_sum(padding), "concatenation")
            changed |= offer(padding.direct_sum(sigma), "concatenation")
        return changed

    for sigma in sorted(generators, key=lambda perm: (perm.k, perm.images)):
        if sigma.k > k_max:
            raise ValidationError(f"generator {sigma} is larger than k_max = {k_max}")
        offer(sigma, "input")

    sweeps = 0
    while True:
        while pending:
            item = pending.popleft()
            if isinstance(item, tuple):
                concatenate(item[1])
            else:
                apply_rules(item)
        sweeps += 1
        changed = False
        for level in sorted(groups):
            for sigma in sorted(groups[level], key=lambda perm: perm.images):
                changed |= apply_rules(sigma)
            for sigma in list(group_generators[level]):
                changed |= concatenate(sigma)
        if not changed:
            break

    truncation = FilteredGroupTruncation(k_max, dict(groups), counts, sweeps)
    logging.info(f"Saturated {counts['input']} generators up to k={k_max}: {truncation.orders()}")
    return truncation


def label_of_group(k: int, group: FrozenSet[Permutation]) -> Set[str]:
    """The labels among trivial, star and full that describe a subgroup of S_k."""
    labels = set()
    if len(group) == 1:
        labels.add(TRIVIAL)
    if group == balanced_group(k):
        labels.add(STAR)
    if len(group) == math.factorial(k):
        labels.add(FULL)
    return labels


def classify(truncation: FilteredGroupTruncation) -> str:
    """trivial, star or full when one label fits every level 2..k_max, else unknown."""
    candidates = set(LABELS)
    for k in range(2, truncation.k_max + 1):
        candidates &= label_of_group(k, truncation.groups[k])
    if len(candidates) != 1:
        logging.warning(f"Truncation {truncation} matches no single filtered group: {sorted(candidates)}")
        return UNKNOWN
    return candidates.pop()


UNTWISTED_SPHERES = {TRIVIAL: "free sphere", STAR: "half-liberated sphere", FULL: "classical sphere"}
TWISTED_SPHERES = {TRIVIAL: "free sphere", STAR: "twisted half-liberated sphere",
                   FULL: "twisted classical sphere"}


def sphere_name(label: str, twisted: bool = False) -> str:
    names = TWISTED_SPHERES if twisted else UNTWISTED_SPHERES
    return names.get(label, "unknown sphere")


def classify_generators(generators: Iterable[Permutation], k_max: int, twisted: bool = False) -> Dict:
    """Saturate, classify and name the sphere cut out by the generators' relations."""
    generators = list(generators)
    truncation = saturate(generators, k_max)
    label = classify(truncation)
    return {
        "generators": [str(sigma) for sigma in generators],
        "k_max": k_max,
        "twisted": twisted,
        "orders": {str(k): order for k, order in truncation.orders().items()},
        "label": label,
        "sphere": sphere_name(label, twisted),
        "rule_counts": dict(truncation.rule_counts),
        "sweeps": truncation.sweeps,
    }


def reversal_dichotomy(lengths: Iterable[int], k_max: int) -> Dict[int, str]:
    """Label of the filtered group generated by the reversal of each length."""
    return {k: classify(saturate([Permutation.reversal(k)], k_max)) for k in lengths}


def projective_reversal_check(k_max: int) -> Dict[int, Dict]:
    """
    The sphere defined by x_{i1}...x_{ik} = x_{ik}...x_{i1} for each length 2..k_max: even lengths
    give the classical sphere and odd lengths the half-liberated one.
    """
    labels = reversal_dichotomy(range(2, k_max + 1), k_max)
    report = {}
    for k, label in labels.items():
        expected = FULL if k % 2 == 0 else STAR
        report[k] = {"label": label, "sphere": sphere_name(label), "expected": expected,
                     "match": label == expected}
    return report


def twisted_relation_sign(sigma: Permutation, indices: Sequence[int]) -> int:
    """Signature of the kernel of the two-row tuple (i_1..i_k ; i_sigma(1)..i_sigma(k))."""
    indices = tuple(indices)
    if len(indices) != sigma.k:
        raise ValidationError(f"index tuple of length {len(indices)} does not fit {sigma}")
    lower = tuple(indices[value - 1] for value in sigma.images)
    return signature(kernel(indices + lower, (sigma.k, sigma.k)))


def group_from_sign_predicate(mode: str, k: int) -> FrozenSet[Permutation]:
    """
    {sigma in S_k : every coarsening tau of sigma's diagram has eps(tau) = +1}, with the
    coarsenings restricted to two blocks in pair mode and to one block in one-block mode.
    """
    if mode not in PREDICATE_MODES:
        raise ValidationError(f"unknown predicate mode '{mode}' (expected one of {PREDICATE_MODES})")
    if k < 1:
        raise ValidationError(f"k must be positive, got {k}")
    selected = []
    for sigma in symmetric_group(k):
        diagram = permutation_diagram(sigma.images)
        taus: Iterable = coarsenings(diagram)
        if mode == PAIR_COARSENINGS:
            taus = (tau for tau in taus if tau.block_count == 2)
        elif mode == ONE_BLOCK:
            taus = (tau for tau in taus if tau.block_count == 1)
        if all(signature(tau) == 1 for tau in taus):
            selected.append(sigma)
    return frozenset(selected)


def twisted_relation_holds(sigma: Permutation, N: int, max_distinct: Optional[int] = None) -> bool:
    """
    Whether the twisted relation of sigma holds on the commutative sphere, restricted to the
    monomials with at most max_distinct different coordinates (those are the monomials that
    survive on the polygonal sphere with that many nonzero coordinates per product).
    """
    for indices in itertools.product(range(1, N + 1), repeat=sigma.k):
        if max_distinct is not None and len(set(indices)) > max_distinct:
            continue
        if twisted_relation_sign(sigma, indices) != 1:
            return False
    return True


# The standard 3 x 3 parametrization: column = G, row = H.
NINE_SPHERES: Dict[str, Tuple[str, str]] = {
    "S^{N-1}_R": (FULL, TRIVIAL),
    "S^{N-1}_{R,*}": (STAR, TRIVIAL),
    "S^{N-1}_{R,+}": (TRIVIAL, TRIVIAL),
    "S^{N-1,1}_R": (FULL, STAR),
    "S^{N-1,1}_{R,*}": (STAR, STAR),
    "bar S^{N-1}_{R,*}": (TRIVIAL, STAR),
    "S^{N-1,0}_R": (FULL, FULL),
    "bar S^{N-1,1}_R": (STAR, FULL),
    "bar S^{N-1}_R": (TRIVIAL, FULL),
}

_REPRESENTATIVES = {TRIVIAL: (), STAR: (Permutation.reversal(3),), FULL: (Permutation.reversal(2),)}


class SphereRelations(NamedTuple):
    """Generators of the untwisted (G) and twisted (H) relations that cut out a monomial sphere."""
    untwisted: Tuple[Permutation, ...] = ()
    twisted: Tuple[Permutation, ...] = ()

    @classmethod
    def of_labels(cls, g_label: str, h_label: str) -> Optional["SphereRelations"]:
        if g_label not in _REPRESENTATIVES or h_label not in _REPRESENTATIVES:
            return None
        return cls(_REPRESENTATIVES[g_label], _REPRESENTATIVES[h_label])

    def intersect(self, other: "SphereRelations") -> "SphereRelations":
        # the intersection of two spheres satisfies both sets of relations
        return SphereRelations(self.untwisted + other.untwisted, self.twisted + other.twisted)

    def labels(self, k_max: int) -> Tuple[str, str]:
        return classify(saturate(self.untwisted, k_max)), classify(saturate(self.twisted, k_max))


def _uniform_label(groups: Dict[int, FrozenSet[Permutation]]) -> str:
    candidates = set(LABELS)
    for k, group in groups.items():
        if k >= 2:
            candidates &= label_of_group(k, group)
    return candidates.pop() if len(candidates) == 1 else UNKNOWN


def nine_sphere_table(k_max: int) -> Dict[str, Dict]:
    """
    Derive (G, H) for the nine polygonal spheres from the sign predicates and compare with the
    standard grid.

    G of the bottom row and H of the left column come from predicates: all coarsenings for the
    classical and twisted classical spheres, two-block coarsenings for the spheres whose products
    of three distinct coordinates vanish, one-block coarsenings for the sphere whose products of
    two distinct coordinates vanish. Every cell is the intersection of its column's untwisted sphere
    with its row's twisted sphere; the intersection unions the two generator sets, which are then
    saturated and classified.
    """
    if not 3 <= k_max <= 5:
        raise ValidationError(f"the sign predicates are evaluated for 3 <= k_max <= 5, got {k_max}")
    predicate_labels = {}
    for mode in PREDICATE_MODES:
        groups = {k: group_from_sign_predicate(mode, k) for k in range(1, k_max + 1)}
        predicate_labels[mode] = _uniform_label(groups)
    column_labels = [predicate_labels[ONE_BLOCK], predicate_labels[PAIR_COARSENINGS],
                     predicate_labels[ALL_COARSENINGS]]
    row_labels = [predicate_labels[ALL_COARSENINGS], predicate_labels[PAIR_COARSENINGS],
                  predicate_labels[ONE_BLOCK]]

    table = {}
    for index, name in enumerate(NINE_SPHERES):
        row, column = divmod(index, 3)
        untwisted = SphereRelations.of_labels(column_labels[column], TRIVIAL)
        twisted = SphereRelations.of_labels(TRIVIAL, row_labels[row])
        if untwisted is None or twisted is None:
            g_label = h_label = UNKNOWN
        else:
            g_label, h_label = untwisted.intersect(twisted).labels(k_max)
        expected = NINE_SPHERES[name]
        table[name] = {"G": g_label, "H": h_label, "expected": expected,
                       "match": (g_label, h_label) == expected}
    return table
