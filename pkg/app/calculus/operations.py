"""app/calculus/operations.py
This module defines the `DiagramOperations` class, which provides staticmethods for the categorical
operations on two-row partitions: horizontal concatenation (tensor), vertical concatenation
(composition), upside-down turning (involution), rotation of a leg between rows, and capping of
two neighboring legs. All of them return new Partition objects; loop counts are returned alongside
compositions because they become powers of N in the associated linear maps.
"""
from typing import Tuple

from app.calculus.exceptions import ValidationError
from app.calculus.partitions import Partition
from app.calculus.union_find import UnionFind

LOWER_TO_UPPER = "lower_to_upper"
UPPER_TO_LOWER = "upper_to_lower"


class DiagramOperations:
    """
    Class to perform the category operations on partitions.

    Operations include tensor, composition, involution, rotation and capping, with the
    semicircles and identity strings available as factories.
    """

    @staticmethod
    def identity(k: int) -> Partition:
        """The diagram of k vertical strings, shape (k, k)."""
        return Partition(k, k, [(t, k + t) for t in range(k)])

    @staticmethod
    def cap_diagram() -> Partition:
        """The semicircle with both legs on the lower row, shape (0, 2)."""
        return Partition(0, 2, [(0, 1)])

    @staticmethod
    def cup_diagram() -> Partition:
        """The semicircle with both legs on the upper row, shape (2, 0)."""
        return Partition(2, 0, [(0, 1)])

    @staticmethod
    def tensor(pi: Partition, sigma: Partition) -> Partition:
        """
        Horizontal concatenation [pi sigma].

        Parameters:
        - pi (Partition): left diagram, shape (k1, l1).
        - sigma (Partition): right diagram, shape (k2, l2).

        Returns:
        - Partition: shape (k1 + k2, l1 + l2).
        """
        k1, l1 = pi.shape
        k2, l2 = sigma.shape
        upper = k1 + k2

        def left(leg: int) -> int:
            return leg if leg < k1 else upper + (leg - k1)

        def right(leg: int) -> int:
            return k1 + leg if leg < k2 else upper + l1 + (leg - k2)

        blocks = [[left(leg) for leg in block] for block in pi.blocks]
        blocks += [[right(leg) for leg in block] for block in sigma.blocks]
        return Partition(upper, l1 + l2, blocks)

    @staticmethod
    def composition(pi: Partition, sigma: Partition) -> Tuple[Partition, int]:
        """
        Vertical concatenation: sigma (m -> k) stacked above pi (k -> l).

        The lower row of sigma is glued to the upper row of pi. Components that only touch the
        glued middle row are closed loops; they are deleted and counted.

        Raises:
        - ValidationError: If the lower row of sigma and the upper row of pi differ in length.

        Returns:
        - Tuple[Partition, int]: the composed diagram of shape (m, l) and the loop count.
        """
        m, k = sigma.shape
        k_pi, l = pi.shape
        if k != k_pi:
            raise ValidationError(
                f"cannot compose: lower row of {sigma} has {k} legs, upper row of {pi} has {k_pi}")
        offset = m + k
        forest = UnionFind(offset + k + l)
        for block in sigma.blocks:
            for leg in block[1:]:
                forest.union(block[0], leg)
        for block in pi.blocks:
            for leg in block[1:]:
                forest.union(offset + block[0], offset + leg)
        for j in range(k):
            forest.union(m + j, offset + j)

        # sigma upper legs keep their numbers, pi lower legs follow them
        outer = {u: u for u in range(m)}
        outer.update({offset + k + j: m + j for j in range(l)})
        blocks, loops = [], 0
        for group in forest.classes():
            legs = [outer[node] for node in group if node in outer]
            if legs:
                blocks.append(legs)
            else:
                loops += 1
        return Partition(m, l, blocks), loops

    @staticmethod
    def involution(pi: Partition) -> Partition:
        """Upside-down turning: shape (k, l) becomes (l, k)."""
        k, l = pi.shape

        def flip(leg: int) -> int:
            return l + leg if leg < k else leg - k

        return Partition(l, k, [[flip(leg) for leg in block] for block in pi.blocks])

    @staticmethod
    def rotate(pi: Partition, direction: str = LOWER_TO_UPPER) -> Partition:
        """
        Move one leg between the rows, keeping the cyclic order of all legs.

        The default direction moves the rightmost lower leg to the rightmost upper position,
        which leaves the linearization unchanged. The reverse direction moves the leftmost upper
        leg to the leftmost lower position, a cyclic shift of the linearization.

        Raises:
        - ValidationError: If the source row is empty or the direction is unknown.
        """
        k, l = pi.shape
        if direction == LOWER_TO_UPPER:
            if l == 0:
                raise ValidationError(f"cannot rotate {pi}: the lower row is empty")

            def move(leg: int) -> int:
                if leg < k:
                    return leg
                if leg == k + l - 1:
                    return k
                return leg + 1

            return Partition(k + 1, l - 1, [[move(leg) for leg in block] for block in pi.blocks])
        if direction == UPPER_TO_LOWER:
            if k == 0:
                raise ValidationError(f"cannot rotate {pi}: the upper row is empty")

            def move(leg: int) -> int:
                if leg == 0:
                    return k - 1
                if leg < k:
                    return leg - 1
                return leg

            return Partition(k - 1, l + 1, [[move(leg) for leg in block] for block in pi.blocks])
        raise ValidationError(f"unknown rotation direction '{direction}'")

    @staticmethod
    def cap(pi: Partition, i: int) -> Partition:
        """
        Join the legs at 1-based cyclic linear positions i and i+1 and contract them.

        The blocks of the two legs are merged and both legs are removed, giving a partition on two
        fewer points; each remaining leg stays in its row. A block made only of the two capped legs
        disappears.

        Raises:
        - ValidationError: If the partition has fewer than two legs or i is out of range.
        """
        n = pi.size
        if n < 2 or not 1 <= i <= n:
            raise ValidationError(f"cannot cap {pi} at position {i}")
        order = pi.linearization
        first, second = order[i - 1], order[i % n]
        removed = {first, second}
        owner = pi.block_index
        merged_ids = {owner[first], owner[second]}

        k, l = pi.shape
        kept = [leg for leg in range(n) if leg not in removed]
        renumber = {leg: new for new, leg in enumerate(kept)}
        upper = sum(1 for leg in kept if leg < k)

        blocks, merged = [], []
        for index, block in enumerate(pi.blocks):
            legs = [renumber[leg] for leg in block if leg not in removed]
            if index in merged_ids:
                merged.extend(legs)
            else:
                blocks.append(legs)
        if merged:
            blocks.append(merged)
        return Partition(upper, len(kept) - upper, blocks)
