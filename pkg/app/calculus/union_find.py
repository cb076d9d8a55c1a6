"""app/calculus/union_find.py
Disjoint-set forest over the integers 0..n-1 with path compression and union by size.
Used for joins of partitions and for gluing diagrams along a shared row.
"""
from typing import Dict, List


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        """Merge the classes of x and y. Returns False if they were already merged."""
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]
        return True

    def classes(self) -> List[List[int]]:
        """All classes, each sorted, ordered by their smallest element."""
        groups: Dict[int, List[int]] = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return sorted(groups.values(), key=lambda group: group[0])
