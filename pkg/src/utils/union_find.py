"""
Union-find over hashable keys.

Used wherever labels or polyhedron edges have to be merged: crossing labels along bigon
chains, polyhedron sides across bigons, and triangulation edge classes.
"""

from typing import Dict, Hashable, Iterable, List


class UnionFind:
    """Disjoint sets with path halving and deterministic roots (the first key added wins)."""

    def __init__(self, keys: Iterable[Hashable] = ()):
        self._parent: Dict[Hashable, Hashable] = {}
        self._order: Dict[Hashable, int] = {}
        for key in keys:
            self.add(key)

    def add(self, key: Hashable) -> None:
        if key not in self._parent:
            self._parent[key] = key
            self._order[key] = len(self._order)

    def find(self, key: Hashable) -> Hashable:
        self.add(key)
        parent = self._parent
        while parent[key] != key:
            parent[key] = parent[parent[key]]
            key = parent[key]
        return key

    def union(self, a: Hashable, b: Hashable) -> Hashable:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        # keep the older key as root so class ids do not depend on union order
        if self._order[rb] < self._order[ra]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        return ra

    def same(self, a: Hashable, b: Hashable) -> bool:
        return self.find(a) == self.find(b)

    def classes(self) -> List[List[Hashable]]:
        """All classes, each in insertion order, ordered by their root's insertion."""
        groups: Dict[Hashable, List[Hashable]] = {}
        for key in sorted(self._parent, key=self._order.__getitem__):
            groups.setdefault(self.find(key), []).append(key)
        return [groups[root] for root in sorted(groups, key=self._order.__getitem__)]

    def __contains__(self, key: Hashable) -> bool:
        return key in self._parent

    def __len__(self) -> int:
        return len(self._parent)

    def __repr__(self) -> str:
        return f"UnionFind(keys={len(self._parent)}, classes={len(self.classes())})"
