"""Trees, caterpillars and their distance metrics.

Vertices are dense 0-based integers.  For a caterpillar ``CT(l_0, ..., l_k)``
the spine vertices ``v_0 .. v_k`` come first (index ``i``), followed by the
pendant leaves grouped by spine index in ascending order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ValidationError


@dataclass(frozen=True)
class Tree:
    """An undirected tree on vertices ``0 .. vertex_count - 1``."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        n = self.vertex_count
        if not isinstance(n, int) or n < 1:
            raise ValidationError(f"vertex_count must be a positive integer, got {n!r}")
        normalized = []
        for edge in self.edges:
            u, v = edge
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge {edge!r} references a vertex outside 0..{n - 1}")
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            normalized.append((min(u, v), max(u, v)))
        normalized.sort()
        if len(set(normalized)) != len(normalized):
            raise ValidationError("duplicate edge")
        if len(normalized) != n - 1:
            raise ValidationError(f"a tree on {n} vertices needs {n - 1} edges, got {len(normalized)}")
        object.__setattr__(self, "edges", tuple(normalized))
        if self.names is not None and len(self.names) != n:
            raise ValidationError("names must have one entry per vertex")
        # connectivity: n-1 edges plus connected => tree
        if any(d < 0 for d in self.distances[0]):
            raise ValidationError("edges do not form a connected graph")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Tree":
        return cls(n, tuple((int(u), int(v)) for u, v in edges))

    @classmethod
    def path(cls, n: int) -> "Tree":
        """Path on ``n`` vertices (diameter ``n - 1``)."""
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def star(cls, leaves: int) -> "Tree":
        """``K_{1,leaves}`` with the center at index 0."""
        return cls(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))

    def name(self, v: int) -> str:
        return self.names[v] if self.names is not None else str(v)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def distances(self) -> tuple[tuple[int, ...], ...]:
        """All-pairs distances by one BFS per vertex; -1 marks unreachable."""
        adj = self.adjacency
        rows = []
        for s in range(self.vertex_count):
            dist = [-1] * self.vertex_count
            dist[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in adj[u]:
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        queue.append(w)
            rows.append(tuple(dist))
        return tuple(rows)

    @cached_property
    def eccentricities(self) -> tuple[int, ...]:
        return tuple(max(row) for row in self.distances)

    @property
    def diameter(self) -> int:
        return max(self.eccentricities)

    @property
    def radius(self) -> int:
        return min(self.eccentricities)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_leaf(self, v: int) -> bool:
        return self.degree(v) == 1

    @cached_property
    def support_vertices(self) -> frozenset[int]:
        """Non-leaf vertices adjacent to at least one leaf."""
        return frozenset(
            v
            for v in range(self.vertex_count)
            if not self.is_leaf(v) and any(self.is_leaf(w) for w in self.adjacency[v])
        )

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degree(v) for v in range(self.vertex_count)))


def all_pairs_distances(t: Tree) -> tuple[tuple[int, ...], ...]:
    return t.distances


def eccentricities(t: Tree) -> tuple[int, ...]:
    return t.eccentricities


def diameter(t: Tree) -> int:
    return t.diameter


def radius(t: Tree) -> int:
    return t.radius


@dataclass(frozen=True)
class Star:
    """``K_{1,n}``: the length-0 caterpillar, kept apart from :class:`Caterpillar`."""

    leaves: int

    def __post_init__(self) -> None:
        if not isinstance(self.leaves, int) or self.leaves < 1:
            raise ValidationError(f"a star needs at least one leaf, got {self.leaves!r}")

    def to_tree(self) -> Tree:
        names = ("v0",) + tuple(f"l0_{j}" for j in range(1, self.leaves + 1))
        return Tree(self.leaves + 1, Tree.star(self.leaves).edges, names)


@dataclass(frozen=True)
class SpineClassification:
    roles: tuple[str, ...]  # "stem" or "trunk" per spine index
    leaf_total: int
    trunk_count: int
    single_leaf_stems: int


@dataclass(frozen=True)
class Caterpillar:
    """``CT(l_0, ..., l_k)`` with ``k >= 1`` and stems at both spine ends."""

    lambdas: tuple[int, ...]

    def __post_init__(self) -> None:
        lam = tuple(self.lambdas)
        if any(not isinstance(x, int) or isinstance(x, bool) for x in lam):
            raise ValidationError(f"pendant counts must be integers: {lam!r}")
        if len(lam) < 2:
            raise ValidationError(
                "a caterpillar needs a spine of length k >= 1 (use Star for length 0)"
            )
        if any(x < 0 for x in lam):
            raise ValidationError(f"pendant counts must be non-negative: {lam!r}")
        if lam[0] < 1 or lam[-1] < 1:
            raise ValidationError(f"both spine ends must be stems (lambda_0, lambda_k >= 1): {lam!r}")
        object.__setattr__(self, "lambdas", lam)

    @classmethod
    def of(cls, *lambdas: int) -> "Caterpillar":
        return cls(tuple(lambdas))

    @classmethod
    def parse(cls, text: str) -> "Caterpillar":
        """Parse comma-separated pendant counts such as ``"1,0,2"``."""
        try:
            values = tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
        except ValueError as exc:
            raise ValidationError(f"cannot parse lambda sequence {text!r}") from exc
        return cls(values)

    def __str__(self) -> str:
        return "CT(" + ",".join(map(str, self.lambdas)) + ")"

    @property
    def k(self) -> int:
        return len(self.lambdas) - 1

    @property
    def diameter(self) -> int:
        return self.k + 2

    def reversed(self) -> "Caterpillar":
        return Caterpillar(self.lambdas[::-1])

    @cached_property
    def _leaf_offsets(self) -> tuple[int, ...]:
        offsets = []
        nxt = self.k + 1
        for lam in self.lambdas:
            offsets.append(nxt)
            nxt += lam
        return tuple(offsets)

    @property
    def vertex_count(self) -> int:
        return self.k + 1 + sum(self.lambdas)

    def spine(self, i: int) -> int:
        return i

    def leaf(self, i: int, j: int) -> int:
        """Index of the ``j``-th (1-based) pendant neighbour of ``v_i``."""
        if not 1 <= j <= self.lambdas[i]:
            raise ValidationError(f"v_{i} has no pendant neighbour number {j}")
        return self._leaf_offsets[i] + j - 1

    def leaves_of(self, i: int) -> range:
        start = self._leaf_offsets[i]
        return range(start, start + self.lambdas[i])

    def role(self, v: int) -> tuple[int, int]:
        """``(i, 0)`` for spine vertex ``v_i``, ``(i, j)`` for leaf ``l_i^j``."""
        if v <= self.k:
            return (v, 0)
        for i in range(self.k, -1, -1):
            if v >= self._leaf_offsets[i] and self.lambdas[i]:
                return (i, v - self._leaf_offsets[i] + 1)
        raise ValidationError(f"vertex {v} out of range")

    def vertex_name(self, v: int) -> str:
        i, j = self.role(v)
        return f"v{i}" if j == 0 else f"l{i}_{j}"

    @cached_property
    def tree(self) -> Tree:
        edges = [(i, i + 1) for i in range(self.k)]
        for i in range(self.k + 1):
            edges.extend((i, leaf) for leaf in self.leaves_of(i))
        names = tuple(self.vertex_name(v) for v in range(self.vertex_count))
        return Tree(self.vertex_count, tuple(edges), names)


def caterpillar_to_tree(ct: Caterpillar) -> Tree:
    return ct.tree


def classify_spine(ct: Caterpillar) -> SpineClassification:
    lam = ct.lambdas
    roles = tuple("stem" if x > 0 else "trunk" for x in lam)
    return SpineClassification(
        roles=roles,
        leaf_total=sum(lam),
        trunk_count=roles.count("trunk"),
        single_leaf_stems=sum(1 for x in lam if x == 1),
    )


def has_adjacent_trunks(ct: Caterpillar) -> bool:
    lam = ct.lambdas
    return any(lam[i] == 0 and lam[i + 1] == 0 for i in range(1, ct.k - 1))
