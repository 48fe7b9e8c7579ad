"""Broadcast semantics on trees: validity, independence, domination, maximality."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import ValidationError
from .tree import Caterpillar, Tree


@dataclass(frozen=True)
class Broadcast:
    """A value ``f(v) >= 0`` per vertex, stored densely by vertex index."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        vals = tuple(self.values)
        if any(not isinstance(x, int) or x < 0 for x in vals):
            raise ValidationError("broadcast values must be non-negative integers")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zeros(cls, n: int) -> "Broadcast":
        return cls((0,) * n)

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[int, int]) -> "Broadcast":
        vals = [0] * n
        for v, x in mapping.items():
            if not 0 <= v < n:
                raise ValidationError(f"vertex {v} out of range for {n} vertices")
            vals[v] = x
        return cls(tuple(vals))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, v: int) -> int:
        return self.values[v]

    def replace(self, updates: Mapping[int, int] | Iterable[tuple[int, int]]) -> "Broadcast":
        vals = list(self.values)
        items = updates.items() if isinstance(updates, Mapping) else updates
        for v, x in items:
            vals[v] = x
        return Broadcast(tuple(vals))

    @property
    def broadcasting(self) -> tuple[int, ...]:
        """The vertices with positive value."""
        return tuple(v for v, x in enumerate(self.values) if x > 0)

    @property
    def cost(self) -> int:
        return sum(self.values)


def cost(b: Broadcast) -> int:
    return b.cost


def _check_domain(t: Tree, b: Broadcast) -> None:
    if len(b) != t.vertex_count:
        raise ValidationError(
            f"broadcast has {len(b)} values but the tree has {t.vertex_count} vertices"
        )


def is_valid_broadcast(t: Tree, b: Broadcast) -> bool:
    _check_domain(t, b)
    ecc = t.eccentricities
    return all(x <= ecc[v] for v, x in enumerate(b.values))


def _independent(t: Tree, b: Broadcast) -> bool:
    dist = t.distances
    vs = b.broadcasting
    for a, u in enumerate(vs):
        for w in vs[a + 1 :]:
            if dist[u][w] <= max(b[u], b[w]):
                return False
    return True


def is_independent(t: Tree, b: Broadcast) -> bool:
    if not is_valid_broadcast(t, b):
        raise ValidationError("independence is only defined for valid broadcasts")
    return _independent(t, b)


def is_dominating(t: Tree, b: Broadcast) -> bool:
    if not is_valid_broadcast(t, b):
        raise ValidationError("domination is only defined for valid broadcasts")
    dist = t.distances
    senders = b.broadcasting
    return all(
        any(dist[u][v] <= b[u] for u in senders) for v in range(t.vertex_count)
    )


def is_maximal_independent(t: Tree, b: Broadcast) -> bool:
    """Maximal iff no value can be raised and no vertex can be added.

    A single broadcaster must use its full eccentricity; otherwise the
    broadcast must dominate and each broadcaster reaches exactly one short
    of its nearest fellow broadcaster.
    """
    if not is_independent(t, b):
        raise ValidationError("maximality is only defined for independent broadcasts")
    senders = b.broadcasting
    if not senders:
        return False
    if len(senders) == 1:
        (v,) = senders
        return b[v] == t.eccentricities[v]
    if not is_dominating(t, b):
        return False
    dist = t.distances
    return all(
        b[v] == min(dist[v][u] for u in senders if u != v) - 1 for v in senders
    )


def spine_weights(ct: Caterpillar, b: Broadcast) -> tuple[int, ...]:
    """``f*(v_i)``: value of ``v_i`` plus the values of its pendant leaves."""
    _check_domain(ct.tree, b)
    return tuple(
        b[i] + sum(b[leaf] for leaf in ct.leaves_of(i)) for i in range(ct.k + 1)
    )


def canonical_broadcast(ct: Caterpillar) -> Broadcast:
    """Value ``k + 1`` on the first pendant leaf of each spine end."""
    n = ct.vertex_count
    return Broadcast.from_mapping(n, {ct.leaf(0, 1): ct.k + 1, ct.leaf(ct.k, 1): ct.k + 1})


def improve_stem_once(t: Tree, b: Broadcast) -> Broadcast | None:
    """Move a support vertex's value onto its lowest pendant leaf, plus one.

    Returns ``None`` when no support vertex broadcasts.  The result is valid
    and independent with cost one higher whenever ``b`` was.
    """
    for v in sorted(t.support_vertices):
        if b[v] > 0:
            leaf = min(w for w in t.adjacency[v] if t.is_leaf(w))
            return b.replace({v: 0, leaf: b[v] + 1})
    return None


def saturate_stems(t: Tree, b: Broadcast) -> Broadcast:
    """Apply :func:`improve_stem_once` until no support vertex broadcasts."""
    while (nxt := improve_stem_once(t, b)) is not None:
        b = nxt
    return b


def restrict(b: Broadcast, vertices: Iterable[int]) -> Broadcast:
    """Restriction of ``b`` to ``vertices`` (re-indexed in the given order)."""
    return Broadcast(tuple(b[v] for v in vertices))
