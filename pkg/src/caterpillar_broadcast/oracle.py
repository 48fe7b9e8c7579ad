"""Exact broadcast independence numbers for small trees.

``exact_beta_b`` searches vertex subsets: every maximal independent broadcast
with two or more broadcasting vertices gives each of them its distance to
the nearest other broadcaster minus one, so it suffices to maximise
``sum(min(e(v), dmin(v) - 1))`` over subsets with pairwise distance >= 2,
next to the single-vertex broadcasts ``f(v) = e(v)``.

``naive_beta_b`` enumerates assignments straight from the definition and is
only meant for cross-checking the subset search on tiny trees.
"""

from __future__ import annotations

from dataclasses import dataclass

from .broadcast import Broadcast
from .errors import BudgetExceededError
from .tree import Tree

DEFAULT_MAX_CANDIDATES = 26
DEFAULT_NAIVE_CAP = 8


@dataclass(frozen=True)
class OracleOptions:
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    prune_support_vertices: bool = True


@dataclass(frozen=True)
class OracleResult:
    optimum: int
    witness: Broadcast
    subsets_examined: int
    pruned: int
    candidates: int


def candidate_vertices(t: Tree, prune_support_vertices: bool = True) -> list[int]:
    """Possible broadcasters, by decreasing eccentricity then index.

    Support vertices never broadcast in an optimum: moving their value to a
    pendant leaf and adding one keeps the broadcast independent.
    """
    excluded = t.support_vertices if prune_support_vertices else frozenset()
    ecc = t.eccentricities
    return sorted((v for v in range(t.vertex_count) if v not in excluded), key=lambda v: (-ecc[v], v))


def exact_beta_b(t: Tree, options: OracleOptions | None = None) -> OracleResult:
    opts = options or OracleOptions()
    n = t.vertex_count
    ecc = t.eccentricities
    dist = t.distances
    if n == 1:
        return OracleResult(0, Broadcast.zeros(1), 0, 0, 1)

    cands = candidate_vertices(t, opts.prune_support_vertices)
    if len(cands) > opts.max_candidates:
        raise BudgetExceededError(
            f"{len(cands)} candidate vertices exceed the budget of {opts.max_candidates}"
        )

    # single broadcaster at full eccentricity
    best_val = max(ecc)
    best_key: tuple[int, ...] = (min(v for v in range(n) if ecc[v] == best_val),)
    examined = 0
    pruned = 0
    m = len(cands)
    chosen: list[int] = []
    dmin: list[int] = []  # nearest other chosen vertex, per chosen vertex

    def value_of() -> int:
        return sum(min(ecc[v], d - 1) for v, d in zip(chosen, dmin))

    def search(i: int) -> None:
        nonlocal best_val, best_key, examined, pruned
        examined += 1
        if len(chosen) >= 2:
            val = value_of()
            key = tuple(sorted(chosen))
            if val > best_val or (val == best_val and key < best_key):
                best_val, best_key = val, key
        if i == m:
            return
        # admissible bound: chosen values only shrink as vertices are added,
        # and a later vertex is capped by its distance to the current set
        bound = value_of() if len(chosen) >= 2 else sum(ecc[v] for v in chosen)
        for w in cands[i:]:
            if chosen:
                dw = min(dist[w][u] for u in chosen)
                if dw >= 2:
                    bound += min(ecc[w], dw - 1)
            else:
                bound += ecc[w]
        if bound < best_val:
            pruned += 1
            return
        v = cands[i]
        dv = min((dist[v][u] for u in chosen), default=None)
        if dv is None or dv >= 2:
            saved = list(dmin)
            for idx, u in enumerate(chosen):
                if dist[v][u] < dmin[idx]:
                    dmin[idx] = dist[v][u]
            chosen.append(v)
            dmin.append(dv if dv is not None else 10**9)
            search(i + 1)
            chosen.pop()
            dmin[:] = saved
        search(i + 1)

    search(0)

    if len(best_key) == 1:
        witness = Broadcast.from_mapping(n, {best_key[0]: ecc[best_key[0]]})
    else:
        values = {}
        for v in best_key:
            d = min(dist[v][u] for u in best_key if u != v)
            values[v] = min(ecc[v], d - 1)
        witness = Broadcast.from_mapping(n, values)
    return OracleResult(best_val, witness, examined, pruned, len(cands))


def naive_beta_b(t: Tree, cap: int = DEFAULT_NAIVE_CAP) -> int:
    return naive_optimum(t, cap)[0]


def naive_optimum(t: Tree, cap: int = DEFAULT_NAIVE_CAP) -> tuple[int, Broadcast]:
    """Depth-first search over all assignments ``f(v) in 0..e(v)``."""
    n = t.vertex_count
    if n > cap:
        raise BudgetExceededError(f"naive oracle limited to {cap} vertices, tree has {n}")
    ecc = t.eccentricities
    dist = t.distances
    suffix_ecc = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        suffix_ecc[v] = suffix_ecc[v + 1] + ecc[v]
    values = [0] * n
    best = [-1, tuple(values)]

    def dfs(v: int, total: int) -> None:
        if total + suffix_ecc[v] <= best[0]:
            return
        if v == n:
            best[0], best[1] = total, tuple(values)
            return
        for x in range(ecc[v], -1, -1):
            if x and any(
                values[u] and dist[u][v] <= max(x, values[u]) for u in range(v)
            ):
                continue
            values[v] = x
            dfs(v + 1, total + x)
        values[v] = 0

    dfs(0, 0)
    return best[0], Broadcast(best[1])
