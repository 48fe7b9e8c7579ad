"""Four-step construction of an independent broadcast of cost beta*.

Step 1 gives every leaf and every trunk value 1.  Step 2 doubles the leaf of
single-leaf stems flanked by stems (or spine ends).  Steps 3 and 4 rewrite
the alternating stem/trunk stretches found by the pattern engine.  Stems
never broadcast, and the first pendant leaf of a stem carries any value
larger than one.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import patterns as pat
from .broadcast import Broadcast, canonical_broadcast
from .formula import _check_variant, require_supported
from .tree import Caterpillar


@dataclass(frozen=True)
class Rewrite:
    step: int
    family: str
    start: int
    end: int
    delta: int


@dataclass(frozen=True)
class ConstructionTrace:
    f1: Broadcast
    f2: Broadcast
    f3: Broadcast
    f4: Broadcast
    rewrites: tuple[Rewrite, ...]

    @property
    def steps(self) -> tuple[Broadcast, Broadcast, Broadcast, Broadcast]:
        return (self.f1, self.f2, self.f3, self.f4)

    @property
    def costs(self) -> tuple[int, int, int, int]:
        return tuple(b.cost for b in self.steps)  # type: ignore[return-value]


def _set_stem(values: list[int], ct: Caterpillar, i: int, first: int) -> None:
    """First pendant leaf of ``v_i`` gets ``first``, the others 0."""
    leaves = ct.leaves_of(i)
    values[leaves[0]] = first
    for leaf in leaves[1:]:
        values[leaf] = 0


def step1(ct: Caterpillar) -> Broadcast:
    require_supported(ct)
    values = [0] * ct.vertex_count
    for i, lam in enumerate(ct.lambdas):
        if lam == 0:
            values[i] = 1
        for leaf in ct.leaves_of(i):
            values[leaf] = 1
    return Broadcast(tuple(values))


def step2(ct: Caterpillar, f1: Broadcast) -> Broadcast:
    return f1.replace({ct.leaf(i, 1): 2 for i in pat.single_stem_centers(ct)})


def _step3(ct: Caterpillar, f2: Broadcast) -> tuple[Broadcast, list[Rewrite]]:
    values = list(f2.values)
    lam = ct.lambdas
    rewrites = []
    for m in pat.formula_occurrences(ct)["alternating"]:
        if pat.single_leaf_stems(ct, m, "interior") == 0:
            continue
        before = sum(values)
        first, last = m.start + 1, m.end - 1
        for i in (first, last):
            if lam[i] == 1:
                values[ct.leaf(i, 1)] = 2
        for i in range(first + 2, last, 2):
            _set_stem(values, ct, i, 3)
        for i in range(first + 1, last, 2):
            values[i] = 0
        rewrites.append(Rewrite(3, "alternating", m.start, m.end, sum(values) - before))
    return Broadcast(tuple(values)), rewrites


def step3(ct: Caterpillar, f2: Broadcast) -> Broadcast:
    return _step3(ct, f2)[0]


def _zero_alternating_rewrite(values: list[int], ct: Caterpillar, m: pat.Occurrence) -> None:
    for i in m.span:
        if ct.lambdas[i] == 0:
            values[i] = 0
        else:
            _set_stem(values, ct, i, 3)


def _step4(ct: Caterpillar, f3: Broadcast) -> tuple[Broadcast, list[Rewrite]]:
    values = list(f3.values)
    rewrites = []
    occ = pat.formula_occurrences(ct)
    for m in occ["internal"]:
        if pat.single_leaf_stems(ct, m) == 0:
            continue
        before = sum(values)
        _zero_alternating_rewrite(values, ct, m)
        rewrites.append(Rewrite(4, "internal", m.start, m.end, sum(values) - before))
    whole = pat.is_whole_alternating(ct)
    for family in ("left", "right"):
        if family == "right" and whole:
            continue
        for m in occ[family]:
            before = sum(values)
            _zero_alternating_rewrite(values, ct, m)
            rewrites.append(Rewrite(4, family, m.start, m.end, sum(values) - before))
    return Broadcast(tuple(values)), rewrites


def step4(ct: Caterpillar, f3: Broadcast, variant: str = "effective") -> Broadcast:
    """Rewrite the trunk-bounded alternating stretches.

    Only the ``effective`` accounting has a matching construction, so the
    result is the same for both variants.
    """
    _check_variant(variant)
    return _step4(ct, f3)[0]


def construction_trace(ct: Caterpillar) -> ConstructionTrace:
    f1 = step1(ct)
    f2 = step2(ct, f1)
    f3, r3 = _step3(ct, f2)
    f4, r4 = _step4(ct, f3)
    r2 = [Rewrite(2, "singles", i, i, 1) for i in pat.single_stem_centers(ct)]
    return ConstructionTrace(f1, f2, f3, f4, tuple(r2 + r3 + r4))


@dataclass(frozen=True)
class Witness:
    broadcast: Broadcast
    source: str  # "canonical" or "constructed"
    trace: ConstructionTrace

    @property
    def cost(self) -> int:
        return self.broadcast.cost


def construct_witness(ct: Caterpillar, variant: str = "effective") -> Witness:
    """The costlier of the canonical broadcast and the step-4 broadcast (canonical on ties)."""
    _check_variant(variant)
    trace = construction_trace(ct)
    fc = canonical_broadcast(ct)
    if trace.f4.cost > fc.cost:
        return Witness(trace.f4, "constructed", trace)
    return Witness(fc, "canonical", trace)
