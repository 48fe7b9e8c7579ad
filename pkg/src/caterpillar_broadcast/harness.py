"""Instance generation and the formula / constructor / oracle cross-validation sweep."""

from __future__ import annotations

import csv
import hashlib
import io
import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Iterator, Sequence

import networkx as nx

from . import patterns as pat
from .broadcast import Broadcast, is_independent, is_valid_broadcast, saturate_stems
from .construct import construct_witness
from .errors import BudgetExceededError, ValidationError
from .formula import beta_b, beta_b_fastpath, beta_star
from .oracle import OracleOptions, candidate_vertices, exact_beta_b
from .tree import Caterpillar, Tree, has_adjacent_trunks

EXIT_CLEAN = 0
EXIT_FINDINGS = 5
EXIT_VIOLATION = 4

# shapes the formula has no term for; used to tag formula/oracle findings
_SUSPECT_PATTERNS = {
    "left_anchored_stem_run": pat.parse_pattern("[2-(02-)+1+"),
    "right_anchored_stem_run": pat.parse_pattern("1+(2-0)+2-]"),
}


@dataclass(frozen=True)
class SweepParams:
    k_min: int = 1
    k_max: int = 6
    lambda_cap: int = 3
    leaf_cap: int = 9
    no_adjacent_trunks: bool = True
    canonicalize: bool = True
    oracle_budget: int = 12
    workers: int = 1

    def __post_init__(self) -> None:
        if self.k_min < 1 or self.k_max < self.k_min:
            raise ValidationError("need 1 <= k_min <= k_max")
        if self.lambda_cap < 1 or self.leaf_cap < 2:
            raise ValidationError("lambda_cap must be >= 1 and leaf_cap >= 2")
        if self.oracle_budget < 1 or self.workers < 1:
            raise ValidationError("oracle_budget and workers must be positive")


def enumerate_caterpillars(p: SweepParams) -> Iterator[Caterpillar]:
    """All admissible pendant-count sequences, by length then lexicographically."""
    for k in range(p.k_min, p.k_max + 1):
        end = range(1, p.lambda_cap + 1)
        inner = range(0, p.lambda_cap + 1)
        for lam in itertools.product(end, *([inner] * (k - 1)), end):
            if sum(lam) > p.leaf_cap:
                continue
            if p.canonicalize and lam[::-1] < lam:
                continue
            ct = Caterpillar(lam)
            if p.no_adjacent_trunks and has_adjacent_trunks(ct):
                continue
            yield ct


def random_tree(n: int, seed: int) -> Tree:
    """Uniform labelled tree on ``n`` vertices from a seeded Prüfer sequence."""
    if n < 2:
        raise ValidationError("random_tree needs n >= 2")
    if n == 2:
        return Tree(2, ((0, 1),))
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    g = nx.from_prufer_sequence(seq)
    return Tree.from_edges(n, g.edges())


def digest(b: Broadcast) -> str:
    return hashlib.sha256(json.dumps(b.values).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class SweepRecord:
    index: int
    lambdas: tuple[int, ...]
    k: int
    vertex_count: int
    canonical_cost: int
    supported: bool  # False for caterpillars with adjacent trunks
    beta_star_as_written: int | None
    beta_star_effective: int | None
    beta_b_as_written: int | None
    beta_b_effective: int | None
    source: str | None
    constructor_cost: int | None
    constructor_valid: bool | None
    constructor_independent: bool | None
    trace_consistent: bool | None
    oracle_status: str  # "ok" or "budget_exceeded"
    oracle: int | None
    oracle_candidates: int
    fastpath_value: int | None
    fastpath_rule: str | None
    effective_matches_oracle: bool | None
    as_written_matches_oracle: bool | None
    fastpath_matches_effective: bool | None
    fastpath_matches_oracle: bool | None
    constructor_sound: bool | None
    reversal_invariant: bool
    overlap_violations: int
    witness_digest: str | None
    oracle_witness_digest: str | None
    findings: tuple[str, ...] = field(default=())

    @property
    def invariant_violation(self) -> bool:
        if self.oracle is not None and self.oracle < self.canonical_cost:
            return True
        if not self.supported:
            return False
        return not (
            self.constructor_valid
            and self.constructor_independent
            and self.trace_consistent
            and self.constructor_cost == max(self.canonical_cost, self.beta_star_effective)
            and self.constructor_sound is not False
            and self.reversal_invariant
        )

    def as_dict(self) -> dict:
        d = asdict(self)
        d["lambdas"] = list(self.lambdas)
        d["findings"] = list(self.findings)
        return d


def _trace_consistent(ct: Caterpillar, witness) -> bool:
    """Per-step cost deltas equal the matching formula terms."""
    bd = beta_star(ct, "effective")
    c1, c2, c3, c4 = witness.trace.costs
    return (
        c1 == bd.lambda_total + bd.tau
        and c2 - c1 == bd.singles_term
        and c3 - c2 == bd.alpha1_term
        and c4 - c3 == bd.alpha2_internal_term + bd.alpha2_left_term + bd.alpha2_right_term
        and all(is_valid_broadcast(ct.tree, f) and is_independent(ct.tree, f) for f in witness.trace.steps)
    )


def evaluate_instance(index: int, ct: Caterpillar, oracle_budget: int = 12) -> SweepRecord:
    t = ct.tree
    supported = not has_adjacent_trunks(ct)
    fp = beta_b_fastpath(ct)

    try:
        res = exact_beta_b(t, OracleOptions(max_candidates=oracle_budget))
        oracle, status, cands = res.optimum, "ok", res.candidates
        oracle_digest = digest(res.witness)
    except BudgetExceededError:
        oracle, status, oracle_digest = None, "budget_exceeded", None
        cands = len(candidate_vertices(t))

    findings = []
    formula: dict = dict.fromkeys(
        ("beta_star_as_written", "beta_star_effective", "beta_b_as_written", "beta_b_effective",
         "source", "constructor_cost", "constructor_valid", "constructor_independent",
         "trace_consistent", "witness_digest", "effective_matches_oracle",
         "as_written_matches_oracle", "fastpath_matches_effective", "constructor_sound")
    )
    reversal_ok = True
    overlaps = 0
    if supported:
        eff = beta_b(ct, "effective")
        asw = beta_b(ct, "as_written")
        w = construct_witness(ct)
        valid = is_valid_broadcast(t, w.broadcast)
        rev = ct.reversed()
        reversal_ok = (
            beta_b(rev, "effective").value == eff.value
            and beta_b(rev, "as_written").value == asw.value
            and construct_witness(rev).cost == w.cost
        )
        formula.update(
            beta_star_as_written=asw.breakdown.value,
            beta_star_effective=eff.breakdown.value,
            beta_b_as_written=asw.value,
            beta_b_effective=eff.value,
            source=eff.source,
            constructor_cost=w.cost,
            constructor_valid=valid,
            constructor_independent=valid and is_independent(t, w.broadcast),
            trace_consistent=_trace_consistent(ct, w),
            witness_digest=digest(w.broadcast),
            fastpath_matches_effective=None if fp is None else fp[0] == eff.value,
        )
        if oracle is not None:
            formula.update(
                effective_matches_oracle=eff.value == oracle,
                as_written_matches_oracle=asw.value == oracle,
                constructor_sound=w.cost <= oracle,
            )
            if eff.value != oracle:
                findings.append("effective_below_oracle" if eff.value < oracle else "effective_above_oracle")
                findings += [tag for tag, p in _SUSPECT_PATTERNS.items() if pat.count_occurrences(ct, p)]
            if asw.value != oracle:
                findings.append("as_written_mismatch")
        if fp is not None and fp[0] != eff.value:
            findings.append("fastpath_mismatch")
        overlaps = len(pat.check_overlaps(ct).violations)
        if overlaps:
            findings.append("overlap")
    fp_oracle = None if fp is None or oracle is None else fp[0] == oracle
    if fp_oracle is False and "fastpath_mismatch" not in findings:
        findings.append("fastpath_mismatch")

    return SweepRecord(
        index=index,
        lambdas=ct.lambdas,
        k=ct.k,
        vertex_count=t.vertex_count,
        canonical_cost=2 * (ct.k + 1),
        supported=supported,
        oracle_status=status,
        oracle=oracle,
        oracle_candidates=cands,
        fastpath_value=None if fp is None else fp[0],
        fastpath_rule=None if fp is None else fp[1],
        fastpath_matches_oracle=fp_oracle,
        reversal_invariant=reversal_ok,
        overlap_violations=overlaps,
        oracle_witness_digest=oracle_digest,
        findings=tuple(findings),
        **formula,
    )


def _evaluate_packed(args: tuple[int, tuple[int, ...], int]) -> SweepRecord:
    index, lam, budget = args
    return evaluate_instance(index, Caterpillar(lam), budget)


@dataclass(frozen=True)
class SweepSummary:
    instances: int
    oracle_evaluated: int
    budget_exceeded: int
    effective_mismatches: int
    as_written_mismatches: int
    fastpath_checked: int
    fastpath_mismatches: int
    overlap_findings: int
    invariant_violations: int

    @property
    def status(self) -> str:
        if self.invariant_violations:
            return "violation"
        if self.effective_mismatches or self.fastpath_mismatches or self.overlap_findings:
            return "findings"
        return "clean"

    @property
    def exit_code(self) -> int:
        return {"clean": EXIT_CLEAN, "findings": EXIT_FINDINGS, "violation": EXIT_VIOLATION}[self.status]

    def as_text(self) -> str:
        lines = [f"status: {self.status}"]
        lines += [f"{k}: {v}" for k, v in asdict(self).items()]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SweepResult:
    params: SweepParams
    records: tuple[SweepRecord, ...]
    summary: SweepSummary

    @property
    def findings(self) -> list[SweepRecord]:
        return [r for r in self.records if r.findings]


def summarize(records: Sequence[SweepRecord]) -> SweepSummary:
    return SweepSummary(
        instances=len(records),
        oracle_evaluated=sum(r.oracle is not None for r in records),
        budget_exceeded=sum(r.oracle_status == "budget_exceeded" for r in records),
        effective_mismatches=sum(r.effective_matches_oracle is False for r in records),
        as_written_mismatches=sum(r.as_written_matches_oracle is False for r in records),
        fastpath_checked=sum(r.fastpath_value is not None for r in records),
        fastpath_mismatches=sum(
            r.fastpath_matches_effective is False or r.fastpath_matches_oracle is False for r in records
        ),
        overlap_findings=sum(r.overlap_violations > 0 for r in records),
        invariant_violations=sum(r.invariant_violation for r in records),
    )


def evaluate_all(cts: Iterable[Caterpillar], oracle_budget: int = 12, workers: int = 1) -> list[SweepRecord]:
    jobs = [(i, ct.lambdas, oracle_budget) for i, ct in enumerate(cts)]
    if workers == 1:
        return [_evaluate_packed(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map yields in submission order, so output order is deterministic
        return list(pool.map(_evaluate_packed, jobs, chunksize=16))


def sweep(p: SweepParams) -> SweepResult:
    records = evaluate_all(enumerate_caterpillars(p), p.oracle_budget, p.workers)
    return SweepResult(p, tuple(records), summarize(records))


# ------------------------------------------------------------------ output

CSV_COLUMNS = (
    "index", "lambdas", "k", "canonical_cost", "beta_star_as_written", "beta_star_effective",
    "beta_b_effective", "source", "constructor_cost", "oracle_status", "oracle",
    "fastpath_value", "fastpath_rule", "effective_matches_oracle",
    "as_written_matches_oracle", "findings",
)


def to_jsonl(records: Iterable[SweepRecord]) -> str:
    return "".join(json.dumps(r.as_dict(), separators=(",", ":")) + "\n" for r in records)


def to_csv(records: Iterable[SweepRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        d = r.as_dict()
        row = []
        for col in CSV_COLUMNS:
            val = d[col]
            if col == "lambdas":
                val = ",".join(map(str, val))
            elif col == "findings":
                val = ";".join(val)
            elif val is None:
                val = ""
            row.append(val)
        writer.writerow(row)
    return buf.getvalue()


# ------------------------------------------------------------- diagnostics

@dataclass(frozen=True)
class StructuralCheck:
    lambdas: tuple[int, ...]
    optimum: int
    stems_zero: bool
    end_leaves_positive: bool
    max_trunk_value: int

    @property
    def ok(self) -> bool:
        return self.stems_zero and self.end_leaves_positive


def structural_diagnostics(
    instances: Iterable[Caterpillar | SweepRecord], oracle_budget: int = 16
) -> list[StructuralCheck]:
    """Check stem and end-leaf properties on one oracle optimum per instance.

    The optimum is first saturated with stem-to-leaf moves; an optimum can
    never gain from them, so its cost is unchanged.
    """
    out = []
    for item in instances:
        ct = item if isinstance(item, Caterpillar) else Caterpillar(item.lambdas)
        t = ct.tree
        res = exact_beta_b(t, OracleOptions(max_candidates=oracle_budget))
        f = saturate_stems(t, res.witness)
        stems = [i for i in range(ct.k + 1) if ct.lambdas[i] > 0]
        trunks = [i for i in range(ct.k + 1) if ct.lambdas[i] == 0]
        ends = all(sum(f[leaf] for leaf in ct.leaves_of(i)) > 0 for i in (0, ct.k))
        out.append(
            StructuralCheck(
                lambdas=ct.lambdas,
                optimum=res.optimum,
                stems_zero=all(f[i] == 0 for i in stems) and f.cost == res.optimum,
                end_leaves_positive=ends,
                max_trunk_value=max((f[i] for i in trunks), default=0),
            )
        )
    return out
