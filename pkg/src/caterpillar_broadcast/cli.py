"""Command-line interface.

Exit codes: 0 success, 1 usage or validation error, 2 unsupported instance
class, 3 resource budget exceeded, 4 internal invariant violation.  ``sweep``
additionally exits 5 when it found formula/oracle disagreements.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import documents as docs
from . import harness
from . import patterns as pat
from .broadcast import (
    canonical_broadcast,
    is_dominating,
    is_independent,
    is_maximal_independent,
    is_valid_broadcast,
)
from .construct import construct_witness
from .errors import (
    BroadcastToolkitError,
    InvariantViolation,
    UnsupportedInstanceError,
    ValidationError,
)
from .formula import beta_b, beta_b_fastpath
from .oracle import DEFAULT_MAX_CANDIDATES, OracleOptions, exact_beta_b, naive_optimum
from .tree import Caterpillar, Star, Tree

EXIT_UNSUPPORTED = 2


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--lambdas", help="comma-separated pendant counts, e.g. 1,0,2")
    g.add_argument("--star", type=int, metavar="N", help="the star K1,N")
    g.add_argument("--path", type=int, metavar="N", help="the path on N vertices")
    g.add_argument("--instance", metavar="FILE", help="InstanceDocument JSON file")


def _instance(args: argparse.Namespace) -> docs.Instance:
    if args.lambdas is not None:
        return Caterpillar.parse(args.lambdas)
    if args.star is not None:
        return Star(args.star)
    if args.path is not None:
        if args.path >= 4:
            # P_n is the caterpillar with n-2 spine vertices and one leaf at each end
            return Caterpillar((1,) + (0,) * (args.path - 4) + (1,))
        return Tree.path(args.path)
    return docs.load_instance(args.instance)


def _caterpillar(inst: docs.Instance, command: str) -> Caterpillar:
    if not isinstance(inst, Caterpillar):
        raise UnsupportedInstanceError(
            f"`{command}` needs a caterpillar given by its pendant counts", "not_caterpillar"
        )
    return inst


def _emit_json(obj) -> None:
    sys.stdout.write(docs.dumps(obj))


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_broadcast(t: Tree, path: str):
    try:
        doc = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from exc
    return docs.broadcast_from_document(t, doc)


# ------------------------------------------------------------------ commands

def cmd_beta(args: argparse.Namespace) -> int:
    inst = _instance(args)
    try:
        if isinstance(inst, Star):
            raise UnsupportedInstanceError("stars have no caterpillar formula", "not_caterpillar")
        ct = _caterpillar(inst, "beta")
        res = beta_b(ct, args.variant)
    except UnsupportedInstanceError as exc:
        fast = beta_b_fastpath(inst) if isinstance(inst, (Caterpillar, Star)) else None
        report = {
            "instance": docs.describe(inst),
            "supported": False,
            "reason": exc.reason,
            "suggestion": "oracle",
            "fastpath": None if fast is None else {"value": fast[0], "rule": fast[1]},
        }
        if args.json:
            _emit_json(report)
        else:
            print(f"{report['instance']}: unsupported by the formula ({exc.reason}); try `oracle`")
            if fast is not None:
                print(f"beta_b = {fast[0]} (fast path: {fast[1]})")
        return 0 if fast is not None else EXIT_UNSUPPORTED

    bd = res.breakdown
    if args.json:
        _emit_json(
            {
                "instance": str(ct),
                "supported": True,
                "beta_b": res.value,
                "attained_by": res.source,
                "canonical_cost": res.canonical_cost,
                "breakdown": bd.as_dict(),
            }
        )
        return 0
    print(f"{ct}: beta_b = {res.value} (attained by the {res.source} side)")
    print(f"  2(diam-1) = {res.canonical_cost}")
    print(f"  beta* [{bd.variant}] = {bd.value}")
    for key, val in bd.as_dict().items():
        if key.endswith("_term") or key in ("lambda_total", "tau"):
            print(f"    {key}: {val}")
    for c in bd.contributions:
        print(f"    {c.term} on [{c.start},{c.end}]: +{c.value}")
    return 0


def cmd_construct(args: argparse.Namespace) -> int:
    ct = _caterpillar(_instance(args), "construct")
    w = construct_witness(ct)
    t = ct.tree
    if not (is_valid_broadcast(t, w.broadcast) and is_independent(t, w.broadcast)):
        raise InvariantViolation(f"constructed broadcast on {ct} is not independent")
    out = docs.broadcast_to_document(t, w.broadcast)
    out["source"] = w.source
    if args.trace:
        tr = w.trace
        out["trace"] = {
            "steps": [
                {"step": i + 1, "cost": b.cost, "values": docs.broadcast_to_document(t, b)["values"]}
                for i, b in enumerate(tr.steps)
            ],
            "rewrites": [
                {"step": r.step, "family": r.family, "start": r.start, "end": r.end, "delta": r.delta}
                for r in tr.rewrites
            ],
        }
    _emit_json(out)
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    inst = _instance(args)
    t = docs.instance_tree(inst)
    if args.naive:
        value, witness = naive_optimum(t, cap=args.budget if args.budget is not None else 10)
        out = {"instance": docs.describe(inst), "method": "naive", "beta_b": value}
    else:
        opts = OracleOptions(
            max_candidates=args.budget if args.budget is not None else DEFAULT_MAX_CANDIDATES,
            prune_support_vertices=not args.no_prune,
        )
        res = exact_beta_b(t, opts)
        witness = res.witness
        out = {
            "instance": docs.describe(inst),
            "method": "subset",
            "beta_b": res.optimum,
            "candidates": res.candidates,
            "subsets_examined": res.subsets_examined,
        }
    out["witness"] = docs.broadcast_to_document(t, witness)
    if args.json:
        _emit_json(out)
    else:
        print(f"{out['instance']}: beta_b = {out['beta_b']} ({out['method']} oracle)")
        nonzero = {k: v for k, v in out["witness"]["values"].items() if v}
        print("  witness: " + ", ".join(f"{k}={v}" for k, v in nonzero.items()))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    inst = _instance(args)
    t = docs.instance_tree(inst)
    if args.broadcast is None:
        if not isinstance(inst, Caterpillar):
            raise ValidationError("--broadcast is required unless the instance is a caterpillar")
        b = canonical_broadcast(inst)
    else:
        b = _load_broadcast(t, args.broadcast)
    valid = is_valid_broadcast(t, b)
    out = {
        "valid": valid,
        "independent": valid and is_independent(t, b),
        "dominating": valid and is_dominating(t, b),
        "maximal_independent": valid and is_maximal_independent(t, b),
        "cost": b.cost,
    }
    if args.json:
        _emit_json(out)
    else:
        for key, val in out.items():
            print(f"{key}: {val}")
    return 0


def cmd_patterns(args: argparse.Namespace) -> int:
    ct = _caterpillar(_instance(args), "patterns")
    out: dict = {"instance": str(ct)}
    if args.pattern is not None:
        p = pat.parse_pattern(args.pattern)
        occ = pat.find_occurrences(ct, p)
        out["pattern"] = str(p)
        out["count"] = len(occ)
        out["occurrences"] = [{"start": m.start, "end": m.end, "repetitions": m.repetitions} for m in occ]
    if args.formula or args.pattern is None:
        fam = pat.formula_occurrences(ct)
        formula: dict = {"singles": pat.single_stem_centers(ct)}
        for name in ("alternating", "internal", "left", "right"):
            rows = []
            for m in fam[name]:
                row = {"start": m.start, "end": m.end}
                if name == "alternating":
                    row["alpha1"] = pat.alpha1(ct, m, window="interior")
                else:
                    row["alpha2_effective"] = pat.alpha2(ct, m, "effective")
                    row["alpha2_as_written"] = pat.alpha2(ct, m, "as_written")
                rows.append(row)
            formula[name] = rows
        report = pat.check_overlaps(ct)
        formula["whole_caterpillar"] = report.whole_caterpillar
        formula["overlap_violations"] = [
            f"{v.family_a}[{v.a.start},{v.a.end}] x {v.family_b}[{v.b.start},{v.b.end}]"
            for v in report.violations
        ]
        out["formula"] = formula
    if args.json:
        _emit_json(out)
        return 0
    print(out["instance"])
    if "pattern" in out:
        spans = ", ".join(f"[{o['start']},{o['end']}]" for o in out["occurrences"])
        print(f"  {out['pattern']}: {out['count']} occurrence(s) {spans}".rstrip())
    if "formula" in out:
        f = out["formula"]
        print(f"  singles at {f['singles']}")
        for name in ("alternating", "internal", "left", "right"):
            for row in f[name]:
                extra = " ".join(f"{k}={v}" for k, v in row.items() if k not in ("start", "end"))
                print(f"  {name} [{row['start']},{row['end']}] {extra}")
        print(f"  whole caterpillar: {f['whole_caterpillar']}")
        print(f"  overlap violations: {len(f['overlap_violations'])}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    params = harness.SweepParams(
        k_min=args.k_min,
        k_max=args.k_max,
        lambda_cap=args.lambda_cap,
        leaf_cap=args.leaf_cap,
        no_adjacent_trunks=not args.allow_adjacent_trunks,
        canonicalize=not args.no_canonicalize,
        oracle_budget=args.budget,
        workers=args.workers,
    )
    result = harness.sweep(params)
    if args.jsonl:
        _write(args.jsonl, harness.to_jsonl(result.records))
    if args.csv:
        _write(args.csv, harness.to_csv(result.records))
    if args.findings:
        _write(args.findings, harness.to_jsonl(result.findings))
    if args.summary or not (args.jsonl or args.csv):
        sys.stdout.write(result.summary.as_text())
    return result.summary.exit_code


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", newline="") as fh:
        fh.write(text)


def cmd_export_dot(args: argparse.Namespace) -> int:
    inst = _instance(args)
    t = docs.instance_tree(inst)
    b = None
    if args.broadcast is not None:
        b = _load_broadcast(t, args.broadcast)
    elif args.witness:
        b = construct_witness(_caterpillar(inst, "export-dot --witness")).broadcast
    _write(args.output, docs.to_dot(inst, b))
    return 0


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="caterpillar-broadcast",
        description="Broadcast independence numbers of caterpillars.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("beta", help="closed-form value for a caterpillar")
    _add_instance_args(p)
    p.add_argument("--variant", default="effective", choices=["effective", "as-written", "as_written"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("construct", help="witness broadcast from the four-step construction")
    _add_instance_args(p)
    p.add_argument("--trace", action="store_true", help="include the four intermediate broadcasts")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("oracle", help="exact value by search")
    _add_instance_args(p)
    p.add_argument("--naive", action="store_true", help="enumerate all assignments instead")
    p.add_argument("--budget", type=int, help="max candidate vertices (or max vertices with --naive)")
    p.add_argument("--no-prune", action="store_true", help="keep support vertices as candidates")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check a broadcast (canonical one by default)")
    _add_instance_args(p)
    p.add_argument("--broadcast", metavar="FILE", help="broadcast JSON, or - for stdin")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("patterns", help="pattern occurrences and formula terms")
    _add_instance_args(p)
    p.add_argument("pattern", nargs="?", help='pattern text, e.g. "1+0(20)+1+"')
    p.add_argument("--formula", action="store_true", help="also list the formula families")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("sweep", help="exhaustive formula/constructor/oracle comparison")
    d = harness.SweepParams()
    p.add_argument("--k-min", type=int, default=d.k_min)
    p.add_argument("--k-max", type=int, default=d.k_max)
    p.add_argument("--lambda-cap", type=int, default=d.lambda_cap)
    p.add_argument("--leaf-cap", type=int, default=d.leaf_cap)
    p.add_argument("--budget", type=int, default=d.oracle_budget, help="oracle candidate budget")
    p.add_argument("--workers", type=int, default=d.workers)
    p.add_argument("--allow-adjacent-trunks", action="store_true")
    p.add_argument("--no-canonicalize", action="store_true", help="keep both orientations")
    p.add_argument("--jsonl", metavar="FILE")
    p.add_argument("--csv", metavar="FILE")
    p.add_argument("--findings", metavar="FILE", help="JSONL of records with findings only")
    p.add_argument("--summary", action="store_true", help="print the summary even when writing files")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("export-dot", help="DOT drawing, spine on one rank")
    _add_instance_args(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--broadcast", metavar="FILE")
    g.add_argument("--witness", action="store_true", help="label with the constructed witness")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedInstanceError as exc:
        print(json.dumps({"error": "unsupported", "reason": exc.reason, "message": str(exc)}), file=sys.stderr)
        return exc.exit_code
    except BroadcastToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
