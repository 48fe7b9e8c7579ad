"""Instance and broadcast documents, plus the DOT emitter."""

from __future__ import annotations

import json
from typing import Any, Mapping

from .broadcast import Broadcast
from .errors import ValidationError
from .tree import Caterpillar, Star, Tree

Instance = Caterpillar | Star | Tree


def instance_from_document(doc: Mapping[str, Any]) -> Instance:
    """``{"lambdas": [...]}`` or ``{"tree": {"n": N, "edges": [[u, v], ...]}}``.

    A one-element ``lambdas`` list denotes the star ``K_{1,n}``.
    """
    if not isinstance(doc, Mapping):
        raise ValidationError("instance document must be a JSON object")
    has_lam, has_tree = "lambdas" in doc, "tree" in doc
    if has_lam == has_tree:
        raise ValidationError('instance document needs exactly one of "lambdas" or "tree"')
    if has_lam:
        lam = doc["lambdas"]
        if not isinstance(lam, list) or not lam:
            raise ValidationError('"lambdas" must be a non-empty list of integers')
        if len(lam) == 1:
            return Star(lam[0])
        return Caterpillar(tuple(lam))
    tree = doc["tree"]
    try:
        n = tree["n"]
        edges = [tuple(e) for e in tree["edges"]]
    except (KeyError, TypeError) as exc:
        raise ValidationError('"tree" needs "n" and "edges"') from exc
    if any(len(e) != 2 for e in edges):
        raise ValidationError("every edge must be a pair")
    return Tree.from_edges(n, edges)


def instance_to_document(inst: Instance) -> dict:
    if isinstance(inst, Caterpillar):
        return {"lambdas": list(inst.lambdas)}
    if isinstance(inst, Star):
        return {"lambdas": [inst.leaves]}
    return {"tree": {"n": inst.vertex_count, "edges": [list(e) for e in inst.edges]}}


def load_instance(path: str) -> Instance:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON ({exc})") from exc
    return instance_from_document(doc)


def instance_tree(inst: Instance) -> Tree:
    if isinstance(inst, Caterpillar):
        return inst.tree
    if isinstance(inst, Star):
        return inst.to_tree()
    return inst


def describe(inst: Instance) -> str:
    if isinstance(inst, Star):
        return f"K1,{inst.leaves}"
    if isinstance(inst, Tree):
        return f"tree(n={inst.vertex_count})"
    return str(inst)


def broadcast_to_document(t: Tree, b: Broadcast) -> dict:
    return {"values": {t.name(v): b[v] for v in range(t.vertex_count)}, "cost": b.cost}


def broadcast_from_document(t: Tree, doc: Mapping[str, Any]) -> Broadcast:
    """Parse ``{"values": {name: int}, "cost": int}``; unnamed vertices default to 0."""
    if not isinstance(doc, Mapping) or not isinstance(doc.get("values"), Mapping):
        raise ValidationError('broadcast document needs a "values" object')
    index = {t.name(v): v for v in range(t.vertex_count)}
    mapping = {}
    for name, value in doc["values"].items():
        if name not in index:
            raise ValidationError(f"unknown vertex {name!r}")
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise ValidationError(f"value of {name!r} must be a non-negative integer")
        mapping[index[name]] = value
    b = Broadcast.from_mapping(t.vertex_count, mapping)
    if "cost" in doc and doc["cost"] != b.cost:
        raise ValidationError(f'stated cost {doc["cost"]} differs from the sum of values {b.cost}')
    return b


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def to_dot(inst: Instance, b: Broadcast | None = None) -> str:
    """Deterministic DOT text: spine on one rank, pendant leaves on the rank below."""
    t = instance_tree(inst)

    def label(v: int) -> str:
        name = t.name(v)
        if b is not None and b[v] > 0:
            return f"{name}\\nf={b[v]}"
        return name

    lines = ["graph G {", "  rankdir=TB;", "  node [shape=circle, fontsize=10];"]
    if isinstance(inst, (Caterpillar, Star)):
        k = 0 if isinstance(inst, Star) else inst.k
        spine = list(range(k + 1))
        leaves = [v for v in range(t.vertex_count) if v > k]
        for v in range(t.vertex_count):
            style = ', style=filled, fillcolor="#dddddd"' if b is not None and b[v] > 0 else ""
            lines.append(f'  "{t.name(v)}" [label="{label(v)}"{style}];')
        lines.append("  { rank=same; " + " ".join(f'"{t.name(v)}";' for v in spine) + " }")
        if leaves:
            lines.append("  { rank=same; " + " ".join(f'"{t.name(v)}";' for v in leaves) + " }")
        for i in range(k):
            lines.append(f'  "{t.name(i)}" -- "{t.name(i + 1)}" [weight=100];')
        for u, v in t.edges:
            if u <= k < v:
                lines.append(f'  "{t.name(u)}" -- "{t.name(v)}";')
    else:
        for v in range(t.vertex_count):
            lines.append(f'  "{t.name(v)}" [label="{label(v)}"];')
        for u, v in t.edges:
            lines.append(f'  "{t.name(u)}" -- "{t.name(v)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
