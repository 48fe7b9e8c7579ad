"""Pattern language over pendant-count sequences.

Notation (one symbol per spine vertex)::

    pattern := '['? element* ']'?
    element := atom | '(' atom+ ')' '^'? '{'? ('+' | '*') 'r'? '}'?
    atom    := digit ('+' | '-')? | '{' option (',' option)* '}'
    option  := digit ('+' | '-')? | '[' | ']'

``t`` matches exactly ``t`` pendant leaves, ``t+`` at least ``t`` and ``t-``
a stem with between 1 and ``t`` leaves.  ``[`` and ``]`` pin the pattern to
the left / right end of the spine.  ``(..)+`` repeats a group one or more
times and ``(..)*`` zero or more times; only inclusion-maximal matches are
reported, so a group is always repeated as often as the sequence allows.
Inside braces, ``[`` (first element only) and ``]`` (last element only) make
the spine end an alternative to that symbol.  Unicode ``⁺``, ``⁻`` and ``−``
are accepted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import ValidationError
from .tree import Caterpillar

_OPS = ("=", ">=", "<=")
_SUFFIX = {"=": "", ">=": "+", "<=": "-"}


@dataclass(frozen=True)
class Symbol:
    """Predicate on one pendant count: a union of exact/at-least/at-most bounds."""

    options: tuple[tuple[str, int], ...]
    stem: bool = False

    def __post_init__(self) -> None:
        if not self.options:
            raise ValidationError("a symbol needs at least one option")
        for op, t in self.options:
            if op not in _OPS or t < 0:
                raise ValidationError(f"bad symbol option {(op, t)!r}")

    @classmethod
    def exact(cls, t: int) -> "Symbol":
        return cls((("=", t),))

    @classmethod
    def at_least(cls, t: int) -> "Symbol":
        return cls(((">=", t),))

    @classmethod
    def at_most(cls, t: int, stem: bool = True) -> "Symbol":
        return cls((("<=", t),), stem=stem)

    def matches(self, lam: int) -> bool:
        if self.stem and lam < 1:
            return False
        for op, t in self.options:
            if (op == "=" and lam == t) or (op == ">=" and lam >= t) or (op == "<=" and lam <= t):
                return True
        return False

    def __str__(self) -> str:
        parts = [f"{t}{_SUFFIX[op]}" for op, t in self.options]
        return parts[0] if len(parts) == 1 else "{" + ",".join(parts) + "}"


@dataclass(frozen=True)
class Pattern:
    prefix: tuple[Symbol, ...] = ()
    repeat: tuple[Symbol, ...] | None = None
    min_repeat: int = 0
    suffix: tuple[Symbol, ...] = ()
    left_anchor: bool = False
    right_anchor: bool = False

    def __post_init__(self) -> None:
        if self.repeat is not None and not self.repeat:
            raise ValidationError("a repeat group needs at least one symbol")
        if self.min_repeat not in (0, 1):
            raise ValidationError("min_repeat must be 0 or 1")
        if not self.prefix and not self.suffix and (self.repeat is None or self.min_repeat == 0):
            raise ValidationError("a pattern must cover at least one position")

    def mirrored(self) -> "Pattern":
        return Pattern(
            prefix=self.suffix[::-1],
            repeat=None if self.repeat is None else self.repeat[::-1],
            min_repeat=self.min_repeat,
            suffix=self.prefix[::-1],
            left_anchor=self.right_anchor,
            right_anchor=self.left_anchor,
        )

    def __str__(self) -> str:
        text = "[" if self.left_anchor else ""
        text += "".join(map(str, self.prefix))
        if self.repeat is not None:
            text += "(" + "".join(map(str, self.repeat)) + ")" + ("+" if self.min_repeat else "*")
        text += "".join(map(str, self.suffix))
        return text + ("]" if self.right_anchor else "")


@dataclass(frozen=True)
class PatternUnion:
    """Alternative patterns counted together (``{1+,[}1{1+,]}`` and friends)."""

    variants: tuple[Pattern, ...]
    text: str = field(default="", compare=False)

    def mirrored(self) -> "PatternUnion":
        return PatternUnion(tuple(p.mirrored() for p in self.variants))

    def __str__(self) -> str:
        return self.text or " | ".join(map(str, self.variants))


AnyPattern = Pattern | PatternUnion


@dataclass(frozen=True)
class Occurrence:
    start: int
    end: int  # inclusive
    repetitions: int
    contains_left_end: bool
    contains_right_end: bool
    variant: int = 0

    @property
    def span(self) -> range:
        return range(self.start, self.end + 1)

    def overlaps(self, other: "Occurrence") -> bool:
        return self.start <= other.end and other.start <= self.end


# ---------------------------------------------------------------- parsing

_NORMALIZE = str.maketrans({"⁺": "+", "⁻": "-", "−": "-", "–": "-"})


class _Parser:
    def __init__(self, text: str):
        self.src = text
        self.s = "".join(text.translate(_NORMALIZE).split())
        self.i = 0

    def error(self, msg: str) -> ValidationError:
        return ValidationError(f"pattern {self.src!r}: {msg} at position {self.i}")

    def peek(self) -> str:
        return self.s[self.i] if self.i < len(self.s) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.i += 1
            return True
        return False

    def option(self):
        ch = self.peek()
        if ch and ch in "[]":
            self.i += 1
            return ch
        if not ch.isdigit():
            raise self.error("expected a digit")
        self.i += 1
        t = int(ch)
        if self.take("+"):
            return (">=", t)
        if self.take("-"):
            if t < 1:
                raise self.error("'0-' denotes no stem")
            return ("<=", t)
        return ("=", t)

    def atom(self):
        """Return ``(options, end_marker)`` where end_marker is '', '[' or ']'."""
        if self.take("{"):
            opts, marker = [], ""
            while True:
                o = self.option()
                if isinstance(o, str):
                    if marker:
                        raise self.error("at most one end marker per brace")
                    marker = o
                else:
                    opts.append(o)
                if self.take("}"):
                    break
                if not self.take(","):
                    raise self.error("expected ',' or '}'")
            if not opts:
                raise self.error("braces need at least one symbol")
            return opts, marker
        o = self.option()
        if isinstance(o, str):
            raise self.error("unexpected anchor")
        return [o], ""

    @staticmethod
    def symbol(opts) -> Symbol:
        # t- positions are stems: at most t but at least one pendant leaf
        stem = all(op == "<=" for op, _ in opts)
        return Symbol(tuple(opts), stem=stem)

    def parse(self) -> AnyPattern:
        left = self.take("[")
        elements: list = []  # ("sym", Symbol, marker) | ("group", tuple, min)
        while self.peek() and self.peek() != "]":
            if self.take("("):
                group = []
                while not self.take(")"):
                    if not self.peek():
                        raise self.error("unclosed group")
                    opts, marker = self.atom()
                    if marker:
                        raise self.error("end markers are not allowed inside groups")
                    group.append(self.symbol(opts))
                self.take("^")
                braced = self.take("{")
                if self.take("+"):
                    mn = 1
                elif self.take("*"):
                    mn = 0
                else:
                    raise self.error("expected '+' or '*' after a group")
                self.take("r")
                if braced and not self.take("}"):
                    raise self.error("expected '}'")
                if not group:
                    raise self.error("empty group")
                elements.append(("group", tuple(group), mn))
            else:
                opts, marker = self.atom()
                elements.append(("sym", self.symbol(opts), marker))
        right = self.take("]")
        if self.i != len(self.s):
            raise self.error("trailing input")
        groups = [e for e in elements if e[0] == "group"]
        if len(groups) > 1:
            raise self.error("at most one repeat group is supported")
        for pos, e in enumerate(elements):
            if e[0] == "sym" and e[2]:
                if e[2] == "[" and (pos != 0 or left):
                    raise self.error("'[' alternative only allowed on the first symbol")
                if e[2] == "]" and (pos != len(elements) - 1 or right):
                    raise self.error("']' alternative only allowed on the last symbol")

        variants = []
        first_alt = bool(elements) and elements[0][0] == "sym" and elements[0][2] == "["
        last_alt = bool(elements) and elements[-1][0] == "sym" and elements[-1][2] == "]"
        for drop_first in ((False, True) if first_alt else (False,)):
            for drop_last in ((False, True) if last_alt else (False,)):
                elems = list(elements)
                la, ra = left, right
                if drop_last:
                    elems = elems[:-1]
                    ra = True
                if drop_first:
                    elems = elems[1:]
                    la = True
                variants.append(self.build(elems, la, ra))
        if len(variants) == 1:
            return variants[0]
        return PatternUnion(tuple(variants), text=self.src)

    def build(self, elems, left: bool, right: bool) -> Pattern:
        prefix, suffix, repeat, mn = [], [], None, 0
        for e in elems:
            if e[0] == "group":
                repeat, mn = e[1], e[2]
            elif repeat is None:
                prefix.append(e[1])
            else:
                suffix.append(e[1])
        return Pattern(tuple(prefix), repeat, mn, tuple(suffix), left, right)


def parse_pattern(text: str) -> AnyPattern:
    """Parse the textual notation described in the module docstring."""
    return _Parser(text).parse()


# --------------------------------------------------------------- matching

def _matches_at(lam: Sequence[int], pos: int, symbols: Sequence[Symbol]) -> bool:
    if pos + len(symbols) > len(lam):
        return False
    return all(s.matches(lam[pos + j]) for j, s in enumerate(symbols))


def _complete_matches(lam: Sequence[int], p: Pattern) -> list[tuple[int, int, int]]:
    k = len(lam) - 1
    found = []
    starts = [0] if p.left_anchor else range(len(lam))
    for start in starts:
        if not _matches_at(lam, start, p.prefix):
            continue
        pos = start + len(p.prefix)
        reps = [0]
        if p.repeat is not None:
            g = len(p.repeat)
            r = 0
            while _matches_at(lam, pos + r * g, p.repeat):
                r += 1
                reps.append(r)
            reps = [x for x in reps if x >= p.min_repeat]
        for r in reps:
            body = pos + (r * len(p.repeat) if p.repeat else 0)
            if not _matches_at(lam, body, p.suffix):
                continue
            end = body + len(p.suffix) - 1
            if end < start or (p.right_anchor and end != k):
                continue
            found.append((start, end, r))
    return found


def _inclusion_maximal(matches: list[tuple[int, int, int]]) -> list[tuple[int, int, int]]:
    keep = []
    for s, e, r in matches:
        if not any((s2 <= s and e <= e2) and (s2, e2) != (s, e) for s2, e2, _ in matches):
            keep.append((s, e, r))
    return keep


def find_occurrences(ct: Caterpillar | Sequence[int], p: AnyPattern) -> list[Occurrence]:
    """All inclusion-maximal occurrences of ``p``, ordered by start index."""
    lam = ct.lambdas if isinstance(ct, Caterpillar) else tuple(ct)
    k = len(lam) - 1
    variants = p.variants if isinstance(p, PatternUnion) else (p,)
    out = []
    for idx, variant in enumerate(variants):
        for s, e, r in _inclusion_maximal(_complete_matches(lam, variant)):
            out.append(Occurrence(s, e, r, s == 0, e == k, idx))
    out.sort(key=lambda m: (m.start, m.end, m.variant))
    return out


def count_occurrences(ct: Caterpillar | Sequence[int], p: AnyPattern) -> int:
    return len(find_occurrences(ct, p))


# ----------------------------------------------------- formula patterns

SINGLES = parse_pattern("{1+,[}1{1+,]}")
ALTERNATING_STEMS = parse_pattern("1+2-(02-)+1+")
INTERNAL = parse_pattern("02-(02-)*0")
LEFT_ANCHORED = parse_pattern("[2-(02-)*0")
RIGHT_ANCHORED = parse_pattern("02-(02-)*]")
WHOLE = parse_pattern("[2-(02-)*]")

FAMILIES: dict[str, AnyPattern] = {
    "singles": SINGLES,
    "alternating": ALTERNATING_STEMS,
    "internal": INTERNAL,
    "left": LEFT_ANCHORED,
    "right": RIGHT_ANCHORED,
}


def single_stem_centers(ct: Caterpillar) -> list[int]:
    """Spine indices ``i`` with ``l_i = 1`` whose neighbours are stems or spine ends."""
    lam, k = ct.lambdas, ct.k
    return [
        i
        for i in range(k + 1)
        if lam[i] == 1 and (i == 0 or lam[i - 1] >= 1) and (i == k or lam[i + 1] >= 1)
    ]


def is_whole_alternating(ct: Caterpillar) -> bool:
    """True when the entire caterpillar reads ``[2-(02-)*]``."""
    return bool(find_occurrences(ct, WHOLE))


# ------------------------------------------------------------ accounting

def single_leaf_stems(ct: Caterpillar, m: Occurrence, window: str = "all") -> int:
    if window == "all":
        idx = m.span
    elif window == "interior":
        idx = range(m.start + 1, m.end)
    else:
        raise ValidationError(f"unknown counting window {window!r}")
    return sum(1 for i in idx if ct.lambdas[i] == 1)


def alpha1(ct: Caterpillar, m: Occurrence, window: str = "all") -> int:
    """Single-leaf stems counted in ``window`` minus one, floored at zero.

    ``window="interior"`` skips the two flanking stems of
    ``1+2-(02-)+1+`` occurrences.
    """
    return max(0, single_leaf_stems(ct, m, window) - 1)


def _check_zero_alternating(ct: Caterpillar, m: Occurrence) -> None:
    lam, k = ct.lambdas, ct.k
    ok = True
    for i in m.span:
        trunk_slot = (i - m.start) % 2 == (0 if lam[m.start] == 0 else 1)
        if trunk_slot and lam[i] != 0:
            ok = False
        if not trunk_slot and lam[i] not in (1, 2):
            ok = False
    left_ok = lam[m.start] == 0 or m.start == 0
    right_ok = lam[m.end] == 0 or m.end == k
    if not (ok and left_ok and right_ok) or (lam[m.start] != 0 and lam[m.end] != 0):
        raise ValidationError(
            f"occurrence {m.start}..{m.end} of {ct} is not in a 0-alternating family"
        )


def alpha2(ct: Caterpillar, m: Occurrence, variant: str = "effective") -> int:
    """End-aware bonus of an occurrence of ``02-(02-)*0``, ``[2-(02-)*0`` or ``02-(02-)*]``.

    ``as_written`` adds one per spine end inside the occurrence to
    :func:`alpha1`; ``effective`` counts every single-leaf stem of an
    anchored occurrence instead.  The two agree unless an anchored
    occurrence has no single-leaf stem.
    """
    _check_zero_alternating(ct, m)
    if variant == "as_written":
        return alpha1(ct, m) + int(m.contains_left_end) + int(m.contains_right_end)
    if variant == "effective":
        if m.contains_left_end or m.contains_right_end:
            return single_leaf_stems(ct, m)
        return alpha1(ct, m)
    raise ValidationError(f"unknown variant {variant!r}")


# --------------------------------------------------------------- overlaps

@dataclass(frozen=True)
class OverlapViolation:
    family_a: str
    a: Occurrence
    family_b: str
    b: Occurrence


@dataclass(frozen=True)
class OverlapReport:
    whole_caterpillar: bool
    violations: tuple[OverlapViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


_FORBIDDEN = {
    "internal": ("singles", "alternating", "internal", "left", "right"),
    "left": ("singles", "alternating"),
    "right": ("singles", "alternating"),
}


def formula_occurrences(ct: Caterpillar) -> dict[str, list[Occurrence]]:
    """Occurrences of every family in the beta* formula, keyed by family name.

    A trunk-bounded stretch lying inside a longer alternating or anchored
    occurrence is part of that occurrence, not a maximal occurrence of its
    own, so such ``internal`` matches are dropped.
    """
    occ = {name: find_occurrences(ct, p) for name, p in FAMILIES.items()}
    enclosing = occ["alternating"] + occ["left"] + occ["right"]
    occ["internal"] = [
        m for m in occ["internal"]
        if not any(e.start <= m.start and m.end <= e.end for e in enclosing)
    ]
    return occ


def check_overlaps(
    ct: Caterpillar, occurrence_sets: Mapping[str, Iterable[Occurrence]] | None = None
) -> OverlapReport:
    """Check the non-overlap guarantees between the formula's pattern families.

    Two alternating-stem occurrences may not share interior stems; a left-
    and a right-anchored occurrence may overlap only when the whole
    caterpillar reads ``[2-(02-)*]``.
    """
    sets = {name: list(v) for name, v in (occurrence_sets or formula_occurrences(ct)).items()}
    violations = []

    def add(fa, a, fb, b):
        violations.append(OverlapViolation(fa, a, fb, b))

    for fa, partners in _FORBIDDEN.items():
        for a in sets.get(fa, ()):
            for fb in partners:
                for b in sets.get(fb, ()):
                    if fa == fb and a == b:
                        continue
                    if fa == fb and (b.start, b.end) < (a.start, a.end):
                        continue  # report each unordered pair once
                    if a.overlaps(b):
                        add(fa, a, fb, b)
    alt = sets.get("alternating", [])
    for x, a in enumerate(alt):
        for b in alt[x + 1 :]:
            # step 3 rewrites interiors only; flanks may be shared
            if set(range(a.start + 1, a.end)) & set(range(b.start + 1, b.end)):
                add("alternating", a, "alternating", b)

    whole = False
    for a in sets.get("left", ()):
        for b in sets.get("right", ()):
            if a.overlaps(b):
                if is_whole_alternating(ct):
                    whole = True
                else:
                    add("left", a, "right", b)
    return OverlapReport(whole, tuple(violations))
