"""Pattern-counting value of a caterpillar and the resulting broadcast independence number."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import patterns as pat
from .errors import UnsupportedInstanceError, ValidationError
from .tree import Caterpillar, Star, classify_spine, has_adjacent_trunks

VARIANTS = ("effective", "as_written")


@dataclass(frozen=True)
class Contribution:
    term: str
    start: int
    end: int
    value: int


@dataclass(frozen=True)
class BetaBreakdown:
    variant: str
    lambda_total: int
    tau: int
    singles_term: int
    alpha1_term: int
    alpha2_internal_term: int
    alpha2_left_term: int
    alpha2_right_term: int
    contributions: tuple[Contribution, ...] = field(default=())
    whole_caterpillar: bool = False

    @property
    def value(self) -> int:
        return (
            self.lambda_total
            + self.tau
            + self.singles_term
            + self.alpha1_term
            + self.alpha2_internal_term
            + self.alpha2_left_term
            + self.alpha2_right_term
        )

    def as_dict(self) -> dict:
        return {
            "variant": self.variant,
            "beta_star": self.value,
            "lambda_total": self.lambda_total,
            "tau": self.tau,
            "singles_term": self.singles_term,
            "alpha1_term": self.alpha1_term,
            "alpha2_internal_term": self.alpha2_internal_term,
            "alpha2_left_term": self.alpha2_left_term,
            "alpha2_right_term": self.alpha2_right_term,
            "whole_caterpillar": self.whole_caterpillar,
            "contributions": [
                {"term": c.term, "start": c.start, "end": c.end, "value": c.value}
                for c in self.contributions
            ],
        }


def _check_variant(variant: str) -> str:
    variant = variant.replace("-", "_")
    if variant not in VARIANTS:
        raise ValidationError(f"unknown formula variant {variant!r}; expected one of {VARIANTS}")
    return variant


def require_supported(ct: Caterpillar) -> None:
    if not isinstance(ct, Caterpillar):
        raise UnsupportedInstanceError("the formula needs a caterpillar of length k >= 1", "not_caterpillar")
    if has_adjacent_trunks(ct):
        raise UnsupportedInstanceError(f"{ct} has adjacent trunks", "adjacent_trunks")


def beta_star(ct: Caterpillar, variant: str = "effective") -> BetaBreakdown:
    variant = _check_variant(variant)
    require_supported(ct)
    cls = classify_spine(ct)
    contributions: list[Contribution] = []

    singles = pat.single_stem_centers(ct)
    contributions += [Contribution("singles", max(i - 1, 0), min(i + 1, ct.k), 1) for i in singles]

    occ = pat.formula_occurrences(ct)
    a1 = 0
    for m in occ["alternating"]:
        val = pat.alpha1(ct, m, window="interior")
        a1 += val
        contributions.append(Contribution("alpha1", m.start, m.end, val))

    whole = pat.is_whole_alternating(ct)
    terms = {}
    for name in ("internal", "left", "right"):
        total = 0
        for m in occ[name]:
            if name == "right" and whole and variant == "effective":
                continue  # whole [2-(02-)*] caterpillars are rewritten once, from the left
            val = pat.alpha2(ct, m, variant)
            total += val
            contributions.append(Contribution(f"alpha2_{name}", m.start, m.end, val))
        terms[name] = total

    return BetaBreakdown(
        variant=variant,
        lambda_total=cls.leaf_total,
        tau=cls.trunk_count,
        singles_term=len(singles),
        alpha1_term=a1,
        alpha2_internal_term=terms["internal"],
        alpha2_left_term=terms["left"],
        alpha2_right_term=terms["right"],
        contributions=tuple(contributions),
        whole_caterpillar=whole,
    )


@dataclass(frozen=True)
class BetaResult:
    value: int
    source: str  # "canonical" or "constructed"
    canonical_cost: int
    breakdown: BetaBreakdown


def beta_b(ct: Caterpillar, variant: str = "effective") -> BetaResult:
    """``max(2(diam - 1), beta*)``; ties are attributed to the canonical broadcast."""
    bd = beta_star(ct, variant)
    canonical = 2 * (ct.k + 1)
    if bd.value > canonical:
        return BetaResult(bd.value, "constructed", canonical, bd)
    return BetaResult(canonical, "canonical", canonical, bd)


def beta_b_fastpath(instance: Caterpillar | Star) -> tuple[int, str] | None:
    """Closed forms for stars and the corollary classes; ``None`` when none applies."""
    if isinstance(instance, Star):
        return instance.leaves, "star"
    ct = instance
    cls = classify_spine(ct)
    big_stem = any(x >= 3 for x in ct.lambdas)
    if cls.trunk_count == 0:
        if not big_stem:
            return 2 * ct.k + 2, "no_trunk_small_stems"
        return cls.leaf_total + cls.single_leaf_stems, "no_trunk"
    if not big_stem:
        return 2 * ct.k + 2, "small_stems"
    if not has_adjacent_trunks(ct) and all(x == 0 or x >= 3 for x in ct.lambdas):
        return cls.leaf_total + cls.trunk_count, "big_stems"
    return None
