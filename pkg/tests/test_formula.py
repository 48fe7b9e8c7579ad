from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caterpillar_broadcast.errors import UnsupportedInstanceError, ValidationError
from caterpillar_broadcast.formula import beta_b, beta_b_fastpath, beta_star
from caterpillar_broadcast.tree import Caterpillar, Star, has_adjacent_trunks

FIG1 = Caterpillar.of(1, 0, 2, 1, 1, 2, 1, 0, 3)

# (lambdas, beta* effective, beta* as_written, beta_b effective); beta_b values are oracle-confirmed
FROZEN = [
    ((1, 1), 4, 4, 4),
    ((3, 3), 6, 6, 6),
    ((3, 0, 3), 7, 7, 7),
    ((2, 0, 3), 6, 7, 6),
    ((2, 0, 2), 5, 7, 6),
    ((1, 0, 1), 4, 5, 6),
    ((1, 0, 2), 5, 6, 6),
    ((2, 0, 1), 4, 6, 6),
    ((3, 0, 1, 0, 3), 9, 9, 10),
    ((1, 0, 2, 1, 1, 2, 1, 0, 3), 16, 16, 18),
    ((2, 0, 1, 0, 2, 0, 1, 0, 2, 0, 3), 18, 18, 22),
    ((1, 1, 0, 1, 1, 0, 1, 1), 12, 12, 16),
]


@pytest.mark.parametrize("lam, eff, asw, bb", FROZEN)
def test_frozen_values(lam, eff, asw, bb):
    ct = Caterpillar(lam)
    assert beta_star(ct, "effective").value == eff
    assert beta_star(ct, "as_written").value == asw
    assert beta_b(ct).value == bb


def test_sample_caterpillar_breakdown():
    bd = beta_star(FIG1)
    assert (bd.lambda_total, bd.tau, bd.singles_term, bd.alpha1_term) == (11, 2, 2, 0)
    assert (bd.alpha2_internal_term, bd.alpha2_left_term, bd.alpha2_right_term) == (0, 1, 0)
    res = beta_b(FIG1)
    assert res.source == "canonical" and res.canonical_cost == 18


def test_tie_goes_to_canonical():
    res = beta_b(Caterpillar.of(1, 1))
    assert res.value == 4 and res.source == "canonical"


def test_constructed_side():
    res = beta_b(Caterpillar.of(3, 0, 3))
    assert res.source == "constructed" and res.value == 7


def test_whole_caterpillar_counted_once():
    bd = beta_star(Caterpillar.of(2, 0, 1, 0, 2), "effective")
    assert bd.whole_caterpillar
    assert bd.alpha2_right_term == 0
    bw = beta_star(Caterpillar.of(2, 0, 1, 0, 2), "as_written")
    assert bw.alpha2_right_term > 0


def test_variant_spelling():
    assert beta_star(FIG1, "as-written").variant == "as_written"
    with pytest.raises(ValidationError):
        beta_star(FIG1, "bogus")


def test_adjacent_trunks_unsupported():
    with pytest.raises(UnsupportedInstanceError) as exc:
        beta_b(Caterpillar.of(1, 0, 0, 1))
    assert exc.value.reason == "adjacent_trunks"
    assert exc.value.exit_code == 2


def test_breakdown_dict_keys_are_stable():
    d = beta_star(FIG1).as_dict()
    assert list(d)[:3] == ["variant", "beta_star", "lambda_total"]
    assert d["beta_star"] == 16


@pytest.mark.parametrize(
    "inst, expected",
    [
        (Star(5), (5, "star")),
        (Caterpillar.of(1, 0, 0, 1), (8, "small_stems")),
        (Caterpillar.of(2, 2, 2), (6, "no_trunk_small_stems")),
        (Caterpillar.of(3, 1, 3), (8, "no_trunk")),
        (Caterpillar.of(3, 0, 4), (8, "big_stems")),
        (Caterpillar.of(1, 0, 3), None),
    ],
)
def test_fastpath(inst, expected):
    assert beta_b_fastpath(inst) == expected


lambdas = st.lists(st.integers(0, 4), min_size=2, max_size=8).filter(
    lambda l: l[0] > 0 and l[-1] > 0 and not has_adjacent_trunks(Caterpillar(tuple(l)))
)


@settings(max_examples=150, deadline=None)
@given(lambdas)
def test_reversal_invariance(lam):
    ct = Caterpillar(tuple(lam))
    for variant in ("effective", "as_written"):
        assert beta_b(ct, variant).value == beta_b(ct.reversed(), variant).value
        # whole [2-(02-)*] caterpillars are rewritten from the left only
        if not beta_star(ct).whole_caterpillar:
            assert beta_star(ct, variant).value == beta_star(ct.reversed(), variant).value


def test_whole_case_is_orientation_dependent_but_never_attained():
    assert beta_star(Caterpillar.of(1, 0, 2)).value == 5
    assert beta_star(Caterpillar.of(2, 0, 1)).value == 4
    assert beta_b(Caterpillar.of(1, 0, 2)).source == beta_b(Caterpillar.of(2, 0, 1)).source == "canonical"


@settings(max_examples=150, deadline=None)
@given(lambdas)
def test_variants_ordered(lam):
    ct = Caterpillar(tuple(lam))
    assert beta_star(ct, "as_written").value >= beta_star(ct, "effective").value


@settings(max_examples=150, deadline=None)
@given(lambdas)
def test_fastpath_agrees_with_formula(lam):
    ct = Caterpillar(tuple(lam))
    fp = beta_b_fastpath(ct)
    if fp is not None:
        assert fp[0] == beta_b(ct).value
