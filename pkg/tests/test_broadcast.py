from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caterpillar_broadcast.broadcast import (
    Broadcast,
    canonical_broadcast,
    improve_stem_once,
    is_dominating,
    is_independent,
    is_maximal_independent,
    is_valid_broadcast,
    saturate_stems,
    spine_weights,
)
from caterpillar_broadcast.errors import ValidationError
from caterpillar_broadcast.tree import Caterpillar, Tree


def test_broadcast_rejects_negative():
    with pytest.raises(ValidationError):
        Broadcast((0, -1))


def test_validity_is_capped_by_eccentricity():
    t = Tree.path(3)
    assert is_valid_broadcast(t, Broadcast((2, 0, 0)))
    assert not is_valid_broadcast(t, Broadcast((0, 2, 0)))


def test_domain_mismatch_raises():
    with pytest.raises(ValidationError):
        is_valid_broadcast(Tree.path(3), Broadcast((0, 0)))


def test_independence_uses_the_larger_value():
    t = Tree.path(5)
    assert is_independent(t, Broadcast((1, 0, 1, 0, 0)))
    assert not is_independent(t, Broadcast((2, 0, 1, 0, 0)))
    assert is_independent(t, Broadcast((1, 0, 0, 0, 3)))


def test_canonical_on_p4():
    ct = Caterpillar.of(1, 1)
    b = canonical_broadcast(ct)
    t = ct.tree
    assert b.cost == 4
    assert is_independent(t, b) and is_dominating(t, b) and is_maximal_independent(t, b)


def test_maximality_cases():
    t = Tree.path(4)
    assert is_maximal_independent(t, Broadcast((3, 0, 0, 0)))
    assert not is_maximal_independent(t, Broadcast((2, 0, 0, 0)))
    assert not is_maximal_independent(t, Broadcast.zeros(4))
    with pytest.raises(ValidationError):
        is_maximal_independent(t, Broadcast((1, 1, 0, 0)))


def test_spine_weights_and_stem_moves():
    ct = Caterpillar.of(2, 0, 1)
    t = ct.tree
    b = Broadcast.from_mapping(t.vertex_count, {0: 1, ct.leaf(2, 1): 1})
    assert is_independent(t, b)
    better = improve_stem_once(t, b)
    assert better is not None and better.cost == b.cost + 1
    assert better[ct.leaf(0, 1)] == 2 and better[0] == 0
    assert spine_weights(ct, better) == (2, 0, 1)
    assert improve_stem_once(t, better) is None
    assert saturate_stems(t, b) == better


lambdas = st.lists(st.integers(0, 3), min_size=2, max_size=6).filter(lambda l: l[0] > 0 and l[-1] > 0)


@settings(max_examples=60, deadline=None)
@given(lambdas)
def test_canonical_is_maximal_independent(lam):
    ct = Caterpillar(tuple(lam))
    b = canonical_broadcast(ct)
    assert b.cost == 2 * (ct.k + 1)
    assert is_maximal_independent(ct.tree, b)


@settings(max_examples=60, deadline=None)
@given(lambdas, st.data())
def test_stem_move_preserves_independence(lam, data):
    ct = Caterpillar(tuple(lam))
    t = ct.tree
    stems = [i for i in range(ct.k + 1) if ct.lambdas[i] > 0]
    v = data.draw(st.sampled_from(stems))
    b = Broadcast.from_mapping(t.vertex_count, {v: 1})
    nxt = improve_stem_once(t, b)
    assert nxt is not None and nxt.cost == 2
    assert is_independent(t, nxt)
