from __future__ import annotations

import pytest

from caterpillar_broadcast.errors import ValidationError
from caterpillar_broadcast.tree import (
    Caterpillar,
    Star,
    Tree,
    classify_spine,
    diameter,
    has_adjacent_trunks,
    radius,
)


def test_path_metrics():
    t = Tree.path(5)
    assert t.eccentricities == (4, 3, 2, 3, 4)
    assert diameter(t) == 4
    assert radius(t) == 2
    assert t.support_vertices == frozenset({1, 3})


def test_star_tree():
    t = Star(4).to_tree()
    assert t.vertex_count == 5
    assert t.degree(0) == 4
    assert t.name(0) == "v0" and t.name(3) == "l0_3"


@pytest.mark.parametrize(
    "edges",
    [((0, 1), (1, 2), (2, 0)), ((0, 1),), ((0, 0), (1, 2)), ((0, 3), (1, 2))],
)
def test_rejects_non_trees(edges):
    with pytest.raises(ValidationError):
        Tree(3, edges)


def test_caterpillar_layout():
    ct = Caterpillar.of(1, 0, 2)
    assert ct.k == 2
    assert ct.diameter == 4
    assert ct.vertex_count == 6
    assert [ct.vertex_name(v) for v in range(6)] == ["v0", "v1", "v2", "l0_1", "l2_1", "l2_2"]
    assert ct.role(ct.leaf(2, 2)) == (2, 2)
    assert ct.tree.diameter == ct.diameter


def test_caterpillar_parse_and_reverse():
    ct = Caterpillar.parse(" 1, 0,3 ")
    assert ct.lambdas == (1, 0, 3)
    assert str(ct.reversed()) == "CT(3,0,1)"


@pytest.mark.parametrize("lam", [(1,), (0, 1), (1, 0), (1, -1, 1), (1, 1.5, 1)])
def test_caterpillar_rejects(lam):
    with pytest.raises(ValidationError):
        Caterpillar(lam)


def test_parse_rejects_garbage():
    with pytest.raises(ValidationError):
        Caterpillar.parse("1,x,2")


def test_classification():
    cls = classify_spine(Caterpillar.of(1, 0, 2, 1, 1, 2, 1, 0, 3))
    assert cls.leaf_total == 11
    assert cls.trunk_count == 2
    assert cls.single_leaf_stems == 4


def test_adjacent_trunks():
    assert has_adjacent_trunks(Caterpillar.of(1, 0, 0, 1))
    assert not has_adjacent_trunks(Caterpillar.of(1, 0, 1, 0, 1))
