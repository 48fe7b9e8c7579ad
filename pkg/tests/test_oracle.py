from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caterpillar_broadcast.broadcast import is_independent, is_valid_broadcast
from caterpillar_broadcast.errors import BudgetExceededError
from caterpillar_broadcast.harness import random_tree
from caterpillar_broadcast.oracle import (
    OracleOptions,
    candidate_vertices,
    exact_beta_b,
    naive_beta_b,
    naive_optimum,
)
from caterpillar_broadcast.tree import Caterpillar, Tree


@pytest.mark.parametrize("n", range(1, 9))
def test_star(n):
    assert exact_beta_b(Tree.star(n)).optimum == n


@pytest.mark.parametrize("n", range(4, 13))
def test_path(n):
    assert exact_beta_b(Tree.path(n)).optimum == 2 * (n - 2)


def test_tiny_trees():
    assert exact_beta_b(Tree(1, ())).optimum == 0
    assert exact_beta_b(Tree.path(2)).optimum == 1
    assert exact_beta_b(Tree.path(3)).optimum == 2


@pytest.mark.parametrize(
    "lam, value",
    [((2, 0, 3), 6), ((3, 0, 3), 7), ((1, 0, 2, 1, 1, 2, 1, 0, 3), 18), ((1, 0, 1, 3, 3), 11)],
)
def test_frozen_caterpillars(lam, value):
    res = exact_beta_b(Caterpillar(lam).tree)
    assert res.optimum == value
    assert res.witness.cost == value


def test_naive_matches_on_2_0_3():
    value, witness = naive_optimum(Caterpillar.of(2, 0, 3).tree)
    assert value == 6 and witness.cost == 6


def test_counterexample_confirmed_by_naive():
    assert naive_beta_b(Caterpillar.of(1, 0, 1, 3, 3).tree, cap=13) == 11


def test_support_vertices_are_not_candidates():
    t = Caterpillar.of(1, 0, 2).tree
    assert set(candidate_vertices(t)).isdisjoint(t.support_vertices)
    assert len(candidate_vertices(t, prune_support_vertices=False)) == t.vertex_count


def test_budget():
    with pytest.raises(BudgetExceededError):
        exact_beta_b(Tree.star(30), OracleOptions(max_candidates=10))
    with pytest.raises(BudgetExceededError):
        naive_beta_b(Tree.path(9))


def test_deterministic_witness():
    t = Caterpillar.of(2, 1, 2).tree
    assert exact_beta_b(t).witness == exact_beta_b(t).witness


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 8), st.integers(0, 10**6))
def test_random_trees_agree(n, seed):
    t = random_tree(n, seed)
    res = exact_beta_b(t)
    assert res.optimum == naive_beta_b(t)
    assert is_valid_broadcast(t, res.witness) and is_independent(t, res.witness)
    assert res.witness.cost == res.optimum


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.integers(0, 10**6))
def test_pruning_is_exact(n, seed):
    t = random_tree(n, seed)
    assert exact_beta_b(t).optimum == exact_beta_b(t, OracleOptions(prune_support_vertices=False)).optimum
