"""Broadcast independence numbers of trees, with a closed form for caterpillars."""

from __future__ import annotations

from .broadcast import (
    Broadcast,
    canonical_broadcast,
    is_dominating,
    is_independent,
    is_maximal_independent,
    is_valid_broadcast,
)
from .construct import ConstructionTrace, Witness, construct_witness, construction_trace
from .errors import (
    BroadcastToolkitError,
    BudgetExceededError,
    InvariantViolation,
    UnsupportedInstanceError,
    ValidationError,
)
from .formula import BetaBreakdown, BetaResult, beta_b, beta_b_fastpath, beta_star
from .oracle import OracleOptions, OracleResult, exact_beta_b, naive_beta_b
from .patterns import find_occurrences, parse_pattern
from .tree import Caterpillar, Star, Tree

__all__ = [
    "BetaBreakdown", "BetaResult", "Broadcast", "BroadcastToolkitError", "BudgetExceededError",
    "Caterpillar", "ConstructionTrace", "InvariantViolation", "OracleOptions", "OracleResult",
    "Star", "Tree", "UnsupportedInstanceError", "ValidationError", "Witness", "beta_b",
    "beta_b_fastpath", "beta_star", "canonical_broadcast", "construct_witness",
    "construction_trace", "exact_beta_b", "find_occurrences", "is_dominating", "is_independent",
    "is_maximal_independent", "is_valid_broadcast", "naive_beta_b", "parse_pattern",
]
