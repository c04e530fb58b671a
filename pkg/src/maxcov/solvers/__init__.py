"""Approximate solvers for budgeted maximum coverage."""

from .bp import (
    BeliefState,
    BPError,
    BPParams,
    LocalFields,
    bp_local_fields,
    bp_rank_scores,
    bp_solve,
    bp_sweep,
    init_beliefs,
    marginals,
    run_bp,
)
from .greedy import budget_loop, g_greedy, simple_greedy, static_order_selection

SOLVERS = {"greedy": simple_greedy, "g-greedy": g_greedy}

__all__ = [
    "BeliefState",
    "BPError",
    "BPParams",
    "LocalFields",
    "SOLVERS",
    "bp_local_fields",
    "bp_rank_scores",
    "bp_solve",
    "bp_sweep",
    "budget_loop",
    "g_greedy",
    "init_beliefs",
    "marginals",
    "run_bp",
    "simple_greedy",
    "static_order_selection",
]
