"""Greedy budgeted coverage: the cost-ratio rule and the plain coverage rule."""

from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np

from ..graph import BipartiteGraph, CoverInstance, CoverSolution

__all__ = ["g_greedy", "simple_greedy", "budget_loop", "ratio", "static_order_selection"]


def ratio(numerator: np.ndarray, costs: np.ndarray) -> np.ndarray:
    """Elementwise ``numerator / costs`` with zero-cost nodes scored +inf."""
    numerator = np.asarray(numerator, dtype=np.float64)
    out = np.full(numerator.shape, np.inf)
    pos = costs > 0
    out[pos] = numerator[pos] / costs[pos]
    return out


def budget_loop(
    g: BipartiteGraph,
    budget: float,
    pick: Callable[[np.ndarray], int],
    on_accept: Optional[Callable[[int], None]] = None,
) -> list[int]:
    """Run the candidate loop shared by every solver.

    ``pick(remaining)`` returns the next candidate among the nodes flagged in
    the boolean mask ``remaining``.  The candidate is kept if the running cost
    stays within ``budget`` and is removed from the pool either way.
    Returns accepted ids in acceptance order.
    """
    remaining = np.ones(g.n_x, dtype=bool)
    chosen: list[int] = []
    costs: list[float] = []
    for _ in range(g.n_x):
        k = pick(remaining)
        c_k = float(g.x_weights[k])
        if math.fsum([*costs, c_k]) <= budget:
            chosen.append(k)
            costs.append(c_k)
            if on_accept is not None:
                on_accept(k)
        remaining[k] = False
    return chosen


def _marginal_greedy(inst: CoverInstance, divide_by_cost: bool) -> list[int]:
    g = inst.graph
    ex, ey = g.edges
    uncovered = np.ones(g.n_y, dtype=bool)

    def score():
        gains = np.bincount(ex, weights=np.where(uncovered[ey], g.y_weights[ey], 0.0), minlength=g.n_x)
        return ratio(gains, g.x_weights) if divide_by_cost else gains

    scores = score()

    def pick(remaining):
        return int(np.argmax(np.where(remaining, scores, -np.inf)))

    def accept(k):
        nonlocal scores
        newly = [a for a in g.adj_x[k] if uncovered[a]]
        if newly:
            uncovered[newly] = False
            scores = score()

    return budget_loop(g, inst.budget, pick, accept)


def g_greedy(inst: CoverInstance) -> CoverSolution:
    """Greedy selection by uncovered weight per unit cost.

    Candidates are taken in order of ``(sum of uncovered neighbour weight) /
    cost``, re-evaluated after every accepted node; a candidate that would
    overflow the budget is discarded and the loop continues until every node
    has been considered.  Ties go to the lowest id; zero-cost nodes rank first.
    """
    order = _marginal_greedy(inst, divide_by_cost=True)
    return CoverSolution.from_selection(inst.graph, order, solver="g-greedy", order=order)


def simple_greedy(inst: CoverInstance) -> CoverSolution:
    """Same loop as :func:`g_greedy` but ranked by uncovered weight alone."""
    order = _marginal_greedy(inst, divide_by_cost=False)
    return CoverSolution.from_selection(inst.graph, order, solver="greedy", order=order)


def static_order_selection(inst: CoverInstance, scores: np.ndarray) -> list[int]:
    """Budget loop over fixed scores: highest first, lowest id on ties."""
    order = iter(np.argsort(-np.asarray(scores), kind="stable").tolist())
    return budget_loop(inst.graph, inst.budget, lambda remaining: next(order))
