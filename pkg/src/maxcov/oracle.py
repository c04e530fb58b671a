"""Exact budgeted maximum coverage by depth-first branch and bound.

Meant for verifying the approximate solvers on small instances.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .graph import CoverInstance, CoverSolution, covered_weight

__all__ = ["OracleLimits", "OracleLimitError", "exact_solve"]


class OracleLimitError(ValueError):
    """Instance larger than the oracle is allowed to attempt."""


@dataclass(frozen=True)
class OracleLimits:
    max_x_nodes: int = 25
    time_budget: float = 60.0  # seconds

    def __post_init__(self):
        if self.max_x_nodes <= 0 or not self.time_budget > 0:
            raise ValueError("oracle limits must be positive")


def exact_solve(inst: CoverInstance, lim: OracleLimits = OracleLimits()) -> CoverSolution:
    """Maximum covered weight subject to the budget.

    Nodes are branched in id order, include before exclude.  A subtree is cut
    when it cannot afford its next node or when its optimistic value (covered
    weight plus every uncovered Y-node still reachable from an undecided,
    affordable X-node) cannot beat the incumbent.  Bounds and leaf values are
    summed with ``math.fsum`` so the comparison is exact.

    Among optimal selections the smallest sorted id tuple is returned.  The
    include-first search meets optima in that order except that a proper
    prefix of a set sorts before it, so the winning set's prefixes are checked
    at the end.

    If ``lim.time_budget`` runs out the best selection found so far is
    returned with ``diagnostics["optimal"] = False``.
    """
    g = inst.graph
    if g.n_x > lim.max_x_nodes:
        raise OracleLimitError(f"n_x={g.n_x} exceeds oracle cap max_x_nodes={lim.max_x_nodes}")

    w = g.y_weights
    c = g.x_weights
    budget = inst.budget
    adj = [np.asarray(nb, dtype=np.int64) for nb in g.adj_x]
    cover = np.zeros(g.n_y, dtype=np.int64)
    chosen: list[int] = []
    best = {"value": -math.inf, "sel": (), "nodes": 0, "timed_out": False}
    deadline = time.monotonic() + lim.time_budget

    def value() -> float:
        return math.fsum(w[cover > 0])

    def bound(k: int, cost: float) -> float:
        # widened so rounding never drops a node that the exact test would admit
        slack = (budget - cost) * (1 + 1e-12) + 1e-12
        affordable = [j for j in range(k, g.n_x) if c[j] <= slack]
        mask = cover > 0
        for j in affordable:
            mask[adj[j]] = True
        return math.fsum(w[mask])

    def dfs(k: int, cost: float):
        best["nodes"] += 1
        if best["nodes"] % 1024 == 0 and time.monotonic() > deadline:
            best["timed_out"] = True
        if best["timed_out"]:
            return
        if k == g.n_x:
            v = value()
            if v > best["value"]:
                best["value"], best["sel"] = v, tuple(chosen)
            return
        if best["value"] > -math.inf and bound(k, cost) <= best["value"]:
            return
        if math.fsum([*c[chosen], c[k]]) <= budget:
            chosen.append(k)
            cover[adj[k]] += 1
            dfs(k + 1, math.fsum(c[chosen]))
            cover[adj[k]] -= 1
            chosen.pop()
        dfs(k + 1, cost)

    dfs(0, 0.0)

    sel = best["sel"]
    for m in range(len(sel)):
        if covered_weight(g, sel[:m]) == best["value"]:
            sel = sel[:m]
            break
    return CoverSolution.from_selection(
        g,
        sel,
        solver="exact",
        optimal=not best["timed_out"],
        search_nodes=best["nodes"],
    )
