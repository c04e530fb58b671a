"""Belief propagation for weighted budgeted maximum coverage.

Messages live on edges.  ``h[e]`` is the cavity field sent from the X-node
of edge ``e`` to its Y-node, ``h_hat[e]`` the field sent back.  Edges are
indexed in the graph's canonical (x, y) order, see ``BipartiteGraph.edges``.

One sweep updates

    h_ia     = -mu * c_i + sum_{b in N(i) - a} h_hat_bi
    h_hat_ai = -(1/beta) * log(1 - sigmoid(beta * w_a) * prod_{j in N(a) - i} 1 / (exp(beta * h_ja) + 1))

synchronously: every ``h`` from the previous ``h_hat``, then every ``h_hat``
from the new ``h``.  The product is carried in log space as a sum of
softplus terms, which keeps the update finite for beta in the hundreds.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..graph import BipartiteGraph, CoverInstance, CoverSolution
from .greedy import ratio, static_order_selection

__all__ = [
    "BPParams",
    "BeliefState",
    "LocalFields",
    "BPError",
    "init_beliefs",
    "bp_sweep",
    "run_bp",
    "bp_local_fields",
    "marginals",
    "bp_solve",
    "bp_rank_scores",
]

log = logging.getLogger(__name__)

_LN2 = np.log(2.0)


class BPError(RuntimeError):
    """A message or field became non-finite."""


@dataclass(frozen=True)
class BPParams:
    beta: float = 3.0
    mu: float = 0.0
    iterations: int = 150
    damping: float = 0.0
    convergence_tol: float = 1e-6

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if not np.isfinite(self.mu):
            raise ValueError(f"mu must be finite, got {self.mu}")
        if int(self.iterations) != self.iterations or self.iterations < 1:
            raise ValueError(f"iterations must be a positive integer, got {self.iterations}")
        if not 0 <= self.damping < 1:
            raise ValueError(f"damping must lie in [0, 1), got {self.damping}")
        if not self.convergence_tol > 0:
            raise ValueError(f"convergence_tol must be positive, got {self.convergence_tol}")

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "mu": self.mu,
            "iterations": self.iterations,
            "damping": self.damping,
            "convergence_tol": self.convergence_tol,
        }


@dataclass
class BeliefState:
    """Per-edge messages plus sweep bookkeeping."""

    h: np.ndarray
    h_hat: np.ndarray
    iteration_count: int = 0
    last_max_delta: float = float("inf")

    def as_dicts(self, g: BipartiteGraph) -> tuple[dict, dict]:
        """Messages keyed by directed edge: ``{(i, a): h_ia}`` and ``{(a, i): h_hat_ai}``."""
        ex, ey = g.edges
        pairs = list(zip(ex.tolist(), ey.tolist()))
        return (
            {(i, a): float(v) for (i, a), v in zip(pairs, self.h)},
            {(a, i): float(v) for (i, a), v in zip(pairs, self.h_hat)},
        )


@dataclass
class LocalFields:
    h_node: np.ndarray
    eta_node: np.ndarray


def init_beliefs(g: BipartiteGraph) -> BeliefState:
    """All-zero messages on every edge."""
    return BeliefState(np.zeros(g.n_edges), np.zeros(g.n_edges))


def _softplus(x):
    return np.logaddexp(0.0, x)


def _factor_message(beta: float, w: np.ndarray, t: np.ndarray) -> np.ndarray:
    """``-(1/beta) * log(1 - sigmoid(beta*w) * exp(-t))`` for ``t >= 0``.

    ``t`` is the summed softplus of the incoming X-messages.  Far from the
    singular point the ``log1p`` form is exact enough; close to it (``t``
    small, ``beta*w`` large) the argument is rewritten as
    ``sigmoid(-z) + sigmoid(z) * (1 - exp(-t))`` to avoid cancellation.
    """
    z = beta * w
    u = -_softplus(-z) - t
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        far = np.log1p(-np.exp(u))
        near = np.logaddexp(-_softplus(z), -_softplus(-z) + np.log(-np.expm1(-t)))
    return -np.where(u < -_LN2, far, near) / beta


def _check_finite(values: np.ndarray, g: BipartiteGraph, what: str):
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        ex, ey = g.edges
        e = int(bad[0])
        raise BPError(f"non-finite {what} on edge (x={int(ex[e])}, y={int(ey[e])}): {values[e]}")


def bp_sweep(g: BipartiteGraph, p: BPParams, s: BeliefState) -> BeliefState:
    """One synchronous, optionally damped, sweep over both message families."""
    ex, ey = g.edges
    if s.h.shape != ex.shape or s.h_hat.shape != ex.shape:
        raise ValueError(f"belief state has {s.h.shape[0]} messages, graph has {ex.shape[0]} edges")
    c = g.x_weights
    d = p.damping

    incoming = np.bincount(ex, weights=s.h_hat, minlength=g.n_x)
    h = -p.mu * c[ex] + incoming[ex] - s.h_hat
    if d:
        h = (1 - d) * h + d * s.h
    _check_finite(h, g, "message h")

    sp = _softplus(p.beta * h)
    total = np.bincount(ey, weights=sp, minlength=g.n_y)
    t = np.maximum(total[ey] - sp, 0.0)
    h_hat = _factor_message(p.beta, g.y_weights[ey], t)
    if d:
        h_hat = (1 - d) * h_hat + d * s.h_hat
    _check_finite(h_hat, g, "message h_hat")

    delta = 0.0
    if h.size:
        delta = float(max(np.max(np.abs(h - s.h)), np.max(np.abs(h_hat - s.h_hat))))
    return BeliefState(h, h_hat, s.iteration_count + 1, delta)


def run_bp(g: BipartiteGraph, p: BPParams, s: BeliefState | None = None, callback=None) -> BeliefState:
    """Run ``p.iterations`` sweeps from ``s`` (zero messages by default).

    ``callback(state)`` is invoked after every sweep.
    """
    s = init_beliefs(g) if s is None else s
    for _ in range(p.iterations):
        s = bp_sweep(g, p, s)
        if callback is not None:
            callback(s)
    if s.last_max_delta >= p.convergence_tol:
        log.debug("BP not converged after %d sweeps: max delta %.3g", s.iteration_count, s.last_max_delta)
    return s


def bp_local_fields(g: BipartiteGraph, p: BPParams, s: BeliefState) -> LocalFields:
    """Full (non-cavity) fields on every X- and Y-node."""
    ex, ey = g.edges
    h_node = -p.mu * g.x_weights + np.bincount(ex, weights=s.h_hat, minlength=g.n_x)
    t = np.bincount(ey, weights=_softplus(p.beta * s.h), minlength=g.n_y)
    eta_node = _factor_message(p.beta, g.y_weights, t)
    for name, v in (("h_i", h_node), ("eta_a", eta_node)):
        bad = np.flatnonzero(~np.isfinite(v))
        if bad.size:
            raise BPError(f"non-finite field {name} at node {int(bad[0])}")
    return LocalFields(h_node, eta_node)


def marginals(fields: LocalFields, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Probabilities ``P(x_i = 1)`` and ``P(y_a = 1)`` implied by the fields."""

    def sigmoid(v):
        return np.exp(-_softplus(-beta * np.asarray(v, dtype=np.float64)))

    return sigmoid(fields.h_node), sigmoid(fields.eta_node)


def bp_rank_scores(g: BipartiteGraph, fields: LocalFields) -> np.ndarray:
    """Selection key ``h_i / c_i``; zero-cost nodes score +inf."""
    return ratio(fields.h_node, g.x_weights)


def bp_solve(inst: CoverInstance, p: BPParams, callback=None) -> CoverSolution:
    """Run BP, compute fields once, then fill the budget in ``h_i / c_i`` order.

    The fields are not refreshed while selecting.  Nodes that do not fit are
    skipped and the scan continues, exactly as in the greedy loop.
    """
    g = inst.graph
    state = run_bp(g, p, callback=callback)
    fields = bp_local_fields(g, p, state)
    order = static_order_selection(inst, bp_rank_scores(g, fields))
    return CoverSolution.from_selection(
        g,
        order,
        solver="bp",
        order=order,
        params=p.to_dict(),
        iterations=state.iteration_count,
        last_max_delta=state.last_max_delta,
        converged=bool(state.last_max_delta < p.convergence_tol),
        h_node=fields.h_node.tolist(),
    )
