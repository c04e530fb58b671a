import math

import pytest

from maxcov.graph import BipartiteGraph, CoverInstance, covered_weight, random_bipartite
from maxcov.oracle import OracleLimitError, OracleLimits, exact_solve
from maxcov.solvers import BPParams, bp_solve, g_greedy, simple_greedy

from conftest import brute_force, small_instance


def test_example(example_instance):
    sol = exact_solve(example_instance)
    assert sol.covered_weight == 4
    assert sol.selected == {0}
    assert sol.diagnostics["optimal"]


def test_zero_budget(example_graph):
    sol = exact_solve(CoverInstance(example_graph, 0))
    assert sol.selected == frozenset() and sol.covered_weight == 0


def test_budget_covers_everything():
    g = BipartiteGraph.from_edges(3, 5, [1, 2, 3], [1, 2, 3, 4, 5], [(0, 0), (1, 1), (2, 1), (2, 2)])
    sol = exact_solve(CoverInstance(g, 6))
    assert sol.covered_weight == 1 + 2 + 3  # Y-nodes 3 and 4 are isolated


def test_prefers_shorter_prefix_on_ties():
    # node 1 adds nothing, so {0} and {0, 1} tie; (0,) sorts before (0, 1)
    g = BipartiteGraph.from_edges(2, 1, [1, 1], [5], [(0, 0), (1, 0)])
    assert exact_solve(CoverInstance(g, 2)).selected == {0}


def test_cap_refuses():
    g = random_bipartite(6, 6, 2, seed=0)
    with pytest.raises(OracleLimitError):
        exact_solve(CoverInstance(g, 3), OracleLimits(max_x_nodes=5))


def test_time_budget_returns_best_so_far():
    g = random_bipartite(25, 60, 6, seed=1)
    sol = exact_solve(CoverInstance(g, 40), OracleLimits(time_budget=1e-9))
    assert sol.diagnostics["optimal"] is False
    assert sol.cost <= 40


@pytest.mark.parametrize("seed", range(80))
def test_agrees_with_enumeration(seed):
    inst = small_instance(seed, max_x=12)
    value, sel = brute_force(inst)
    sol = exact_solve(inst)
    assert sol.covered_weight == value
    assert tuple(sorted(sol.selected)) == sel


@pytest.mark.parametrize("seed", range(40))
def test_dominates_heuristics(seed):
    inst = small_instance(seed)
    opt = exact_solve(inst).covered_weight
    assert g_greedy(inst).covered_weight <= opt
    assert simple_greedy(inst).covered_weight <= opt
    for mu in (0.0, 2.0, 5.0):
        assert bp_solve(inst, BPParams(beta=3, mu=mu, iterations=50)).covered_weight <= opt


def test_reaches_25_nodes():
    g = random_bipartite(25, 50, 4, seed=7)
    sol = exact_solve(CoverInstance(g, math.ceil(0.4 * g.x_weights.sum())))
    assert sol.diagnostics["optimal"]
    assert sol.covered_weight >= g_greedy(CoverInstance(g, math.ceil(0.4 * g.x_weights.sum()))).covered_weight
