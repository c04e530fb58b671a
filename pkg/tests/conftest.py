import itertools
import math

import numpy as np
import pytest

from maxcov.graph import BipartiteGraph, CoverInstance, covered_weight, random_bipartite


def small_instance(seed, max_x=10, max_y=20, max_deg=5):
    """Random instance from the oracle-check family: n_x <= 10, n_y <= 20, K = ceil(0.4 * sum c)."""
    rng = np.random.default_rng(seed)
    n_x = int(rng.integers(1, max_x + 1))
    n_y = int(rng.integers(1, max_y + 1))
    g = random_bipartite(n_x, n_y, max_deg, seed=rng)
    return CoverInstance(g, math.ceil(0.4 * g.x_weights.sum()))


def brute_force(inst):
    """Best feasible subset by full enumeration; ties to the smallest sorted id tuple."""
    g = inst.graph
    best = (-math.inf, ())
    for r in range(g.n_x + 1):
        for sel in itertools.combinations(range(g.n_x), r):
            if math.fsum(g.x_weights[i] for i in sel) > inst.budget:
                continue
            v = covered_weight(g, sel)
            if v > best[0] or (v == best[0] and sel < best[1]):
                best = (v, sel)
    return best


@pytest.fixture
def example_graph():
    # X = {0, 1}; 0 - {a, b}, 1 - {b, c}; w = (a: 3, b: 1, c: 2); c = (2, 2)
    return BipartiteGraph.from_edges(2, 3, [2, 2], [3, 1, 2], [(0, 0), (0, 1), (1, 1), (1, 2)])


@pytest.fixture
def example_instance(example_graph):
    return CoverInstance(example_graph, 2)


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
