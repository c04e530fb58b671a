"""Weighted bipartite graphs, coverage accounting, random generation and JSON I/O.

Nodes on the X side carry costs, nodes on the Y side carry weights.  Ids on
both sides are dense and 0-based; adjacency lists are kept sorted so every
iteration over a graph is deterministic.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "BipartiteGraph",
    "CoverInstance",
    "CoverSolution",
    "GraphError",
    "GraphFormatError",
    "validate_graph",
    "covered_weight",
    "selection_cost",
    "generate_biregular",
    "sample_integer_weights",
    "random_weighted_biregular",
    "random_bipartite",
    "load_graph",
    "store_graph",
    "graph_to_dict",
    "graph_from_dict",
]

MAX_REPAIRS = 100
MAX_RESAMPLES = 50


class GraphError(ValueError):
    """Invalid graph, selection or generator arguments."""


class GraphFormatError(GraphError):
    """A graph file could not be parsed."""


def _frozen_array(values, dtype=np.float64) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BipartiteGraph:
    """Sparse bipartite adjacency with X-side costs and Y-side weights.

    The constructor stores what it is given without checking it, so that
    malformed graphs can be built and diagnosed with :func:`validate_graph`.
    Use :meth:`from_edges` to build a graph that is known to be consistent.
    """

    n_x: int
    n_y: int
    x_weights: np.ndarray
    y_weights: np.ndarray
    adj_x: tuple[tuple[int, ...], ...]
    adj_y: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "x_weights", _frozen_array(self.x_weights))
        object.__setattr__(self, "y_weights", _frozen_array(self.y_weights))
        object.__setattr__(self, "adj_x", tuple(tuple(int(a) for a in nb) for nb in self.adj_x))
        object.__setattr__(self, "adj_y", tuple(tuple(int(i) for i in nb) for nb in self.adj_y))

    @classmethod
    def from_edges(
        cls,
        n_x: int,
        n_y: int,
        x_weights: Sequence[float],
        y_weights: Sequence[float],
        edges: Iterable[tuple[int, int]],
    ) -> "BipartiteGraph":
        """Build a graph from an edge list, rejecting duplicates and bad ids."""
        adj_x: list[list[int]] = [[] for _ in range(n_x)]
        adj_y: list[list[int]] = [[] for _ in range(n_y)]
        seen = set()
        for k, (i, a) in enumerate(edges):
            i, a = int(i), int(a)
            if not 0 <= i < n_x:
                raise GraphError(f"edge {k}: x id {i} out of range [0, {n_x})")
            if not 0 <= a < n_y:
                raise GraphError(f"edge {k}: y id {a} out of range [0, {n_y})")
            if (i, a) in seen:
                raise GraphError(f"edge {k}: duplicate edge ({i}, {a})")
            seen.add((i, a))
            adj_x[i].append(a)
            adj_y[a].append(i)
        g = cls(
            n_x=n_x,
            n_y=n_y,
            x_weights=x_weights,
            y_weights=y_weights,
            adj_x=tuple(tuple(sorted(nb)) for nb in adj_x),
            adj_y=tuple(tuple(sorted(nb)) for nb in adj_y),
        )
        problems = validate_graph(g)
        if problems:
            raise GraphError("; ".join(problems))
        return g

    @cached_property
    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        """Edge endpoint arrays ``(x_ids, y_ids)`` ordered by (x, y)."""
        xs = [i for i, nb in enumerate(self.adj_x) for _ in nb]
        ys = [a for nb in self.adj_x for a in nb]
        return _frozen_array(xs, np.int64), _frozen_array(ys, np.int64)

    @property
    def n_edges(self) -> int:
        return sum(len(nb) for nb in self.adj_x)

    def edge_list(self) -> list[tuple[int, int]]:
        return [(i, a) for i, nb in enumerate(self.adj_x) for a in nb]

    def degrees(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.array([len(nb) for nb in self.adj_x], dtype=np.int64),
            np.array([len(nb) for nb in self.adj_y], dtype=np.int64),
        )

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            self.n_x == other.n_x
            and self.n_y == other.n_y
            and np.array_equal(self.x_weights, other.x_weights)
            and np.array_equal(self.y_weights, other.y_weights)
            and self.adj_x == other.adj_x
            and self.adj_y == other.adj_y
        )

    __hash__ = None


@dataclass(frozen=True)
class CoverInstance:
    """A graph together with the budget on total selected cost."""

    graph: BipartiteGraph
    budget: float

    def __post_init__(self):
        if not self.budget >= 0:
            raise GraphError(f"budget must be nonnegative, got {self.budget}")


@dataclass(frozen=True)
class CoverSolution:
    """Selected X-nodes, their total cost and the Y-weight they cover.

    ``diagnostics`` holds solver-specific extras (BP residuals, oracle
    optimality flags, ...) and is excluded from equality.
    """

    selected: frozenset[int]
    cost: float
    covered_weight: float
    diagnostics: dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_selection(cls, graph: BipartiteGraph, selected: Iterable[int], **diagnostics):
        sel = frozenset(int(i) for i in selected)
        return cls(sel, selection_cost(graph, sel), covered_weight(graph, sel), dict(diagnostics))

    def to_dict(self) -> dict:
        return {
            "selected": sorted(self.selected),
            "cost": self.cost,
            "covered_weight": self.covered_weight,
            "diagnostics": self.diagnostics,
        }


def validate_graph(g: BipartiteGraph) -> list[str]:
    """Return every invariant violation found in ``g`` (empty list if valid)."""
    problems = []
    if g.n_x < 0 or g.n_y < 0:
        problems.append(f"negative node count (n_x={g.n_x}, n_y={g.n_y})")
    if len(g.x_weights) != g.n_x:
        problems.append(f"x_weights has length {len(g.x_weights)}, expected {g.n_x}")
    if len(g.y_weights) != g.n_y:
        problems.append(f"y_weights has length {len(g.y_weights)}, expected {g.n_y}")
    for side, w in (("x", g.x_weights), ("y", g.y_weights)):
        bad = np.flatnonzero(~(np.isfinite(w) & (w >= 0)))
        if bad.size:
            problems.append(f"{side}_weights: negative or non-finite weight at ids {bad.tolist()}")
    if len(g.adj_x) != g.n_x:
        problems.append(f"adj_x has {len(g.adj_x)} lists, expected {g.n_x}")
    if len(g.adj_y) != g.n_y:
        problems.append(f"adj_y has {len(g.adj_y)} lists, expected {g.n_y}")

    from_x, from_y = set(), set()
    for side, adj, other_n, out, flip in (
        ("x", g.adj_x, g.n_y, from_x, False),
        ("y", g.adj_y, g.n_x, from_y, True),
    ):
        for node, nb in enumerate(adj):
            if list(nb) != sorted(nb):
                problems.append(f"adj_{side}[{node}] is not sorted")
            if len(set(nb)) != len(nb):
                problems.append(f"adj_{side}[{node}] has duplicate edges")
            for other in nb:
                if not 0 <= other < other_n:
                    problems.append(f"adj_{side}[{node}] references id {other} out of range")
                out.add((other, node) if flip else (node, other))
    for i, a in sorted(from_x - from_y):
        problems.append(f"asymmetric edge ({i}, {a}): in adj_x but not adj_y")
    for i, a in sorted(from_y - from_x):
        problems.append(f"asymmetric edge ({i}, {a}): in adj_y but not adj_x")
    return problems


def _check_ids(g: BipartiteGraph, selected: Iterable[int]) -> list[int]:
    ids = sorted({int(i) for i in selected})
    if ids and not (0 <= ids[0] and ids[-1] < g.n_x):
        bad = [i for i in ids if not 0 <= i < g.n_x]
        raise GraphError(f"selected ids {bad} out of range [0, {g.n_x})")
    return ids


def covered_weight(g: BipartiteGraph, selected: Iterable[int]) -> float:
    """Total weight of Y-nodes adjacent to at least one selected X-node.

    Summed with :func:`math.fsum`, so the value depends only on the covered
    set and not on the order it was reached in.
    """
    covered = {a for i in _check_ids(g, selected) for a in g.adj_x[i]}
    return math.fsum(g.y_weights[a] for a in sorted(covered))


def selection_cost(g: BipartiteGraph, selected: Iterable[int]) -> float:
    return math.fsum(g.x_weights[i] for i in _check_ids(g, selected))


def _resolve_rng(rng_seed) -> np.random.Generator:
    if isinstance(rng_seed, np.random.Generator):
        return rng_seed
    return np.random.default_rng(rng_seed)


def _repair_duplicates(pairs: np.ndarray, rng: np.random.Generator) -> bool:
    """Remove repeated edges in place with double-edge swaps.

    Returns False if ``MAX_REPAIRS`` consecutive swap attempts fail.
    """
    counts = Counter(map(tuple, pairs.tolist()))
    failures = 0
    while True:
        dups = [k for k, (i, a) in enumerate(pairs.tolist()) if counts[(i, a)] > 1]
        if not dups:
            return True
        p = dups[int(rng.integers(len(dups)))]
        q = int(rng.integers(len(pairs)))
        (i, a), (j, b) = pairs[p].tolist(), pairs[q].tolist()
        if i == j or a == b or counts[(i, b)] or counts[(j, a)]:
            failures += 1
            if failures >= MAX_REPAIRS:
                return False
            continue
        for old in ((i, a), (j, b)):
            counts[old] -= 1
        counts[(i, b)] += 1
        counts[(j, a)] += 1
        pairs[p] = (i, b)
        pairs[q] = (j, a)
        failures = 0


def generate_biregular(n_x: int, n_y: int, deg_x: int, deg_y: int, rng_seed=None) -> BipartiteGraph:
    """Sample a simple bipartite graph with all X-degrees ``deg_x`` and Y-degrees ``deg_y``.

    Configuration model: stubs are matched by a random permutation, repeated
    edges are removed by double-edge swaps, and after ``MAX_REPAIRS`` failed
    swaps the whole matching is resampled.  All weights are set to 1.
    """
    if min(n_x, n_y, deg_x, deg_y) < 0:
        raise GraphError("node counts and degrees must be nonnegative")
    if n_x * deg_x != n_y * deg_y:
        raise GraphError(f"handshake condition violated: {n_x}*{deg_x} != {n_y}*{deg_y}")
    if deg_x > n_y or deg_y > n_x:
        raise GraphError(f"degrees ({deg_x}, {deg_y}) exceed opposite side sizes ({n_y}, {n_x})")
    rng = _resolve_rng(rng_seed)
    stubs_x = np.repeat(np.arange(n_x), deg_x)
    stubs_y = np.repeat(np.arange(n_y), deg_y)
    for _ in range(MAX_RESAMPLES):
        pairs = np.column_stack([stubs_x, rng.permutation(stubs_y)])
        if _repair_duplicates(pairs, rng):
            return BipartiteGraph.from_edges(n_x, n_y, np.ones(n_x), np.ones(n_y), pairs.tolist())
    raise GraphError(f"could not sample a simple biregular graph after {MAX_RESAMPLES} resamples")


def sample_integer_weights(n: int, lo: int, hi: int, rng_seed=None) -> np.ndarray:
    """``n`` integers drawn uniformly from ``{lo, ..., hi}``, returned as float64."""
    if lo > hi:
        raise GraphError(f"empty weight range: lo={lo} > hi={hi}")
    rng = _resolve_rng(rng_seed)
    return rng.integers(lo, hi + 1, size=n).astype(np.float64)


def with_weights(g: BipartiteGraph, x_weights=None, y_weights=None) -> BipartiteGraph:
    return BipartiteGraph(
        g.n_x,
        g.n_y,
        g.x_weights if x_weights is None else x_weights,
        g.y_weights if y_weights is None else y_weights,
        g.adj_x,
        g.adj_y,
    )


def random_weighted_biregular(
    n_x: int, n_y: int, deg_x: int, deg_y: int, lo: int = 1, hi: int = 10, seed=None
) -> BipartiteGraph:
    """Biregular graph with X costs and Y weights uniform on ``{lo, ..., hi}``.

    Structure and both weight vectors use independent streams spawned from
    ``seed``.
    """
    s_graph, s_cx, s_wy = np.random.SeedSequence(seed).spawn(3)
    g = generate_biregular(n_x, n_y, deg_x, deg_y, np.random.default_rng(s_graph))
    return with_weights(
        g,
        sample_integer_weights(n_x, lo, hi, np.random.default_rng(s_cx)),
        sample_integer_weights(n_y, lo, hi, np.random.default_rng(s_wy)),
    )


def random_bipartite(
    n_x: int, n_y: int, max_deg: int, lo: int = 1, hi: int = 10, seed=None
) -> BipartiteGraph:
    """Graph whose X-nodes each pick 1..``max_deg`` distinct Y neighbours uniformly.

    Costs and weights are uniform integers on ``{lo, ..., hi}``.  Y-nodes may
    end up isolated.
    """
    if n_y < 1 and n_x > 0:
        raise GraphError("X-nodes need at least one Y-node to attach to")
    rng = _resolve_rng(seed)
    edges = []
    for i in range(n_x):
        k = int(rng.integers(1, min(max_deg, n_y) + 1))
        edges.extend((i, int(a)) for a in rng.choice(n_y, size=k, replace=False))
    return BipartiteGraph.from_edges(
        n_x, n_y, sample_integer_weights(n_x, lo, hi, rng), sample_integer_weights(n_y, lo, hi, rng), edges
    )


def graph_to_dict(g: BipartiteGraph) -> dict:
    return {
        "n_x": g.n_x,
        "n_y": g.n_y,
        "x_weights": [float(c) for c in g.x_weights],
        "y_weights": [float(w) for w in g.y_weights],
        "edges": [[i, a] for i, a in g.edge_list()],
    }


def graph_from_dict(data, source: str = "<graph>") -> BipartiteGraph:
    if not isinstance(data, dict):
        raise GraphFormatError(f"{source}: top level must be a JSON object")
    for key in ("n_x", "n_y", "x_weights", "y_weights", "edges"):
        if key not in data:
            raise GraphFormatError(f"{source}: missing field '{key}'")
    n_x, n_y = data["n_x"], data["n_y"]
    for key, n in (("n_x", n_x), ("n_y", n_y)):
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise GraphFormatError(f"{source}: field '{key}' must be a nonnegative integer, got {n!r}")
    for key in ("x_weights", "y_weights"):
        w = data[key]
        if not isinstance(w, list):
            raise GraphFormatError(f"{source}: field '{key}' must be an array")
        for k, v in enumerate(w):
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v) or v < 0:
                raise GraphFormatError(f"{source}: field '{key}'[{k}] must be a nonnegative number, got {v!r}")
    if len(data["x_weights"]) != n_x or len(data["y_weights"]) != n_y:
        raise GraphFormatError(f"{source}: weight arrays must have lengths n_x={n_x} and n_y={n_y}")
    edges = data["edges"]
    if not isinstance(edges, list):
        raise GraphFormatError(f"{source}: field 'edges' must be an array")
    for k, e in enumerate(edges):
        if (
            not isinstance(e, list)
            or len(e) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in e)
        ):
            raise GraphFormatError(f"{source}: field 'edges'[{k}] must be an [x_id, y_id] integer pair, got {e!r}")
    try:
        return BipartiteGraph.from_edges(n_x, n_y, data["x_weights"], data["y_weights"], edges)
    except GraphFormatError:
        raise
    except GraphError as exc:
        raise GraphFormatError(f"{source}: field 'edges': {exc}") from exc


def store_graph(g: BipartiteGraph, path) -> None:
    Path(path).write_text(json.dumps(graph_to_dict(g)) + "\n", encoding="utf-8")


def load_graph(path) -> BipartiteGraph:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return graph_from_dict(data, str(path))
