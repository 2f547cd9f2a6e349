"""Small graph builders used by the tests, demos and benchmarks."""
from __future__ import annotations

from typing import Iterable

import numpy as np

from .graph import Graph


def from_edges(edges: Iterable[tuple[int, int]], num_vertices: int | None = None) -> Graph:
    e = np.array(list(edges), dtype=np.int64).reshape(-1, 2)
    return Graph.from_edges(e[:, 0], e[:, 1], num_vertices=num_vertices)


def from_networkx(nx_graph) -> Graph:
    """Integer-labelled networkx graph -> :class:`Graph`, keeping isolated nodes."""
    nodes = np.array(sorted(nx_graph.nodes()), dtype=np.int64)
    pos = {int(v): i for i, v in enumerate(nodes)}
    e = np.array([(pos[a], pos[b]) for a, b in nx_graph.edges()], dtype=np.int64).reshape(-1, 2)
    return Graph.from_edges(e[:, 0], e[:, 1], num_vertices=len(nodes), labels=nodes)


def gnp(n: int, p: float, seed=None) -> Graph:
    """Erdos-Renyi G(n, p) on ``0..n-1``; isolated vertices are kept."""
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.shape[0]) < p
    return Graph.from_edges(iu[keep], ju[keep], num_vertices=n)


def complete(n: int) -> Graph:
    iu, ju = np.triu_indices(n, k=1)
    return Graph.from_edges(iu, ju, num_vertices=n)


def cycle(n: int) -> Graph:
    v = np.arange(n)
    return Graph.from_edges(v, (v + 1) % n, num_vertices=n)


def path(n: int) -> Graph:
    v = np.arange(n - 1)
    return Graph.from_edges(v, v + 1, num_vertices=n)


def star(leaves: int) -> Graph:
    """Centre 0 joined to leaves ``1..leaves``."""
    return Graph.from_edges(np.zeros(leaves, dtype=np.int64), np.arange(1, leaves + 1), num_vertices=leaves + 1)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edges(outer + spokes + inner, num_vertices=10)


def chung_lu(n: int, m: int, exponent: float = 2.1, seed=None) -> Graph:
    """Heavy-tailed random graph with expected degrees ~ rank^(-1/(exponent-1)).

    Draws ``m`` endpoint pairs proportionally to the weights, then normalizes
    (so the realised edge count is a little below ``m``).
    """
    rng = np.random.default_rng(seed)
    w = (np.arange(1, n + 1, dtype=np.float64)) ** (-1.0 / (exponent - 1.0))
    w /= w.sum()
    u = rng.choice(n, size=m, p=w)
    v = rng.choice(n, size=m, p=w)
    return Graph.from_edges(u, v, num_vertices=n)
