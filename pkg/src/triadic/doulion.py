"""Doulion edge sparsification baseline.

Keep each edge independently with probability ``p``, count triangles exactly
in what is left, and scale by ``p**-3``.  Unbiased for ``T`` (and for each
``T_v``), but with no sample-size guarantee of the Hoeffding kind, so the
returned estimates carry no ``epsilon``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyGraphError, NoWedgesError
from .exact import _raw_stats, local_average, per_vertex_cc
from .graph import Graph, wedge_counts
from .sampling import Estimate, seed_from, stream

__all__ = [
    "SparsifyParams",
    "sparsify",
    "doulion_triangle_estimate",
    "doulion_global_cc",
    "doulion_local_cc",
]

_DOULION = 4


@dataclass(frozen=True)
class SparsifyParams:
    p: float

    def __post_init__(self):
        if not 0.0 < self.p <= 1.0:
            raise ValueError(f"retention probability must lie in (0, 1], got {self.p}")


def _sparsify(g: Graph, p: float, seed: int) -> Graph:
    SparsifyParams(p)
    if p == 1.0:
        return g
    keep = stream(seed, _DOULION).random(g.m) < p
    return g.subgraph_edges(keep)


def sparsify(g: Graph, p: float, rng=None) -> Graph:
    """Subgraph on the same vertex set keeping each edge with probability ``p``."""
    return _sparsify(g, p, seed_from(rng))


def _sparse_counts(g: Graph, p: float, rng):
    seed = seed_from(rng)
    h = _sparsify(g, p, seed)
    if h.n == 0:
        return seed, h, 0, np.zeros(0, np.int64)
    t, tv, _ = _raw_stats(h)
    return seed, h, int(t), tv


def doulion_triangle_estimate(g: Graph, p: float, rng=None) -> Estimate:
    """``T' / p**3`` where ``T'`` is the exact triangle count of the sparsified graph.

    ``k`` records the number of retained edges and ``closed_count`` holds ``T'``.
    """
    seed, h, t, _ = _sparse_counts(g, p, rng)
    return Estimate("triangles", t / p**3, h.m, t, seed, extra={"p": p})


def doulion_global_cc(g: Graph, p: float, rng=None) -> Estimate:
    """``3 * (T' / p**3) / W`` with ``W`` taken from the original graph."""
    W = int(wedge_counts(g).sum())
    if W == 0:
        raise NoWedgesError("graph has no wedges")
    seed, h, t, _ = _sparse_counts(g, p, rng)
    return Estimate("global_cc", 3 * (t / p**3) / W, h.m, t, seed, extra={"p": p})


def doulion_local_cc(g: Graph, p: float, rng=None, clamp: float | None = None) -> Estimate:
    """Mean over all vertices of ``(T'_v / p**3) / W_v``.

    ``W_v`` comes from the original graph and wedge-free vertices contribute
    0.  Per-vertex values are not clipped to 1 unless ``clamp`` is given, so
    the mean can exceed 1 on small ``p``.
    """
    if g.n == 0:
        raise EmptyGraphError("graph has no vertices")
    seed, h, t, tv = _sparse_counts(g, p, rng)
    cv = per_vertex_cc(tv / p**3, wedge_counts(g))
    if clamp is not None:
        cv = np.minimum(cv, clamp)
    return Estimate("local_cc", local_average(cv), h.m, t, seed, extra={"p": p, "clamp": clamp})
