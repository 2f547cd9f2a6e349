"""Exact triangle enumeration and every triadic measure derived from it.

Each edge is assigned to the endpoint of smaller degree (smaller ID breaks
ties); a vertex then checks for closure only the wedges formed by two of its
assigned edges, so every triangle is found exactly once, at its lowest-ranked
vertex.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .errors import UndefinedStatisticError
from .graph import Graph, pair_count, wedge_counts

__all__ = [
    "Triangle",
    "ExactTriadStats",
    "oriented_adjacency",
    "enumerate_triangles",
    "list_triangles",
    "count_triangles",
    "exact_stats",
    "binned_wedge_cc",
    "triangle_degree_ratio_fraction",
    "degree_ratio_fraction",
]


@dataclass(frozen=True)
class Triangle:
    """A triangle in canonical form ``a < b < c`` with the degrees of its corners."""

    a: int
    b: int
    c: int
    degrees: tuple[int, int, int]

    @property
    def vertices(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


def oriented_adjacency(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """CSR of the edges each vertex owns: ``u -> v`` iff ``(d_u, u) < (d_v, v)``."""
    deg = g.degrees
    rows = np.repeat(np.arange(g.n, dtype=np.int64), deg)
    cols = g.indices
    own = (deg[rows] < deg[cols]) | ((deg[rows] == deg[cols]) & (rows < cols))
    out_indices = cols[own]
    out_indptr = np.zeros(g.n + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows[own], minlength=g.n), out=out_indptr[1:])
    return out_indptr, out_indices


def _raw_stats(g: Graph):
    out_indptr, out_indices = oriented_adjacency(g)
    return _kernels.triangle_stats(
        g.indptr, g.indices, g.degrees, out_indptr, out_indices, g.max_degree
    )


def count_triangles(g: Graph) -> int:
    return int(_raw_stats(g)[0]) if g.n else 0


def list_triangles(g: Graph) -> np.ndarray:
    """All triangles as a ``(T, 3)`` int64 array of canonical rows ``a < b < c``."""
    if g.n == 0:
        return np.empty((0, 3), dtype=np.int64)
    out_indptr, out_indices = oriented_adjacency(g)
    total = _kernels.triangle_stats(
        g.indptr, g.indices, g.degrees, out_indptr, out_indices, g.max_degree
    )[0]
    return _kernels.triangle_list(g.indptr, g.indices, out_indptr, out_indices, total)


def enumerate_triangles(g: Graph, consumer: Callable[[Triangle], object] | None = None) -> int:
    """Deliver every triangle once to ``consumer`` and return the total count.

    Without a consumer only the count is computed.
    """
    if consumer is None:
        return count_triangles(g)
    tris = list_triangles(g)
    deg = g.degrees
    for a, b, c in tris.tolist():
        consumer(Triangle(a, b, c, (int(deg[a]), int(deg[b]), int(deg[c]))))
    return int(tris.shape[0])


@dataclass(frozen=True, eq=False)
class ExactTriadStats:
    """Ground-truth triadic measures of a graph.

    Per-vertex arrays are indexed by internal vertex ID.  Per-degree arrays
    are aligned with ``degree_values`` (every degree that occurs, including
    0 and 1).  ``multiplicity[i, j]`` is the number of triangles having
    exactly ``j`` corners of degree ``degree_values[i]`` (column 0 unused).

    Vertices with fewer than two neighbours have ``C_v = 0`` and are
    included in the local average.
    """

    n: int
    m: int
    wedges: int
    triangles: int
    global_cc: float
    local_cc: float
    triangles_per_vertex: np.ndarray
    wedges_per_vertex: np.ndarray
    cc_per_vertex: np.ndarray
    degree_values: np.ndarray
    vertices_per_degree: np.ndarray
    wedges_per_degree: np.ndarray
    closed_wedges_per_degree: np.ndarray
    cc_per_degree: np.ndarray
    triangles_per_degree: np.ndarray
    multiplicity: np.ndarray

    # short aliases matching the usual notation
    @property
    def W(self) -> int:
        return self.wedges

    @property
    def T(self) -> int:
        return self.triangles

    @property
    def C(self) -> float:
        return self.global_cc

    def _pos(self, d: int) -> int:
        i = int(np.searchsorted(self.degree_values, d))
        if i >= self.degree_values.shape[0] or self.degree_values[i] != d:
            raise KeyError(f"no vertex of degree {d}")
        return i

    def cc_at(self, d: int) -> float:
        return float(self.cc_per_degree[self._pos(d)])

    def triangles_at(self, d: int) -> int:
        return int(self.triangles_per_degree[self._pos(d)])

    def wedges_at(self, d: int) -> int:
        return int(self.wedges_per_degree[self._pos(d)])

    def summary(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "wedges": self.wedges,
            "triangles": self.triangles,
            "global_cc": self.global_cc,
            "local_cc": self.local_cc,
        }

    def per_degree_table(self) -> list[dict]:
        return [
            {
                "degree": int(d),
                "vertices": int(nd),
                "wedges": int(w),
                "triangles": int(t),
                "cc": float(c),
            }
            for d, nd, w, t, c in zip(
                self.degree_values,
                self.vertices_per_degree,
                self.wedges_per_degree,
                self.triangles_per_degree,
                self.cc_per_degree,
            )
        ]


def local_average(cc_per_vertex: np.ndarray, include: np.ndarray | None = None) -> float:
    """Mean of per-vertex coefficients, optionally over a subset mask.

    Shared by the oracle and the sparsification baseline so both average
    identically.
    """
    vals = cc_per_vertex if include is None else cc_per_vertex[include]
    return float(vals.mean()) if vals.size else 0.0


def per_vertex_cc(triangles_per_vertex: np.ndarray, wedges_per_vertex: np.ndarray) -> np.ndarray:
    out = np.zeros(triangles_per_vertex.shape[0], dtype=np.float64)
    has = wedges_per_vertex > 0
    out[has] = triangles_per_vertex[has] / wedges_per_vertex[has]
    return out


def exact_stats(g: Graph) -> ExactTriadStats:
    """Enumerate all triangles and compute every exact triadic measure."""
    n = g.n
    wv = wedge_counts(g)
    W = int(wv.sum())
    if n:
        T, tv, mult_full = _raw_stats(g)
        T = int(T)
    else:
        T, tv, mult_full = 0, np.zeros(0, np.int64), np.zeros((1, 4), np.int64)
    cv = per_vertex_cc(tv, wv)

    degs, inverse, counts = np.unique(g.degrees, return_inverse=True, return_counts=True)
    degs = degs.astype(np.int64)
    closed_by_deg = np.zeros(degs.size, dtype=np.int64)
    np.add.at(closed_by_deg, inverse, tv)
    wedges_by_deg = counts.astype(np.int64) * pair_count(degs)
    # every degree-d vertex has the same W_v, so C_d is one integer ratio
    cc_by_deg = np.zeros(degs.size, dtype=np.float64)
    has = wedges_by_deg > 0
    cc_by_deg[has] = closed_by_deg[has] / wedges_by_deg[has]
    mult = mult_full[degs] if degs.size else np.zeros((0, 4), np.int64)
    return ExactTriadStats(
        n=n,
        m=g.m,
        wedges=W,
        triangles=T,
        global_cc=(3 * T / W) if W > 0 else 0.0,
        local_cc=local_average(cv),
        triangles_per_vertex=tv,
        wedges_per_vertex=wv,
        cc_per_vertex=cv,
        degree_values=degs,
        vertices_per_degree=counts.astype(np.int64),
        wedges_per_degree=wedges_by_deg,
        closed_wedges_per_degree=closed_by_deg,
        cc_per_degree=cc_by_deg,
        triangles_per_degree=mult[:, 1:].sum(axis=1) if degs.size else np.zeros(0, np.int64),
        multiplicity=mult,
    )


def binned_wedge_cc(stats: ExactTriadStats, bins: Sequence[tuple[int, int]]) -> list[float | None]:
    """Exact closed-wedge fraction of each degree bin ``lo < d <= hi``.

    ``None`` for bins with no wedges.
    """
    out: list[float | None] = []
    d = stats.degree_values
    for lo, hi in bins:
        sel = (d > lo) & (d <= hi)
        w = int(stats.wedges_per_degree[sel].sum())
        out.append(int(stats.closed_wedges_per_degree[sel].sum()) / w if w else None)
    return out


def degree_ratio_fraction(degree_triples: np.ndarray, r: float) -> float:
    """Fraction of rows whose max/min degree ratio is at least ``r``."""
    triples = np.asarray(degree_triples, dtype=np.int64).reshape(-1, 3)
    if triples.shape[0] == 0:
        raise UndefinedStatisticError("ratio statistic over zero triangles")
    hi = triples.max(axis=1)
    lo = triples.min(axis=1)
    return float(np.count_nonzero(hi >= r * lo) / triples.shape[0])


def triangle_degree_ratio_fraction(g: Graph, r: float) -> float:
    """Exact fraction of triangles with max/min corner-degree ratio >= ``r``."""
    if r < 1:
        raise ValueError("ratio threshold must be >= 1")
    tris = list_triangles(g)
    if tris.shape[0] == 0:
        raise UndefinedStatisticError("graph has no triangles")
    return degree_ratio_fraction(g.degrees[tris], r)
