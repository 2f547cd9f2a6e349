"""Wedge-sampling estimators for triadic measures.

Every estimator draws ``k`` independent wedges from some distribution,
checks whether each one is closed, and averages a score in ``[0, 1]``.
Hoeffding's inequality then gives ``|estimate - truth| < eps`` with
probability at least ``1 - delta`` once ``k >= 0.5 * eps**-2 * ln(2/delta)``,
independently of the size of the graph.

Which wedge distribution is used decides what is estimated:

* uniform over all wedges -> global clustering coefficient (and ``T``),
* uniform vertex, then uniform wedge at it -> local clustering coefficient,
* uniform degree-``d`` vertex -> ``C_d`` (and ``T_d`` with reweighted scores),
* uniform over wedges centred in a degree bin -> the bin's closed fraction.

Randomness
----------
Estimators take ``rng`` as an integer seed, a :class:`numpy.random.Generator`
(from which a seed is drawn) or ``None`` (fresh entropy).  The ``k`` draws
are split into fixed-size chunks, each with its own stream derived from the
seed, so results do not depend on ``threads``.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import (
    DegenerateDegreeError,
    EmptyGraphError,
    InsufficientClosureError,
    NoSuchDegreeError,
    NoWedgesError,
    PreconditionError,
)
from .exact import degree_ratio_fraction
from .graph import Graph, decode_pair, pair_count, wedge_counts

__all__ = [
    "DEFAULT_DELTA",
    "DEFAULT_SAMPLES",
    "SamplePlan",
    "WedgeDistribution",
    "Wedge",
    "Estimate",
    "BinEstimate",
    "TriangleSample",
    "sample_size",
    "error_bound",
    "build_wedge_distribution",
    "sample_uniform_wedge",
    "sample_wedges",
    "estimate_global_cc",
    "estimate_triangle_count",
    "estimate_local_cc",
    "estimate_degree_cc",
    "estimate_T_d",
    "estimate_binned_cc",
    "log2_bins",
    "sample_uniform_triangles",
    "triangle_sample_ratio_fraction",
]

DEFAULT_DELTA = 0.001
DEFAULT_SAMPLES = 32_000
CHUNK = 1 << 16

# stream tags keep estimators that share a seed on independent draws
_GLOBAL, _LOCAL, _BIN, _TRIANGLES = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# Hoeffding sample-size calculus
# ---------------------------------------------------------------------------


def _check_delta(delta):
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")


def sample_size(epsilon: float, delta: float) -> int:
    """Samples needed for additive error ``epsilon`` with confidence ``1 - delta``.

    >>> sample_size(0.1, 0.001)
    381
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    _check_delta(delta)
    return max(1, math.ceil(0.5 * math.log(2.0 / delta) / epsilon**2))


def error_bound(k: int, delta: float) -> float:
    """Additive error guaranteed by ``k`` samples at confidence ``1 - delta``."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    _check_delta(delta)
    return math.sqrt(0.5 * math.log(2.0 / delta) / k)


@dataclass(frozen=True)
class SamplePlan:
    """A sample count together with the ``(epsilon, delta)`` guarantee it buys."""

    k: int
    epsilon: float
    delta: float

    @classmethod
    def from_bound(cls, epsilon: float, delta: float = DEFAULT_DELTA) -> "SamplePlan":
        return cls(sample_size(epsilon, delta), epsilon, delta)

    @classmethod
    def from_samples(cls, k: int, delta: float = DEFAULT_DELTA) -> "SamplePlan":
        return cls(int(k), error_bound(k, delta), delta)


def resolve_plan(k: int | None = None, epsilon: float | None = None, delta: float = DEFAULT_DELTA) -> SamplePlan:
    """At most one of ``k`` and ``epsilon``; neither means :data:`DEFAULT_SAMPLES`."""
    if k is not None and epsilon is not None:
        raise ValueError("give either k or epsilon, not both")
    if epsilon is not None:
        return SamplePlan.from_bound(epsilon, delta)
    return SamplePlan.from_samples(DEFAULT_SAMPLES if k is None else k, delta)


# ---------------------------------------------------------------------------
# result containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Estimate:
    """Output of one estimator run.

    ``value`` is the estimate; for coefficient estimators it equals
    ``closed_count / k``.  ``epsilon`` is the Hoeffding error at confidence
    ``1 - delta`` in units of the averaged score; multiply by ``scale`` for
    the bound on ``value`` itself (``W/3`` for triangle counts, ``W_d`` for
    ``T_d``).  Baselines without such a guarantee leave ``epsilon`` unset.
    """

    quantity: str
    value: float
    k: int
    closed_count: int
    seed: int | None
    epsilon: float | None = None
    delta: float | None = None
    scale: float = 1.0
    extra: dict = field(default_factory=dict)

    @property
    def bound(self) -> tuple[float | None, float | None]:
        return (self.epsilon, self.delta)

    @property
    def absolute_bound(self) -> float | None:
        return None if self.epsilon is None else self.epsilon * self.scale

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class WedgeDistribution:
    """Prefix sums of wedge counts over a set of centre vertices.

    ``vertices[i]`` is chosen with probability
    ``(cumulative[i] - cumulative[i - 1]) / total``; ``vertices`` is ``None``
    when it spans the whole graph (``vertices[i] == i``).
    """

    cumulative: np.ndarray
    total: int
    vertices: np.ndarray | None = None

    def probabilities(self) -> np.ndarray:
        return np.diff(self.cumulative, prepend=0) / self.total

    def center_ids(self) -> np.ndarray:
        if self.vertices is None:
            return np.arange(self.cumulative.shape[0], dtype=np.int64)
        return self.vertices


def build_wedge_distribution(g: Graph, vertices: np.ndarray | None = None) -> WedgeDistribution:
    """Vertex distribution ``p_v = W_v / W`` (optionally restricted to ``vertices``)."""
    wv = wedge_counts(g)
    if vertices is not None:
        vertices = np.asarray(vertices, dtype=np.int64)
        wv = wv[vertices]
    cumulative = np.cumsum(wv, dtype=np.int64)
    total = int(cumulative[-1]) if cumulative.size else 0
    if total == 0:
        raise NoWedgesError("no wedges to sample")
    return WedgeDistribution(cumulative, total, vertices)


@dataclass(frozen=True)
class Wedge:
    center: int
    endpoints: tuple[int, int]


# ---------------------------------------------------------------------------
# randomness plumbing
# ---------------------------------------------------------------------------


def seed_from(rng) -> int:
    """Integer seed recorded in estimates; drawn from ``rng`` if it is a Generator."""
    if rng is None:
        return int(np.random.SeedSequence().entropy % (1 << 63))
    if isinstance(rng, np.random.Generator):
        return int(rng.integers(0, 1 << 63))
    return int(rng)


def stream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for the substream ``key`` of ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(int(x) for x in key)))


def _chunks(k: int) -> list[tuple[int, int]]:
    return [(i, min(CHUNK, k - i * CHUNK)) for i in range((k + CHUNK - 1) // CHUNK)]


def _map_chunks(fn, k: int, threads: int):
    chunks = _chunks(k)
    if threads == 0:
        threads = os.cpu_count() or 1
    if threads <= 1 or len(chunks) <= 1:
        return [fn(c, size) for c, size in chunks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda cs: fn(*cs), chunks))


# ---------------------------------------------------------------------------
# wedge draws
# ---------------------------------------------------------------------------


def _locate(dist: WedgeDistribution, u):
    """Centre and pair index of wedge number ``u`` in ``[0, total)``."""
    pos = np.searchsorted(dist.cumulative, u, side="right")
    start = np.where(pos > 0, dist.cumulative[np.maximum(pos - 1, 0)], 0)
    centers = pos if dist.vertices is None else dist.vertices[pos]
    return centers, u - start


def _endpoints(g: Graph, centers, pair_index):
    ia, ib = decode_pair(pair_index)
    base = g.indptr[centers]
    return g.indices[base + ia], g.indices[base + ib]


def sample_uniform_wedge(g: Graph, dist: WedgeDistribution, rng: np.random.Generator) -> Wedge:
    """One wedge, each of the ``dist.total`` wedges having probability ``1/total``.

    A single uniform index in ``[0, total)`` selects the centre through the
    prefix sums; its offset inside the centre's block is the pair index.
    """
    u = int(rng.integers(0, dist.total))
    c, off = _locate(dist, np.array([u], dtype=np.int64))
    a, b = _endpoints(g, c, off)
    return Wedge(int(c[0]), (int(a[0]), int(b[0])))


def sample_wedges(g: Graph, dist: WedgeDistribution, k: int, seed: int, key=(_GLOBAL,), threads: int = 1):
    """Draw ``k`` uniform wedges of ``dist``; returns ``(centers, a, b, closed)`` arrays."""

    def draw(chunk, size):
        rng = stream(seed, *key, chunk)
        u = rng.integers(0, dist.total, size=size, dtype=np.int64)
        centers, off = _locate(dist, u)
        a, b = _endpoints(g, centers, off)
        return centers, a, b, _kernels.closed_mask(g.indptr, g.indices, a, b)

    parts = _map_chunks(draw, k, threads)
    return tuple(np.concatenate(col) for col in zip(*parts))


# ---------------------------------------------------------------------------
# estimators
# ---------------------------------------------------------------------------


def _require_wedges(g: Graph) -> int:
    W = int(wedge_counts(g).sum())
    if W == 0:
        raise NoWedgesError("graph has no wedges")
    return W


def estimate_global_cc(
    g: Graph,
    k: int | None = None,
    rng=None,
    *,
    epsilon: float | None = None,
    delta: float = DEFAULT_DELTA,
    dist: WedgeDistribution | None = None,
    threads: int = 1,
) -> Estimate:
    """Fraction of closed wedges among ``k`` uniform random wedges.

    Pass either ``k`` or ``epsilon`` (the other is derived at confidence
    ``1 - delta``).  A prebuilt ``dist`` skips the O(n) setup.
    """
    plan = resolve_plan(k, epsilon, delta)
    if dist is None:
        _require_wedges(g)
        dist = build_wedge_distribution(g)
    seed = seed_from(rng)
    closed = int(np.count_nonzero(sample_wedges(g, dist, plan.k, seed, (_GLOBAL,), threads)[3]))
    return Estimate("global_cc", closed / plan.k, plan.k, closed, seed, plan.epsilon, plan.delta)


def estimate_triangle_count(
    g: Graph,
    k: int | None = None,
    rng=None,
    *,
    epsilon: float | None = None,
    delta: float = DEFAULT_DELTA,
    dist: WedgeDistribution | None = None,
    threads: int = 1,
) -> Estimate:
    """``X * W / 3`` where ``X`` is the global-coefficient estimate (same draws)."""
    if dist is None:
        _require_wedges(g)
        dist = build_wedge_distribution(g)
    est = estimate_global_cc(g, k, rng, epsilon=epsilon, delta=delta, dist=dist, threads=threads)
    scale = dist.total / 3
    return Estimate(
        "triangles", est.closed_count * scale / est.k, est.k, est.closed_count,
        est.seed, est.epsilon, est.delta, scale=scale,
    )


def estimate_local_cc(
    g: Graph,
    k: int | None = None,
    rng=None,
    *,
    epsilon: float | None = None,
    delta: float = DEFAULT_DELTA,
    include_low_degree: bool = True,
    threads: int = 1,
) -> Estimate:
    """Closed fraction of wedges centred at uniformly chosen vertices.

    By default all ``n`` vertices are eligible and a vertex of degree < 2
    scores 0, matching ``C_v = 0`` in the exact local coefficient.  With
    ``include_low_degree=False`` only vertices of degree >= 2 are drawn and
    the target becomes their mean ``C_v``.
    """
    plan = resolve_plan(k, epsilon, delta)
    if g.n == 0:
        raise EmptyGraphError("graph has no vertices")
    wv = wedge_counts(g)
    universe = None if include_low_degree else np.flatnonzero(wv > 0)
    size = g.n if universe is None else universe.shape[0]
    if size == 0:
        raise NoWedgesError("no vertex of degree >= 2")
    seed = seed_from(rng)

    def draw(chunk, count):
        rng_ = stream(seed, _LOCAL, chunk)
        v = rng_.integers(0, size, size=count, dtype=np.int64)
        if universe is not None:
            v = universe[v]
        w = wv[v]
        idx = rng_.integers(0, np.maximum(w, 1), dtype=np.int64)
        ok = w > 0
        a, b = _endpoints(g, v[ok], idx[ok])
        return int(np.count_nonzero(_kernels.closed_mask(g.indptr, g.indices, a, b)))

    closed = sum(_map_chunks(draw, plan.k, threads))
    return Estimate(
        "local_cc", closed / plan.k, plan.k, closed, seed, plan.epsilon, plan.delta,
        extra={"include_low_degree": include_low_degree},
    )


def _bin_distribution(g: Graph, lo: int, hi: int) -> WedgeDistribution:
    members = np.flatnonzero((g.degrees > lo) & (g.degrees <= hi) & (g.degrees >= 2))
    return build_wedge_distribution(g, members)


def _degree_draws(g: Graph, d: int, k: int, seed: int, threads: int):
    if d < 2:
        raise DegenerateDegreeError(f"degree {d} has no wedges")
    if not np.any(g.degrees == d):
        raise NoSuchDegreeError(f"no vertex of degree {d}")
    dist = _bin_distribution(g, d - 1, d)
    return dist, sample_wedges(g, dist, k, seed, (_BIN, d - 1, d), threads)


def estimate_degree_cc(
    g: Graph,
    d: int,
    k: int | None = None,
    rng=None,
    *,
    epsilon: float | None = None,
    delta: float = DEFAULT_DELTA,
    threads: int = 1,
) -> Estimate:
    """Closed fraction of wedges centred at uniformly chosen degree-``d`` vertices.

    Identical, draw for draw, to :func:`estimate_binned_cc` on the bin
    ``(d - 1, d]`` with the same seed.
    """
    plan = resolve_plan(k, epsilon, delta)
    seed = seed_from(rng)
    _, (_, _, _, closed) = _degree_draws(g, d, plan.k, seed, threads)
    c = int(np.count_nonzero(closed))
    return Estimate(
        "degree_cc", c / plan.k, plan.k, c, seed, plan.epsilon, plan.delta, extra={"degree": d}
    )


def estimate_T_d(
    g: Graph,
    d: int,
    k: int | None = None,
    rng=None,
    *,
    epsilon: float | None = None,
    delta: float = DEFAULT_DELTA,
    threads: int = 1,
) -> Estimate:
    """Triangles incident to at least one degree-``d`` vertex.

    A closed wedge whose triangle has ``j`` corners of degree ``d`` scores
    ``1/j``; the mean score times ``W_d`` is unbiased for ``T_d`` because a
    triangle with ``j`` such corners is hit by exactly ``j`` of the sampled
    wedge population.
    """
    plan = resolve_plan(k, epsilon, delta)
    seed = seed_from(rng)
    dist, (_, a, b, closed) = _degree_draws(g, d, plan.k, seed, threads)
    deg = g.degrees
    corners = 1 + (deg[a[closed]] == d).astype(np.int64) + (deg[b[closed]] == d).astype(np.int64)
    hits = np.bincount(corners, minlength=4)
    score = hits[1] + hits[2] / 2 + hits[3] / 3
    W_d = dist.total
    return Estimate(
        "T_d", float(W_d * score / plan.k), plan.k, int(hits.sum()), seed, plan.epsilon, plan.delta,
        scale=float(W_d),
        extra={"degree": d, "closed_by_corners": [int(hits[1]), int(hits[2]), int(hits[3])]},
    )


def log2_bins(max_degree: int, degrees: np.ndarray | None = None) -> list[tuple[int, int]]:
    """Logarithmic degree bins ``(2**(i-1), 2**i]`` for ``i >= 1`` covering ``max_degree``.

    Degrees 0 and 1 carry no wedges and belong to no bin.  If ``degrees``
    is given, only bins containing at least one of them are returned.
    """
    bins = []
    hi = 2
    while True:
        bins.append((hi // 2, hi))
        if hi >= max_degree:
            break
        hi *= 2
    if degrees is not None:
        present = np.unique(np.asarray(degrees))
        bins = [(lo, hi) for lo, hi in bins if np.any((present > lo) & (present <= hi))]
    return bins


@dataclass(frozen=True)
class BinEstimate:
    """One degree bin ``lo < d <= hi``; ``estimate`` is ``None`` when the bin was skipped."""

    lo: int
    hi: int
    vertices: int
    wedges: int
    estimate: Estimate | None
    skipped: str | None = None


def estimate_binned_cc(
    g: Graph,
    bins: Sequence[tuple[int, int]] | None = None,
    k: int | None = None,
    rng=None,
    *,
    epsilon: float | None = None,
    delta: float = DEFAULT_DELTA,
    budget: str = "per_bin",
    threads: int = 1,
) -> list[BinEstimate]:
    """Closed-wedge fraction within each degree bin.

    Inside a bin the centre is drawn with probability proportional to its
    wedge count, so every wedge centred in the bin is equally likely.  This
    is the wedge-weighted bin coefficient, which matches the plain mean of
    ``C_v`` over the bin only when all of its degrees are equal.

    ``bins`` defaults to the occupied logarithmic bins.
    ``budget="per_bin"`` spends ``k`` samples in every bin;
    ``budget="total"`` splits ``k`` across bins in proportion to their
    wedges (at least one sample each).  Bins without wedges are returned
    with ``skipped`` set.
    """
    plan = resolve_plan(k, epsilon, delta)
    if budget not in ("per_bin", "total"):
        raise ValueError("budget must be 'per_bin' or 'total'")
    if bins is None:
        bins = log2_bins(g.max_degree, g.degrees)
    seed = seed_from(rng)
    deg = g.degrees
    wv = wedge_counts(g)
    sizes = []
    for lo, hi in bins:
        sel = (deg > lo) & (deg <= hi)
        sizes.append((int(np.count_nonzero(sel)), int(wv[sel].sum())))
    grand = sum(w for _, w in sizes)

    out = []
    for (lo, hi), (nv, nw) in zip(bins, sizes):
        if nw == 0:
            out.append(BinEstimate(lo, hi, nv, 0, None, "no wedges in bin"))
            continue
        kb = plan.k if budget == "per_bin" else max(1, round(plan.k * nw / grand))
        dist = _bin_distribution(g, lo, hi)
        closed = int(np.count_nonzero(sample_wedges(g, dist, kb, seed, (_BIN, lo, hi), threads)[3]))
        est = Estimate(
            "binned_cc", closed / kb, kb, closed, seed, error_bound(kb, plan.delta), plan.delta,
            extra={"lo": lo, "hi": hi},
        )
        out.append(BinEstimate(lo, hi, nv, nw, est))
    return out


# ---------------------------------------------------------------------------
# uniform triangle sampling
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TriangleSample:
    """Triangles drawn i.i.d. uniformly (with replacement) from the graph.

    ``triangles`` holds canonical rows ``a < b < c``; ``degrees`` the
    matching corner degrees; ``draws`` the number of wedges sampled.
    """

    triangles: np.ndarray
    degrees: np.ndarray
    draws: int
    seed: int

    def __len__(self):
        return int(self.triangles.shape[0])


def sample_uniform_triangles(
    g: Graph,
    t_target: int,
    max_wedges: int = 10_000_000,
    rng=None,
    *,
    dist: WedgeDistribution | None = None,
) -> TriangleSample:
    """Sample uniform wedges until ``t_target`` of them are closed.

    Each closed wedge yields its triangle; since every triangle owns exactly
    three wedges, the triangles come out uniform and independent.  Stops
    early after ``max_wedges`` draws.  Duplicates are kept.
    """
    if t_target < 1:
        raise ValueError("t_target must be >= 1")
    if dist is None:
        _require_wedges(g)
        dist = build_wedge_distribution(g)
    seed = seed_from(rng)
    found: list[np.ndarray] = []
    have = 0
    draws = 0
    batch_no = 0
    batch = max(1024, 4 * t_target)
    while have < t_target and draws < max_wedges:
        size = int(min(batch, max_wedges - draws))
        rng_ = stream(seed, _TRIANGLES, batch_no)
        u = rng_.integers(0, dist.total, size=size, dtype=np.int64)
        c, off = _locate(dist, u)
        a, b = _endpoints(g, c, off)
        closed = _kernels.closed_mask(g.indptr, g.indices, a, b)
        hits = np.flatnonzero(closed)
        need = t_target - have
        if hits.shape[0] >= need:
            hits = hits[:need]
            draws += int(hits[-1]) + 1
        else:
            draws += size
        found.append(np.sort(np.stack([c[hits], a[hits], b[hits]], axis=1), axis=1))
        have += hits.shape[0]
        batch_no += 1
        rate = have / draws if have else 1.0 / max(draws, 1)
        batch = max(1024, int(1.2 * (t_target - have) / rate))
    if have == 0:
        raise InsufficientClosureError(draws)
    tris = np.concatenate(found) if found else np.empty((0, 3), np.int64)
    return TriangleSample(tris, g.degrees[tris], draws, seed)


def triangle_sample_ratio_fraction(sample: TriangleSample, r: float) -> float:
    """Share of sampled triangles whose max/min corner degree is at least ``r``."""
    if len(sample) == 0:
        raise PreconditionError("empty triangle sample")
    return degree_ratio_fraction(sample.degrees, r)
