"""Simple undirected graphs in compressed sparse row form.

Vertices are contiguous 0-based IDs; the original labels from the input file
are kept in :attr:`Graph.labels` (sorted, so ``labels[i]`` is the label of
internal vertex ``i``).  Every counter is a 64-bit integer.
"""
from __future__ import annotations

import io
import os
import struct
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import BinaryIO

import numpy as np

from . import _kernels
from .errors import (
    EdgeListParseError,
    GraphCacheError,
    InvalidGraphError,
    PreconditionError,
)

__all__ = [
    "Graph",
    "DegreeIndex",
    "load_edge_list",
    "load_graph",
    "read_graph_cache",
    "write_graph_cache",
    "pair_count",
    "decode_pair",
    "wedge_count",
    "wedge_counts",
    "total_wedges",
    "random_neighbor_pair",
    "has_edge",
    "degree_index",
]

CACHE_MAGIC = b"TRIADGR\x00"
CACHE_VERSION = 1


# ---------------------------------------------------------------------------
# pair arithmetic
# ---------------------------------------------------------------------------


def pair_count(d):
    """Number of unordered pairs ``C(d, 2)`` for a scalar or integer array.

    Halving the even factor first keeps the product inside int64 for any
    degree below 2**32.
    """
    if np.isscalar(d):
        d = int(d)
        return d * (d - 1) // 2 if d >= 2 else 0
    d = np.asarray(d, dtype=np.int64)
    even = (d % 2) == 0
    out = np.where(even, (d // 2) * (d - 1), d * ((d - 1) // 2))
    return np.where(d >= 2, out, 0).astype(np.int64)


def decode_pair(index):
    """Map a pair index ``i`` in ``[0, C(d, 2))`` to positions ``(a, b)`` with ``a < b``.

    The ordering is ``(0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...``, i.e.
    ``b`` is the largest integer with ``C(b, 2) <= i`` and ``a = i - C(b, 2)``.
    The decode does not depend on ``d``, so the same index means the same
    pair in every neighbour list long enough to contain it.
    """
    scalar = np.isscalar(index)
    i = np.atleast_1d(np.asarray(index, dtype=np.int64))
    b = ((1.0 + np.sqrt(1.0 + 8.0 * i.astype(np.float64))) / 2.0).astype(np.int64)
    # float sqrt may be off by one near perfect squares
    for _ in range(2):
        b = np.where(pair_count(b) > i, b - 1, b)
        b = np.where(pair_count(b + 1) <= i, b + 1, b)
    a = i - pair_count(b)
    if scalar:
        return int(a[0]), int(b[0])
    return a, b


# ---------------------------------------------------------------------------
# graph container
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph.

    Attributes
    ----------
    indptr : ndarray of int64, shape (n + 1,)
        Row pointers; the neighbours of ``v`` are ``indices[indptr[v]:indptr[v + 1]]``.
    indices : ndarray of int64, shape (2m,)
        Concatenated neighbour lists, each strictly increasing.
    labels : ndarray of int64, shape (n,)
        Original vertex label of each internal ID.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: np.ndarray
    degrees: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        for name in ("indptr", "indices", "labels"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=np.int64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        deg = np.diff(self.indptr)
        deg.setflags(write=False)
        object.__setattr__(self, "degrees", deg)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def n(self) -> int:
        return int(self.indptr.shape[0] - 1)

    @property
    def m(self) -> int:
        return int(self.indices.shape[0] // 2)

    @cached_property
    def id_map(self) -> dict[int, int]:
        """Original label -> internal ID."""
        return {int(lab): i for i, lab in enumerate(self.labels)}

    @cached_property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        """Each undirected edge once, as ``(u, v)`` arrays with ``u < v``."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        keep = rows < self.indices
        return rows[keep], self.indices[keep]

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        rows = np.repeat(np.arange(self.n), self.degrees)
        a[rows, self.indices] = True
        return a

    # -- construction -------------------------------------------------------

    @classmethod
    def from_edges(cls, u, v, num_vertices: int | None = None, labels=None) -> "Graph":
        """Build a normalized graph from endpoint arrays.

        With ``num_vertices=None`` the endpoints are arbitrary nonnegative
        labels, remapped to contiguous IDs in sorted label order; only labels
        that appear become vertices.  Otherwise ``u`` and ``v`` must already
        be IDs in ``[0, num_vertices)`` and isolated vertices are kept.
        Self-loops, repeated edges and reversed duplicates are dropped.
        """
        u = np.asarray(u, dtype=np.int64).ravel()
        v = np.asarray(v, dtype=np.int64).ravel()
        if u.shape != v.shape:
            raise ValueError("endpoint arrays differ in length")
        if num_vertices is None:
            lab, inv = np.unique(np.concatenate([u, v]), return_inverse=True)
            n = lab.shape[0]
            u, v = inv[: u.shape[0]].astype(np.int64), inv[u.shape[0] :].astype(np.int64)
            if labels is None:
                labels = lab
        else:
            n = int(num_vertices)
            if u.size and (min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= n):
                raise ValueError("vertex ID out of range")
            if labels is None:
                labels = np.arange(n, dtype=np.int64)
        labels = np.asarray(labels, dtype=np.int64)
        if labels.shape[0] != n:
            raise ValueError("labels must have one entry per vertex")

        keep = u != v
        u, v = u[keep], v[keep]
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        key = np.unique(lo * np.int64(max(n, 1)) + hi)
        lo, hi = key // max(n, 1), key % max(n, 1)
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(indptr, dst, labels)

    def subgraph_edges(self, mask: np.ndarray) -> "Graph":
        """Graph on the same vertex set keeping only the edges selected by ``mask``.

        ``mask`` is aligned with :meth:`edges`.
        """
        u, v = self.edges()
        return Graph.from_edges(u[mask], v[mask], num_vertices=self.n, labels=self.labels)

    def validate(self) -> None:
        """Check symmetry, sortedness, absence of loops and the handshake identity."""
        n = self.n
        if self.indptr[0] != 0 or np.any(np.diff(self.indptr) < 0):
            raise InvalidGraphError("indptr must start at 0 and be nondecreasing")
        if self.indptr[-1] != self.indices.shape[0]:
            raise InvalidGraphError("indptr does not cover indices")
        if self.labels.shape[0] != n:
            raise InvalidGraphError("labels length differs from n")
        if self.indices.size and (self.indices.min() < 0 or self.indices.max() >= n):
            raise InvalidGraphError("neighbour ID out of range")
        rows = np.repeat(np.arange(n, dtype=np.int64), self.degrees)
        if np.any(rows == self.indices):
            raise InvalidGraphError("self-loop present")
        same_row = rows[1:] == rows[:-1]
        if np.any(same_row & (self.indices[1:] <= self.indices[:-1])):
            raise InvalidGraphError("neighbour list not strictly increasing")
        fwd = rows * max(n, 1) + self.indices
        rev = np.sort(self.indices * max(n, 1) + rows)
        if not np.array_equal(fwd, rev):
            raise InvalidGraphError("adjacency is not symmetric")
        if int(self.degrees.sum()) != 2 * self.m:
            raise InvalidGraphError("degree sum differs from 2m")


# ---------------------------------------------------------------------------
# loading and caching
# ---------------------------------------------------------------------------


def _read_text(source) -> str:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            data = fh.read()
    else:
        data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="replace")
    return data


def _locate_bad_line(text: str) -> EdgeListParseError:
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) < 2:
            return EdgeListParseError(lineno, line)
        for tok in tokens[:2]:
            try:
                if int(tok) < 0:
                    return EdgeListParseError(lineno, line, "negative vertex label")
            except ValueError:
                return EdgeListParseError(lineno, line, f"non-integer token {tok!r}")
    return EdgeListParseError(0, "", "unparseable edge list")


def load_edge_list(source: str | os.PathLike | BinaryIO | io.TextIOBase) -> Graph:
    """Parse a SNAP-style edge list into a normalized :class:`Graph`.

    One ``u v`` pair per line, whitespace separated; lines starting with
    ``#`` are comments and extra columns are ignored.  Direction, repeated
    edges and self-loops are discarded.  Raises :class:`EdgeListParseError`
    with the 1-based line number of the first malformed line.
    """
    text = _read_text(source)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            pairs = np.loadtxt(
                io.StringIO(text), dtype=np.int64, comments="#", usecols=(0, 1), ndmin=2
            )
    except ValueError:
        raise _locate_bad_line(text) from None
    if pairs.size and pairs.min() < 0:
        raise _locate_bad_line(text)
    return Graph.from_edges(pairs[:, 0], pairs[:, 1])


def write_graph_cache(g: Graph, dest: str | os.PathLike | BinaryIO) -> None:
    """Write the binary cache: magic, version, n, m, degrees, adjacency, labels.

    All integers are little-endian int64.
    """
    header = CACHE_MAGIC + struct.pack("<qqq", CACHE_VERSION, g.n, g.m)
    body = [a.astype("<i8", copy=False).tobytes() for a in (g.degrees, g.indices, g.labels)]
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "wb") as fh:
            fh.write(header)
            for chunk in body:
                fh.write(chunk)
    else:
        dest.write(header)
        for chunk in body:
            dest.write(chunk)


def read_graph_cache(source: str | os.PathLike | BinaryIO) -> Graph:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            data = fh.read()
    else:
        data = source.read()
    hlen = len(CACHE_MAGIC) + 24
    if len(data) < hlen or data[: len(CACHE_MAGIC)] != CACHE_MAGIC:
        raise GraphCacheError("not a graph cache (bad magic)")
    version, n, m = struct.unpack_from("<qqq", data, len(CACHE_MAGIC))
    if version != CACHE_VERSION:
        raise GraphCacheError(f"unsupported cache version {version}")
    expected = hlen + 8 * (n + 2 * m + n)
    if n < 0 or m < 0 or len(data) != expected:
        raise GraphCacheError("cache is truncated or has trailing data")
    arr = np.frombuffer(data, dtype="<i8", offset=hlen).astype(np.int64)
    degrees, indices, labels = arr[:n], arr[n : n + 2 * m], arr[n + 2 * m :]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degrees, out=indptr[1:])
    g = Graph(indptr, indices, labels)
    g.validate()
    return g


def load_graph(path: str | os.PathLike) -> Graph:
    """Load either a binary cache (detected by its magic bytes) or a text edge list."""
    with open(path, "rb") as fh:
        head = fh.read(len(CACHE_MAGIC))
    if head == CACHE_MAGIC:
        return read_graph_cache(path)
    return load_edge_list(path)


# ---------------------------------------------------------------------------
# wedges, adjacency queries, degree bookkeeping
# ---------------------------------------------------------------------------


def _check_vertex(g: Graph, v: int) -> int:
    v = int(v)
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for n={g.n}")
    return v


def wedge_count(g: Graph, v: int) -> int:
    """Number of wedges centred at ``v``: ``C(d_v, 2)``."""
    return pair_count(int(g.degrees[_check_vertex(g, v)]))


def wedge_counts(g: Graph) -> np.ndarray:
    """Per-vertex wedge counts as an int64 array."""
    return pair_count(g.degrees)


def total_wedges(g: Graph) -> int:
    return int(wedge_counts(g).sum())


def has_edge(g: Graph, u: int, w: int) -> bool:
    """True iff ``{u, w}`` is an edge; searches the shorter neighbour list."""
    u, w = _check_vertex(g, u), _check_vertex(g, w)
    return bool(_kernels.adjacent(g.indptr, g.indices, u, w))


def random_neighbor_pair(g: Graph, v: int, rng: np.random.Generator) -> tuple[int, int]:
    """Uniform unordered pair of distinct neighbours of ``v``."""
    v = _check_vertex(g, v)
    d = int(g.degrees[v])
    if d < 2:
        raise PreconditionError(f"vertex {v} has degree {d}; a neighbour pair needs degree >= 2")
    a, b = decode_pair(int(rng.integers(0, pair_count(d))))
    nb = g.neighbors(v)
    return int(nb[a]), int(nb[b])


@dataclass(frozen=True, eq=False)
class DegreeIndex:
    """Vertices grouped by degree.

    ``degrees[i]`` is an occurring degree, ``counts[i]`` its number of
    vertices ``n_d``, ``wedges[i]`` the wedges ``n_d * C(d, 2)`` centred on
    them, and ``vertices[indptr[i]:indptr[i + 1]]`` the sorted vertex IDs.
    """

    degrees: np.ndarray
    counts: np.ndarray
    wedges: np.ndarray
    indptr: np.ndarray
    vertices: np.ndarray

    def position(self, d: int) -> int | None:
        i = int(np.searchsorted(self.degrees, d))
        if i < self.degrees.shape[0] and self.degrees[i] == d:
            return i
        return None

    def vertices_of(self, d: int) -> np.ndarray:
        i = self.position(d)
        if i is None:
            return np.empty(0, dtype=np.int64)
        return self.vertices[self.indptr[i] : self.indptr[i + 1]]

    def count(self, d: int) -> int:
        i = self.position(d)
        return 0 if i is None else int(self.counts[i])

    def wedges_at(self, d: int) -> int:
        i = self.position(d)
        return 0 if i is None else int(self.wedges[i])

    def as_dict(self) -> dict[int, tuple[int, int]]:
        """``{d: (n_d, W_d)}``."""
        return {int(d): (int(c), int(w)) for d, c, w in zip(self.degrees, self.counts, self.wedges)}


def degree_index(g: Graph) -> DegreeIndex:
    order = np.argsort(g.degrees, kind="stable")
    degs, counts = np.unique(g.degrees, return_counts=True)
    indptr = np.zeros(degs.shape[0] + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return DegreeIndex(
        degrees=degs.astype(np.int64),
        counts=counts.astype(np.int64),
        wedges=counts.astype(np.int64) * pair_count(degs),
        indptr=indptr,
        vertices=order.astype(np.int64),
    )
