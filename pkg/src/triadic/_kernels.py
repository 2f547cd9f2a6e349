"""Compiled inner loops: adjacency search, closure checks and triangle enumeration.

All kernels take the CSR arrays directly (``indptr``, ``indices``) so they can
run without the GIL; callers in :mod:`triadic.graph` and :mod:`triadic.exact`
wrap them behind the public API.
"""
import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def adjacent(indptr, indices, u, w):
    # search the shorter of the two sorted neighbour lists
    if u == w:
        return False
    du = indptr[u + 1] - indptr[u]
    dw = indptr[w + 1] - indptr[w]
    if du > dw:
        u, w = w, u
    lo = indptr[u]
    hi = indptr[u + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        if indices[mid] < w:
            lo = mid + 1
        else:
            hi = mid
    return lo < indptr[u + 1] and indices[lo] == w


@njit(cache=True, nogil=True)
def closed_mask(indptr, indices, a, b):
    out = np.empty(a.shape[0], dtype=np.bool_)
    for i in range(a.shape[0]):
        out[i] = adjacent(indptr, indices, a[i], b[i])
    return out


@njit(cache=True, nogil=True)
def triangle_stats(indptr, indices, degrees, out_indptr, out_indices, max_degree):
    """Count triangles once each at their lowest-ranked vertex.

    Returns the total, per-vertex counts, per-degree incidence (each triangle
    counted once per distinct degree it touches) and a ``(max_degree + 1, 4)``
    table whose column ``i`` holds the number of triangles with exactly ``i``
    vertices of that degree.
    """
    n = indptr.shape[0] - 1
    per_vertex = np.zeros(n, dtype=np.int64)
    multiplicity = np.zeros((max_degree + 1, 4), dtype=np.int64)
    total = 0
    for u in range(n):
        lo = out_indptr[u]
        hi = out_indptr[u + 1]
        for i in range(lo, hi):
            v = out_indices[i]
            for j in range(i + 1, hi):
                w = out_indices[j]
                if adjacent(indptr, indices, v, w):
                    total += 1
                    per_vertex[u] += 1
                    per_vertex[v] += 1
                    per_vertex[w] += 1
                    du = degrees[u]
                    dv = degrees[v]
                    dw = degrees[w]
                    if du == dv and dv == dw:
                        multiplicity[du, 3] += 1
                    elif du == dv:
                        multiplicity[du, 2] += 1
                        multiplicity[dw, 1] += 1
                    elif du == dw:
                        multiplicity[du, 2] += 1
                        multiplicity[dv, 1] += 1
                    elif dv == dw:
                        multiplicity[dv, 2] += 1
                        multiplicity[du, 1] += 1
                    else:
                        multiplicity[du, 1] += 1
                        multiplicity[dv, 1] += 1
                        multiplicity[dw, 1] += 1
    return total, per_vertex, multiplicity


@njit(cache=True, nogil=True)
def triangle_list(indptr, indices, out_indptr, out_indices, count):
    n = indptr.shape[0] - 1
    out = np.empty((count, 3), dtype=np.int64)
    t = 0
    for u in range(n):
        lo = out_indptr[u]
        hi = out_indptr[u + 1]
        for i in range(lo, hi):
            v = out_indices[i]
            for j in range(i + 1, hi):
                w = out_indices[j]
                if adjacent(indptr, indices, v, w):
                    a, b, c = u, v, w
                    if a > b:
                        a, b = b, a
                    if b > c:
                        b, c = c, b
                    if a > b:
                        a, b = b, a
                    out[t, 0] = a
                    out[t, 1] = b
                    out[t, 2] = c
                    t += 1
    return out
