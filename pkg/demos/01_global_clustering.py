# Global clustering and triangle counts from wedge samples
#
# A wedge is a path of length two. The global clustering coefficient is the
# share of wedges that are closed, so a uniform sample of wedges estimates it
# directly, and the sample size needed for a given accuracy does not depend on
# the size of the graph.

# %%
import numpy as np

from triadic import (
    build_wedge_distribution,
    error_bound,
    estimate_global_cc,
    estimate_triangle_count,
    exact_stats,
    sample_size,
)
from triadic import generators

# A heavy-tailed random graph stands in for a real network.
g = generators.chung_lu(20_000, 100_000, exponent=2.1, seed=1)
print(g)

# %%
# Exact values by full enumeration, for reference.
s = exact_stats(g)
print(f"wedges W = {s.W:,}   triangles T = {s.T:,}   C = {s.C:.4f}")

# %%
# How many samples for a given error?  k = ceil(0.5 eps^-2 ln(2/delta)).
for eps in (0.05, 0.02, 0.01):
    print(f"eps={eps}: k={sample_size(eps, 0.001)}")
for k in (2000, 8000, 32000):
    print(f"k={k}: eps={error_bound(k, 0.001):.4f}")

# %%
# The wedge distribution (p_v proportional to C(d_v, 2)) can be built once and
# reused across calls.
dist = build_wedge_distribution(g)
for k in (2000, 8000, 32000):
    est = estimate_global_cc(g, k, rng=7, dist=dist)
    print(f"k={k:>6}  C~{est.value:.4f}  error {abs(est.value - s.C):.4f}  bound {est.epsilon:.4f}")

# %%
# The same draws give a triangle count: T = C W / 3.
tri = estimate_triangle_count(g, 32000, rng=7, dist=dist)
print(f"T~{tri.value:,.0f} (exact {s.T:,}), +- {tri.absolute_bound:,.0f} with prob. {1 - tri.delta}")

# %%
# Spread over repeated runs.
vals = np.array([estimate_global_cc(g, 8000, rng=r, dist=dist).value for r in range(50)])
print(f"50 runs at k=8000: min {vals.min():.4f} max {vals.max():.4f} sd {vals.std(ddof=1):.4f}")
