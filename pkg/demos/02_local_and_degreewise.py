# Local, degree-wise and binned clustering coefficients
#
# Changing which vertex a wedge is centred on changes what the sample
# estimates: a uniform vertex gives the local average, a uniform vertex of one
# degree gives C_d, and wedges drawn in proportion within a degree range give
# a binned coefficient.

# %%
from triadic import (
    binned_wedge_cc,
    estimate_binned_cc,
    estimate_degree_cc,
    estimate_local_cc,
    estimate_T_d,
    exact_stats,
    log2_bins,
)
from triadic import generators

g = generators.chung_lu(20_000, 100_000, exponent=2.1, seed=2)
s = exact_stats(g)

# %%
# Local clustering. Vertices with fewer than two neighbours count as 0 by
# default; pass include_low_degree=False to average only over the others.
est = estimate_local_cc(g, 32000, rng=1)
print(f"local C~{est.value:.4f}  exact {s.local_cc:.4f}  bound {est.epsilon:.4f}")

# %%
# Degree-wise clustering and triangles per degree for a few degrees.
for d in (2, 5, 10, 20):
    if s.wedges_at(d) == 0:
        continue
    c = estimate_degree_cc(g, d, 8000, rng=d)
    t = estimate_T_d(g, d, 8000, rng=d)
    print(f"d={d:>3}  C_d~{c.value:.4f} ({s.cc_at(d):.4f})   T_d~{t.value:,.0f} ({s.triangles_at(d):,})")

# %%
# Logarithmic bins (2^(i-1), 2^i]; only occupied bins are reported.
bins = log2_bins(g.max_degree, g.degrees)
truth = binned_wedge_cc(s, bins)
for b, t in zip(estimate_binned_cc(g, bins, k=8000, rng=3), truth):
    if b.estimate is None:
        print(f"({b.lo}, {b.hi}]  skipped: {b.skipped}")
    else:
        print(f"({b.lo:>4}, {b.hi:>4}]  {b.vertices:>6} vertices  C~{b.estimate.value:.4f}  exact {t:.4f}")
