# Uniform triangle samples
#
# Every triangle owns exactly three closed wedges, so keeping the closed ones
# from a uniform wedge sample gives uniformly random triangles. Here the
# sample answers a question about triangle degrees: how many triangles have a
# large spread between their highest and lowest vertex degree?

# %%
from triadic import (
    exact_stats,
    sample_uniform_triangles,
    triangle_degree_ratio_fraction,
    triangle_sample_ratio_fraction,
)
from triadic import generators

g = generators.chung_lu(20_000, 100_000, exponent=2.1, seed=3)
C = exact_stats(g).C

# %%
sample = sample_uniform_triangles(g, 500, rng=11)
print(f"{len(sample)} triangles from {sample.draws} wedges (C={C:.4f}, about {500 / C:.0f} expected)")
print(sample.triangles[:5])
print(sample.degrees[:5])

# %%
# Share of triangles whose max/min degree ratio is at least r.
for r in (2, 5, 10):
    est = triangle_sample_ratio_fraction(sample, r)
    exact = triangle_degree_ratio_fraction(g, r)
    print(f"r={r:>2}  sampled {est:.3f}  exact {exact:.3f}")
