# Repeated trials and speed-up over enumeration
#
# run_trials repeats an estimator with derived per-trial seeds and summarises
# the spread; speedup_report also times a full enumeration. Values are
# reproducible for a fixed seed, timings are not.

# %%
from triadic import EstimatorSpec, exact_stats, run_trials, speedup_report
from triadic import generators
from triadic.bench import reports_to_csv

g = generators.chung_lu(50_000, 300_000, exponent=2.1, seed=5)
s = exact_stats(g)

# %%
reports = [run_trials(g, EstimatorSpec("gcc", k=k), trials=100, seed=1, oracle=s) for k in (2000, 8000, 32000)]
for r in reports:
    print(f"{r.estimator:<14} mean {r.mean:.4f} sd {r.sd:.4f} max error {r.max_abs_error:.4f}")

# %%
for k in (2000, 32000):
    r = speedup_report(g, EstimatorSpec("gcc", k=k), trials=10)
    print(
        f"k={k:>6}: enumeration {r.baseline_time * 1e3:.1f} ms, sampling {r.mean_time * 1e3:.2f} ms "
        f"(distribution build {r.build_time * 1e3:.2f} ms), speed-up {r.speedup:.0f}x"
    )

# %%
print(reports_to_csv(reports))
