"""Repeated-trial experiments: spread of estimates and speed-up over enumeration.

Trial ``i`` of a run seeded with ``seed`` uses the seed
``trial_seed(seed, i)``, so the values in a report are reproducible; the
timings are not.
"""
from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .doulion import doulion_global_cc, doulion_local_cc, doulion_triangle_estimate
from .errors import TriadicError
from .exact import ExactTriadStats, exact_stats
from .graph import Graph
from .sampling import (
    Estimate,
    build_wedge_distribution,
    estimate_degree_cc,
    estimate_global_cc,
    estimate_local_cc,
    estimate_T_d,
    estimate_triangle_count,
)

__all__ = [
    "EstimatorSpec",
    "TrialReport",
    "CSV_COLUMNS",
    "trial_seed",
    "run_trials",
    "speedup_report",
    "reports_to_csv",
    "reports_to_json",
]

KINDS = ("gcc", "triangles", "lcc", "ccd", "td", "doulion-gcc", "doulion-lcc", "doulion-tri")

CSV_COLUMNS = (
    "estimator",
    "k",
    "p",
    "degree",
    "trials",
    "min",
    "max",
    "mean",
    "sd",
    "oracle",
    "max_abs_error",
    "mean_time",
    "build_time",
    "sampling_time",
    "baseline_time",
    "speedup",
    "valid",
)


@dataclass(frozen=True)
class EstimatorSpec:
    """Which estimator to run and with what parameter (``k`` samples or Doulion ``p``)."""

    kind: str
    k: int | None = None
    p: float | None = None
    degree: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown estimator {self.kind!r}; expected one of {KINDS}")
        if self.kind.startswith("doulion"):
            if self.p is None:
                raise ValueError(f"{self.kind} needs p")
        elif self.k is None:
            raise ValueError(f"{self.kind} needs k")
        if self.kind in ("ccd", "td") and self.degree is None:
            raise ValueError(f"{self.kind} needs a degree")

    @property
    def label(self) -> str:
        if self.kind.startswith("doulion"):
            return f"{self.kind}(p={self.p:g})"
        d = f",d={self.degree}" if self.degree is not None else ""
        return f"{self.kind}(k={self.k}{d})"

    def runner(self, g: Graph, dist=None) -> Callable[[int], Estimate]:
        kind, k, p, d = self.kind, self.k, self.p, self.degree
        if kind == "gcc":
            return lambda s: estimate_global_cc(g, k, s, dist=dist)
        if kind == "triangles":
            return lambda s: estimate_triangle_count(g, k, s, dist=dist)
        if kind == "lcc":
            return lambda s: estimate_local_cc(g, k, s)
        if kind == "ccd":
            return lambda s: estimate_degree_cc(g, d, k, s)
        if kind == "td":
            return lambda s: estimate_T_d(g, d, k, s)
        if kind == "doulion-gcc":
            return lambda s: doulion_global_cc(g, p, s)
        if kind == "doulion-lcc":
            return lambda s: doulion_local_cc(g, p, s)
        return lambda s: doulion_triangle_estimate(g, p, s)

    def oracle(self, stats: ExactTriadStats) -> float:
        if self.kind in ("gcc", "doulion-gcc"):
            return stats.global_cc
        if self.kind in ("lcc", "doulion-lcc"):
            return stats.local_cc
        if self.kind in ("triangles", "doulion-tri"):
            return float(stats.triangles)
        if self.kind == "ccd":
            return stats.cc_at(self.degree)
        return float(stats.triangles_at(self.degree))


@dataclass
class TrialReport:
    """Summary of ``trials`` independent runs of one estimator.

    ``sd`` is the sample standard deviation (``ddof=1``; 0 for one trial).
    Times are seconds from a monotonic clock; ``mean_time`` includes any
    per-run setup such as building the wedge distribution, ``sampling_time``
    excludes it where the estimator allows a prebuilt distribution, and
    ``build_time`` is that setup on its own.
    """

    estimator: str
    spec: EstimatorSpec
    trials: int
    seed: int
    values: list[float]
    min: float
    max: float
    mean: float
    sd: float
    oracle: float | None = None
    max_abs_error: float | None = None
    trial_times: list[float] = field(default_factory=list)
    mean_time: float | None = None
    build_time: float | None = None
    sampling_time: float | None = None
    baseline_time: float | None = None
    speedup: float | None = None
    valid: bool = True
    error: str | None = None

    def within(self, tol: float) -> int:
        """Number of trials whose estimate is within ``tol`` of the oracle."""
        if self.oracle is None:
            raise ValueError("report has no oracle value")
        return int(np.count_nonzero(np.abs(np.asarray(self.values) - self.oracle) <= tol))

    def row(self) -> dict:
        return {
            "estimator": self.spec.kind,
            "k": self.spec.k,
            "p": self.spec.p,
            "degree": self.spec.degree,
            "trials": self.trials,
            "min": self.min,
            "max": self.max,
            "mean": self.mean,
            "sd": self.sd,
            "oracle": self.oracle,
            "max_abs_error": self.max_abs_error,
            "mean_time": self.mean_time,
            "build_time": self.build_time,
            "sampling_time": self.sampling_time,
            "baseline_time": self.baseline_time,
            "speedup": self.speedup,
            "valid": self.valid,
        }

    def to_dict(self, timings: bool = True) -> dict:
        d = asdict(self)
        d["spec"] = asdict(self.spec)
        if not timings:
            for key in ("trial_times", "mean_time", "build_time", "sampling_time", "baseline_time", "speedup"):
                d.pop(key)
        return d


def trial_seed(seed: int, i: int) -> int:
    return int(np.random.SeedSequence(seed, spawn_key=(i,)).generate_state(1, np.uint64)[0] >> 1)


def _summary(values: Sequence[float]):
    if not values:
        return math.nan, math.nan, math.nan, math.nan
    arr = np.asarray(values, dtype=np.float64)
    sd = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
    return float(arr.min()), float(arr.max()), float(arr.mean()), sd


def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def run_trials(
    g: Graph,
    spec: EstimatorSpec,
    trials: int = 100,
    seed: int = 0,
    *,
    oracle: float | ExactTriadStats | None = None,
    threads: int = 1,
) -> TrialReport:
    """Run ``spec`` ``trials`` times on ``g`` with per-trial derived seeds.

    An estimator error stops the run; the report then holds the completed
    trials and ``valid=False``.  With ``threads > 1`` trials run
    concurrently and per-trial times become less meaningful.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    run = spec.runner(g)
    seeds = [trial_seed(seed, i) for i in range(trials)]
    values: list[float] = []
    times: list[float] = []
    error = None
    try:
        _timed(run, seeds[0])  # warm-up, discarded
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(lambda s: _timed(run, s), seeds))
        else:
            results = []
            for s in seeds:
                results.append(_timed(run, s))
        for est, dt in results:
            values.append(float(est.value))
            times.append(dt)
    except TriadicError as exc:
        error = f"{type(exc).__name__}: {exc}"

    if isinstance(oracle, ExactTriadStats):
        oracle = spec.oracle(oracle)
    lo, hi, mean, sd = _summary(values)
    return TrialReport(
        estimator=spec.label,
        spec=spec,
        trials=trials,
        seed=seed,
        values=values,
        min=lo,
        max=hi,
        mean=mean,
        sd=sd,
        oracle=oracle,
        max_abs_error=(float(np.max(np.abs(np.asarray(values) - oracle))) if oracle is not None and values else None),
        trial_times=times,
        mean_time=float(np.mean(times)) if times else None,
        valid=error is None,
        error=error,
    )


def speedup_report(
    g: Graph,
    spec: EstimatorSpec,
    trials: int = 10,
    seed: int = 0,
    *,
    baseline_repeats: int = 1,
) -> TrialReport:
    """Trial report plus enumeration time and the resulting speed-up.

    The baseline is a full exact enumeration (warm-up discarded, then the
    mean of ``baseline_repeats`` runs); graph loading is never timed.
    """
    exact_stats(g)  # warm-up, discarded
    stats = None
    total = 0.0
    for _ in range(baseline_repeats):
        stats, dt = _timed(exact_stats, g)
        total += dt
    baseline = total / baseline_repeats

    report = run_trials(g, spec, trials, seed, oracle=stats)
    report.baseline_time = baseline
    if report.mean_time:
        report.speedup = baseline / report.mean_time

    if spec.kind in ("gcc", "triangles") and report.valid:
        build_wedge_distribution(g)
        dist, report.build_time = _timed(build_wedge_distribution, g)
        run = spec.runner(g, dist=dist)
        times = [_timed(run, trial_seed(seed, i))[1] for i in range(trials)]
        report.sampling_time = float(np.mean(times))
    return report


def reports_to_csv(reports: Sequence[TrialReport], dest=None) -> str:
    """CSV with the fixed column order of :data:`CSV_COLUMNS`; returns the text."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow({k: ("" if v is None else v) for k, v in r.row().items()})
    text = buf.getvalue()
    if dest is not None:
        with open(dest, "w", newline="") as fh:
            fh.write(text)
    return text


def reports_to_json(reports: Sequence[TrialReport], dest=None, timings: bool = True) -> str:
    text = json.dumps([r.to_dict(timings=timings) for r in reports], indent=2, sort_keys=True)
    if dest is not None:
        with open(dest, "w") as fh:
            fh.write(text + "\n")
    return text
