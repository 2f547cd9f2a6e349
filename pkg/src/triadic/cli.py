"""Command-line front end.

Every command prints one document: JSON (default), CSV or plain text.  JSON
documents look like ``{"schema": ..., "command": ..., "results": [...]}``
and CSV carries the same ``results`` rows under a header, so the two formats
hold identical values.  Failures print ``{"schema": ..., "error": {...}}``
and exit with a code from :data:`EXIT_CODES`.

The default seed comes from ``$TRIAD_SEED`` if set, otherwise from fresh
entropy; either way it is reported with the result.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Sequence

import numpy as np

from . import bench as _bench
from .doulion import doulion_global_cc, doulion_local_cc, doulion_triangle_estimate
from .errors import (
    EdgeListParseError,
    GraphCacheError,
    InsufficientClosureError,
    PreconditionError,
    TriadicError,
)
from .exact import exact_stats, list_triangles, local_average, triangle_degree_ratio_fraction
from .graph import load_graph, write_graph_cache
from .sampling import (
    DEFAULT_DELTA,
    Estimate,
    error_bound,
    estimate_binned_cc,
    estimate_degree_cc,
    estimate_global_cc,
    estimate_local_cc,
    estimate_T_d,
    estimate_triangle_count,
    log2_bins,
    resolve_plan,
    sample_size,
    sample_uniform_triangles,
    triangle_sample_ratio_fraction,
)

SCHEMA = "triadic/1"

EXIT_CODES = {
    "ok": 0,
    "internal": 1,
    "usage": 2,
    "io": 3,
    "parse": 4,
    "precondition": 5,
    "insufficient_closure": 6,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _plain(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def _estimate_row(est: Estimate, **more) -> dict:
    row = {
        "quantity": est.quantity,
        "value": float(est.value),
        "k": est.k,
        "closed_count": est.closed_count,
        "seed": est.seed,
        "epsilon": est.epsilon,
        "delta": est.delta,
        "absolute_bound": est.absolute_bound,
    }
    row.update({key: _plain(v) for key, v in est.extra.items() if not isinstance(v, list)})
    row.update(more)
    return row


def _render(command: str, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"schema": SCHEMA, "command": command, "results": rows}, indent=2) + "\n"
    if fmt == "csv":
        keys: list[str] = []
        for r in rows:
            keys.extend(k for k in r if k not in keys)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: ("" if r.get(k) is None else r.get(k)) for k in keys})
        return buf.getvalue()
    lines = []
    for i, r in enumerate(rows):
        if i:
            lines.append("")
        lines.extend(f"{k}: {v}" for k, v in r.items())
    return "\n".join(lines) + "\n"


def _emit(args, rows: list[dict]) -> None:
    text = _render(args.command, rows, args.format)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _default_seed() -> int:
    env = os.environ.get("TRIAD_SEED")
    if env is not None and env.strip():
        return int(env)
    return int(np.random.SeedSequence().entropy % (1 << 63))


def _plan(args):
    return resolve_plan(args.samples, args.epsilon, args.delta)


def cmd_stats(args, g):
    s = exact_stats(g)
    row = dict(s.summary())
    if args.exclude_low_degree:
        row["local_cc"] = local_average(s.cc_per_vertex, s.wedges_per_vertex > 0)
        row["low_degree_excluded"] = True
    rows = [row]
    if args.per_degree:
        rows += [dict(r, section="degree") for r in s.per_degree_table()]
    if args.dump_triangles:
        tris = g.labels[list_triangles(g)]
        tris.sort(axis=1)
        with open(args.dump_triangles, "w") as fh:
            for a, b, c in tris.tolist():
                fh.write(f"{a} {b} {c}\n")
    return rows


def cmd_gcc(args, g):
    plan = _plan(args)
    est = estimate_global_cc(g, plan.k, args.seed, delta=plan.delta, threads=args.threads)
    rows = [_estimate_row(est)]
    if args.triangles:
        rows.append(_estimate_row(
            estimate_triangle_count(g, plan.k, args.seed, delta=plan.delta, threads=args.threads)
        ))
    return rows


def cmd_lcc(args, g):
    plan = _plan(args)
    est = estimate_local_cc(
        g, plan.k, args.seed, delta=plan.delta,
        include_low_degree=not args.exclude_low_degree, threads=args.threads,
    )
    return [_estimate_row(est)]


def cmd_ccd(args, g):
    plan = _plan(args)
    if args.degree is not None:
        est = estimate_degree_cc(g, args.degree, plan.k, args.seed, delta=plan.delta, threads=args.threads)
        return [_estimate_row(est, lo=args.degree - 1, hi=args.degree)]
    bins = log2_bins(g.max_degree, g.degrees)
    rows = []
    for b in estimate_binned_cc(
        g, bins, plan.k, args.seed, delta=plan.delta, budget=args.budget, threads=args.threads
    ):
        if b.estimate is None:
            rows.append({"quantity": "binned_cc", "lo": b.lo, "hi": b.hi, "vertices": b.vertices,
                         "wedges": b.wedges, "value": None, "skipped": b.skipped})
        else:
            rows.append(_estimate_row(b.estimate, vertices=b.vertices, wedges=b.wedges, skipped=None))
    return rows


def cmd_td(args, g):
    plan = _plan(args)
    est = estimate_T_d(g, args.degree, plan.k, args.seed, delta=plan.delta, threads=args.threads)
    return [_estimate_row(est)]


def cmd_tri_sample(args, g):
    sample = sample_uniform_triangles(g, args.count, args.max_wedges, args.seed)
    row = {
        "quantity": "triangle_sample",
        "triangles": len(sample),
        "draws": sample.draws,
        "seed": sample.seed,
    }
    if args.ratio is not None:
        row["ratio"] = args.ratio
        row["value"] = triangle_sample_ratio_fraction(sample, args.ratio)
        if args.exact:
            row["exact"] = triangle_degree_ratio_fraction(g, args.ratio)
    if args.dump:
        tris = g.labels[sample.triangles]
        with open(args.dump, "w") as fh:
            for a, b, c in tris.tolist():
                fh.write(f"{a} {b} {c}\n")
    return [row]


def cmd_doulion(args, g):
    fn = {"gcc": doulion_global_cc, "lcc": doulion_local_cc, "tri": doulion_triangle_estimate}[args.metric]
    if args.metric == "lcc":
        est = fn(g, args.p, args.seed, clamp=args.clamp)
    else:
        est = fn(g, args.p, args.seed)
    return [_estimate_row(est)]


def cmd_bench(args, g):
    stats = None if args.no_oracle else exact_stats(g)
    if args.estimator.startswith("doulion"):
        specs = [_bench.EstimatorSpec(args.estimator, p=p) for p in (args.p or [1 / 25])]
    else:
        specs = [
            _bench.EstimatorSpec(args.estimator, k=k, degree=args.degree)
            for k in (args.samples or [2000, 8000, 32000])
        ]
    rows = []
    for spec in specs:
        if args.speedup:
            rep = _bench.speedup_report(g, spec, args.trials, args.seed)
        else:
            rep = _bench.run_trials(g, spec, args.trials, args.seed, oracle=stats, threads=args.threads)
        rows.append(rep.row())
    return rows


def cmd_sample_size(args, g=None):
    delta = args.delta
    if args.epsilon is not None:
        k = sample_size(args.epsilon, delta)
        return [{"epsilon": args.epsilon, "delta": delta, "k": k, "achieved_epsilon": error_bound(k, delta)}]
    if args.samples is None:
        raise UsageError("sample-size needs --epsilon or --samples")
    return [{"k": args.samples, "delta": delta, "epsilon": error_bound(args.samples, delta)}]


def cmd_cache(args, g):
    write_graph_cache(g, args.dest)
    return [{"n": g.n, "m": g.m, "cache": args.dest}]


COMMANDS = {
    "stats": cmd_stats,
    "gcc": cmd_gcc,
    "lcc": cmd_lcc,
    "ccd": cmd_ccd,
    "td": cmd_td,
    "tri-sample": cmd_tri_sample,
    "doulion": cmd_doulion,
    "bench": cmd_bench,
    "sample-size": cmd_sample_size,
    "cache": cmd_cache,
}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=None, help="RNG seed (default: $TRIAD_SEED or random)")
    common.add_argument("--threads", type=int, default=1, help="worker threads, 0 = all cores")

    graph_in = _Parser(add_help=False)
    graph_in.add_argument("input", help="SNAP edge list or binary graph cache")

    budget = _Parser(add_help=False)
    budget.add_argument("--samples", "-k", type=int, default=None, help="number of wedge samples")
    budget.add_argument("--epsilon", type=float, default=None, help="target additive error (derives k)")
    budget.add_argument("--delta", type=float, default=DEFAULT_DELTA, help="failure probability")

    p = _Parser(prog="triadic", description="Triadic graph measures by wedge sampling.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("stats", parents=[common, graph_in], help="exact enumeration")
    s.add_argument("--per-degree", action="store_true", help="add one row per occurring degree")
    s.add_argument("--exclude-low-degree", action="store_true",
                   help="average C_v over degree >= 2 vertices only")
    s.add_argument("--dump-triangles", metavar="PATH", help="write every triangle as 'a b c'")

    s = sub.add_parser("gcc", parents=[common, graph_in, budget], help="global clustering coefficient")
    s.add_argument("--triangles", action="store_true", help="also report the triangle-count estimate")

    s = sub.add_parser("lcc", parents=[common, graph_in, budget], help="local clustering coefficient")
    s.add_argument("--exclude-low-degree", action="store_true",
                   help="sample only vertices of degree >= 2")

    s = sub.add_parser("ccd", parents=[common, graph_in, budget], help="degree-wise / binned coefficients")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--degree", type=int)
    g.add_argument("--bins", choices=("log2",), default="log2")
    s.add_argument("--budget", choices=("per_bin", "total"), default="per_bin")

    s = sub.add_parser("td", parents=[common, graph_in, budget], help="triangles at degree-d vertices")
    s.add_argument("--degree", type=int, required=True)

    s = sub.add_parser("tri-sample", parents=[common, graph_in], help="uniform triangle sample")
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--ratio", type=float, default=None, help="report share with max/min degree >= ratio")
    s.add_argument("--max-wedges", type=int, default=10_000_000)
    s.add_argument("--exact", action="store_true", help="also compute the exact ratio share")
    s.add_argument("--dump", metavar="PATH", help="write the sampled triangles as 'a b c'")

    s = sub.add_parser("doulion", parents=[common, graph_in], help="Doulion sparsification baseline")
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--metric", choices=("gcc", "lcc", "tri"), default="tri")
    s.add_argument("--clamp", type=float, default=None, help="cap per-vertex estimates (lcc)")

    s = sub.add_parser("bench", parents=[common, graph_in], help="repeated trials vs the exact oracle")
    s.add_argument("--estimator", choices=_bench.KINDS, default="gcc")
    s.add_argument("--samples", "-k", type=int, nargs="+")
    s.add_argument("--p", type=float, nargs="+")
    s.add_argument("--degree", type=int)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--speedup", action="store_true", help="time enumeration and report speed-up")
    s.add_argument("--no-oracle", action="store_true")

    s = sub.add_parser("sample-size", parents=[common], help="Hoeffding sample-size calculator")
    s.add_argument("--epsilon", type=float)
    s.add_argument("--samples", "-k", type=int)
    s.add_argument("--delta", type=float, default=DEFAULT_DELTA)

    s = sub.add_parser("cache", parents=[common, graph_in], help="write the binary graph cache")
    s.add_argument("dest")
    return p


def _fail(kind: str, exc: BaseException, fmt_stream=None) -> int:
    doc = {"schema": SCHEMA, "error": {"code": EXIT_CODES[kind], "kind": kind,
                                       "type": type(exc).__name__, "message": str(exc)}}
    if isinstance(exc, EdgeListParseError):
        doc["error"]["line"] = exc.lineno
    if isinstance(exc, InsufficientClosureError):
        doc["error"]["draws"] = exc.draws
    (fmt_stream or sys.stdout).write(json.dumps(doc) + "\n")
    return EXIT_CODES[kind]


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _fail("usage", exc)
    if args.seed is None:
        args.seed = _default_seed()
    try:
        g = None
        if hasattr(args, "input"):
            g = load_graph(args.input)
        rows = COMMANDS[args.command](args, g)
        _emit(args, rows)
    except UsageError as exc:
        return _fail("usage", exc)
    except (EdgeListParseError, GraphCacheError) as exc:
        return _fail("parse", exc)
    except OSError as exc:
        return _fail("io", exc)
    except InsufficientClosureError as exc:
        return _fail("insufficient_closure", exc)
    except (PreconditionError, ValueError) as exc:
        return _fail("precondition", exc)
    except TriadicError as exc:
        return _fail("internal", exc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
