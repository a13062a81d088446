"""Command-line front end.

Exit codes: 0 success, 2 parse or validation error, 3 infeasible rate
floors, 4 a resource cap (iterations or vertices) was reached.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from mapel.config import SolverConfig
from mapel.io import InstanceFormatError, read_instance, result_to_dict
from mapel.network import InvalidInputError, check_feasibility, sinr
from mapel.oracle import grid_search
from mapel.projection import maxmin_sinr
from mapel.solver import Status, solve
from mapel.topology import TopologySpec, paper_fixture, random_network

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_CAP = 0, 2, 3, 4

BENCH_COLUMNS = ["seed", "M", "delta", "objective_bps_hz", "upper_bound_bps_hz",
                 "outer_iterations", "vertex_peak", "wall_time_s", "oracle_bps_hz"]
BENCH_RESOLUTION = {1: 501, 2: 201, 3: 41}


class UsageError(Exception):
    pass


def _deltas(text: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad delta list {text!r}") from None
    if not vals or any(not 0 < v < 1 for v in vals):
        raise argparse.ArgumentTypeError("every delta must lie in (0, 1)")
    return vals


def _load(args):
    if args.fixture and args.instance:
        raise UsageError("give either --instance or --fixture, not both")
    if args.fixture:
        return paper_fixture(args.fixture)
    if not args.instance:
        raise UsageError("an instance is required (--instance PATH or --fixture g1|g2)")
    return read_instance(args.instance)


def _config(args, delta=None) -> SolverConfig:
    kw = {}
    if delta is not None:
        kw["delta"] = delta
    for name in ("max_vertices", "max_outer_iter", "proj_tol"):
        val = getattr(args, name, None)
        if val is not None:
            kw[name] = val
    return SolverConfig(**kw)


def _emit(doc, out):
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    """One result per delta; several deltas give ``{"runs": [...]}`` (a trade-off sweep)."""
    net = _load(args)
    docs, traces, code = [], [], EXIT_OK
    for d in args.delta:
        res = solve(net, _config(args, d))
        if res.status is Status.INFEASIBLE_RATES:
            print("error: minimum rates are infeasible", file=sys.stderr)
            return EXIT_INFEASIBLE
        doc = result_to_dict(res)
        doc["delta"] = d
        docs.append(doc)
        traces += [(d, row) for row in res.trace]
        if res.status is not Status.CONVERGED:
            code = EXIT_CAP
    _emit(docs[0] if len(docs) == 1 else {"runs": docs}, args.out)
    if args.trace:
        with open(args.trace, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["delta", "iteration", "num_vertices", "upper_bound_bps_hz",
                        "best_feasible_bps_hz", "gap_ratio"])
            for d, row in traces:
                w.writerow([repr(d), row.iteration, row.num_vertices, repr(row.upper_bound_bps_hz),
                            repr(row.best_feasible_bps_hz), repr(row.gap_ratio)])
    return code


def cmd_maxmin(args) -> int:
    net = _load(args)
    p, value = maxmin_sinr(net, _config(args))
    g = sinr(net, p)
    _emit({
        "p_w": p.tolist(),
        "sinr": g.tolist(),
        "min_sinr": value,
        "min_sinr_db": 10 * math.log10(value) if value > 0 else None,
    }, args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    net = _load(args)
    res = grid_search(net, args.resolution)
    _emit({"p_best_w": res.p_best.tolist(), "objective_bps_hz": res.objective_bps_hz,
           "points_evaluated": res.points_evaluated}, args.out)
    return EXIT_OK


def cmd_feasibility(args) -> int:
    net = _load(args)
    rep = check_feasibility(net)
    _emit({"feasible": rep.feasible, "reason": rep.reason.value,
           "spectral_radius_b": rep.spectral_radius_b,
           "p_hat_w": None if rep.p_hat is None else rep.p_hat.tolist()}, args.out)
    return EXIT_OK if rep.feasible else EXIT_INFEASIBLE


def bench_rows(links: int, count: int, seed: int, deltas, r_min: float = 0.0,
               resolution: int | None = None, timing: bool = False,
               max_vertices: int | None = None):
    """Rows for ``count`` topologies seeded ``seed, seed+1, ...``; infeasible ones are skipped."""
    rows = []
    for k in range(count):
        s = seed + k
        net = random_network(TopologySpec(num_links=links, seed=s, r_min_bps_hz=r_min))
        if not check_feasibility(net).feasible:
            continue
        oracle = ""
        if links <= 3:
            res_n = resolution or BENCH_RESOLUTION[links]
            oracle = repr(grid_search(net, res_n).objective_bps_hz)
        for d in deltas:
            cfg = SolverConfig(delta=d) if max_vertices is None else \
                SolverConfig(delta=d, max_vertices=max_vertices)
            t0 = time.perf_counter()
            res = solve(net, cfg)
            wall = time.perf_counter() - t0
            rows.append([s, links, d, res.objective_bps_hz, res.upper_bound_bps_hz,
                         res.outer_iterations, res.vertex_peak,
                         wall if timing else "", oracle])
    return rows


def _bench_csv(rows, deltas) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BENCH_COLUMNS)
    for r in rows:
        w.writerow([r[0], r[1], repr(r[2]), repr(r[3]), repr(r[4]), r[5], r[6],
                    repr(r[7]) if r[7] != "" else "", r[8]])
    for d in deltas:
        sel = [r for r in rows if r[2] == d]
        if not sel:
            continue

        def mean(j, cast=float):
            return repr(float(np.mean([cast(r[j]) for r in sel])))
        w.writerow(["mean", sel[0][1], repr(d), mean(3), mean(4), mean(5), mean(6),
                    mean(7) if sel[0][7] != "" else "",
                    mean(8) if sel[0][8] != "" else ""])
    return buf.getvalue()


def cmd_bench(args) -> int:
    rows = bench_rows(args.links, args.count, args.seed, args.delta, args.r_min,
                      args.resolution, args.timing, args.max_vertices)
    text = _bench_csv(rows, args.delta)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mapel", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def instance_opts(p):
        p.add_argument("--instance", help="JSON instance file")
        p.add_argument("--fixture", choices=["g1", "g2"], help="built-in 4-link network")
        p.add_argument("--out", help="write the result here instead of stdout")

    def solver_opts(p):
        p.add_argument("--max-vertices", type=int)
        p.add_argument("--max-outer-iter", type=int)
        p.add_argument("--proj-tol", type=float)

    p = sub.add_parser("solve", help="global weighted-throughput optimum")
    instance_opts(p)
    solver_opts(p)
    p.add_argument("--delta", type=_deltas, default=[0.05],
                   help="approximation factor; a comma list runs a sweep")
    p.add_argument("--trace", help="CSV file for per-iteration bounds")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("maxmin", help="maximize the minimum SINR")
    instance_opts(p)
    solver_opts(p)
    p.set_defaults(func=cmd_maxmin)

    p = sub.add_parser("oracle", help="exhaustive grid search (at most 4 links)")
    instance_opts(p)
    p.add_argument("--resolution", type=int, default=101)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("feasibility", help="check the minimum-rate floors")
    instance_opts(p)
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("bench", help="random-topology sweep, CSV on stdout")
    p.add_argument("--links", type=int, required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta", type=_deltas, default=[0.05])
    p.add_argument("--r-min", type=float, default=0.0)
    p.add_argument("--resolution", type=int, help="oracle grid points per axis")
    p.add_argument("--max-vertices", type=int)
    p.add_argument("--timing", action="store_true",
                   help="fill wall_time_s (output is then no longer reproducible)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InstanceFormatError, InvalidInputError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
