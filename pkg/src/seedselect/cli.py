"""Command-line front end: ``seedselect solve | oracle | bench``.

Exit codes: 0 success (for ``solve``: the evaluated spread meets the
algorithm's guarantee), 1 usage or parameter error, 2 infeasible result.
"""

from __future__ import annotations

import argparse
import csv
import json
import statistics
import sys
import time
from datetime import datetime, timezone

import numpy as np

from seedselect.graph import Graph, GraphFormatError, assign_costs, load_edge_list
from seedselect.mcss.solvers import (
    ALGORITHMS,
    ConfigError,
    Deadline,
    RunConfig,
    TimeLimitExceeded,
    solve,
)
from seedselect.oracle import LimitExceeded, exact_optimum, exact_spread
from seedselect.propagation import TriggeringModel, default_threads, simulate_spread

GC_ALGORITHMS = ("bcgc", "tegc", "celf")

BENCH_COLUMNS = (
    "row", "algorithm", "eta", "repeat", "seed", "status", "cost", "cost_std",
    "normalized_is", "rr_sets", "wall_time",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p):
    p.add_argument("--graph", required=True, help="edge-list file (.txt/.gz) or .npz cache")
    p.add_argument("--weighting", choices=("wc", "explicit"), default="wc")
    p.add_argument("--orientation", choices=("directed", "undirected"), default="directed")
    p.add_argument("--model", choices=("ic", "lt"), default="ic")
    p.add_argument("--costs", default="uniform", help="uniform | random:SEED")


def _solver_flags(p, with_eta=True):
    if with_eta:
        p.add_argument("--eta", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.2)
    p.add_argument("--delta", type=float, default=0.01)
    p.add_argument("--sigma", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--tau", type=float, default=0.02)
    p.add_argument("--mu-mode", default="exp:8", help="theory | exp:K")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None, help="default: $SEEDSELECT_THREADS or 1")
    p.add_argument("--eval-sims", type=int, default=10_000)
    p.add_argument("--time-limit-min", type=float, default=500.0)


def build_parser():
    parser = _Parser(prog="seedselect", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="run one solver and evaluate its seed set")
    _common(p)
    _solver_flags(p)
    p.add_argument("--algo", choices=ALGORITHMS, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--timing", action="store_true", help="include wall time and timestamps (non-reproducible)")

    p = sub.add_parser("oracle", help="exact spread or exact optimum on a tiny graph")
    _common(p)
    p.add_argument("--mode", choices=("spread", "optimum"), required=True)
    p.add_argument("--seeds", default="", help="comma-separated node labels (spread mode)")
    p.add_argument("--eta", type=float, help="threshold (optimum mode)")

    p = sub.add_parser("bench", help="sweep eta x repeats and stream CSV")
    _common(p)
    _solver_flags(p, with_eta=False)
    p.add_argument("--algo", default="bcgc,tegc", help="comma-separated algorithms")
    p.add_argument("--eta-list", required=True, help="comma-separated thresholds")
    p.add_argument("--repeats", type=int, default=10)
    return parser


def _load_graph(args):
    if str(args.graph).endswith(".npz"):
        return Graph.load(args.graph)
    return load_edge_list(args.graph, weighting=args.weighting, orientation=args.orientation)


def _cost_model(g, spec):
    if spec == "uniform":
        return assign_costs(g, "uniform")
    if spec.startswith("random:"):
        try:
            return assign_costs(g, "random", int(spec[7:]))
        except ValueError:
            pass
    raise ConfigError("costs", f"expected 'uniform' or 'random:SEED', got {spec!r}")


def _config(args, eta, seed):
    return RunConfig(
        eta=eta, delta=args.delta, alpha=args.alpha, sigma=args.sigma, gamma=args.gamma, tau=args.tau,
        mu_mode=args.mu_mode, model=args.model, seed=seed,
        threads=args.threads if args.threads is not None else default_threads(),
    )


def required_spread(algorithm, cfg):
    """Spread the algorithm promises: ``(1 - alpha) eta`` for GC, ``eta`` for UC."""
    return (1 - cfg.alpha) * cfg.eta if algorithm in GC_ALGORITHMS else cfg.eta


def _fmt(x):
    if isinstance(x, float):
        return f"{x:.6g}"
    return x


def dumps(record):
    """Canonical JSON; parsing and re-dumping a record reproduces it byte for byte."""
    return json.dumps(record, sort_keys=True, indent=2, allow_nan=False) + "\n"


def run_solve(args, out):
    g = _load_graph(args)
    costs = _cost_model(g, args.costs)
    cfg = _config(args, args.eta, args.seed)
    model = TriggeringModel(g, cfg.model)
    if args.algo in ("aauc", "ateuc") and not costs.is_uniform:
        raise ConfigError("costs", f"{args.algo} requires uniform costs (--costs uniform)")
    started = datetime.now(timezone.utc)
    deadline = Deadline(args.time_limit_min * 60.0)
    sol = solve(args.algo, model, costs, cfg, deadline=deadline, celf_sims=args.eval_sims)
    mean, stderr = simulate_spread(model, sol.seeds, args.eval_sims, seed=cfg.seed, threads=cfg.threads)
    need = required_spread(args.algo, cfg)
    feasible = (not sol.infeasible) and mean >= need
    hub = int(np.argmax(g.out_degree))
    q, _ = simulate_spread(model, [hub], args.eval_sims, seed=cfg.seed, threads=cfg.threads)

    solution = sol.to_dict()
    wall = solution.pop("wall_time")
    solution["seed_labels"] = [int(g.labels[u]) for u in sol.seeds]
    config = {
        "graph": str(args.graph), "weighting": args.weighting, "orientation": args.orientation,
        "algorithm": args.algo, "costs": args.costs, "eval_sims": args.eval_sims,
        "eta": cfg.eta, "delta": cfg.delta, "alpha": cfg.alpha, "sigma": cfg.sigma, "gamma": cfg.gamma,
        "tau": cfg.tau, "mu_mode": cfg.mu_mode, "model": cfg.model, "seed": cfg.seed, "threads": cfg.threads,
        "time_limit_min": args.time_limit_min,
    }
    record = {
        "config": config,
        "graph_stats": {"n": g.n, "m": g.m, "max_single_spread": q, "max_out_degree_node": int(g.labels[hub])},
        "solution": solution,
        "evaluation": {"num_sims": args.eval_sims, "mean": mean, "stderr": stderr,
                       "required": need, "feasible": feasible},
    }
    if args.timing:
        record["timing"] = {"wall_time": wall, "started": started.isoformat(),
                            "finished": datetime.now(timezone.utc).isoformat()}
    if args.format == "json":
        out.write(dumps(record))
    else:
        row = {"algorithm": args.algo, "eta": cfg.eta, "seed": cfg.seed, "seeds": " ".join(map(str, solution["seed_labels"])),
               "cost": sol.cost, "coverage": sol.coverage, "rr_sets": sol.rr_sets_generated, "budget": sol.budget,
               "iterations": sol.iterations, "infeasible": sol.infeasible, "is_mean": mean, "is_stderr": stderr,
               "feasible": feasible}
        if args.timing:
            row["wall_time"] = wall
        w = csv.DictWriter(out, fieldnames=list(row), lineterminator="\n")
        w.writeheader()
        w.writerow({k: _fmt(v) for k, v in row.items()})
    return 0 if feasible else 2


def run_oracle(args, out):
    g = _load_graph(args)
    model = TriggeringModel(g, args.model)
    if args.mode == "spread":
        labels = [int(s) for s in args.seeds.split(",") if s.strip()]
        nodes = [g.node_id(s) for s in labels]
        record = {"mode": "spread", "seeds": labels, "spread": exact_spread(model, nodes)}
    else:
        if args.eta is None:
            raise UsageError("--eta is required for --mode optimum")
        costs = _cost_model(g, args.costs)
        nodes, cost = exact_optimum(model, costs, args.eta)
        record = {"mode": "optimum", "eta": args.eta, "seeds": sorted(int(g.labels[u]) for u in nodes),
                  "cost": cost}
    out.write(dumps(record))
    return 0


def run_bench(args, out):
    g = _load_graph(args)
    costs = _cost_model(g, args.costs)
    model = TriggeringModel(g, args.model)
    algos = [a.strip() for a in args.algo.split(",") if a.strip()]
    for a in algos:
        if a not in ALGORITHMS:
            raise ConfigError("algo", f"unknown algorithm {a!r}")
    try:
        etas = [float(x) for x in args.eta_list.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad --eta-list {args.eta_list!r}") from None
    if args.repeats < 1:
        raise ConfigError("repeats", "must be >= 1")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for algo in algos:
        for eta in etas:
            cfg0 = _config(args, eta, args.seed)
            if algo in ("aauc", "ateuc") and not costs.is_uniform:
                raise ConfigError("costs", f"{algo} requires uniform costs")
            cfg0.check_eta(g.n)
            norm = (1 - cfg0.alpha) * eta
            rows = []
            for r in range(args.repeats):
                cfg = _config(args, eta, args.seed + r)
                t0 = time.perf_counter()
                try:
                    sol = solve(algo, model, costs, cfg, deadline=Deadline(args.time_limit_min * 60.0),
                                celf_sims=args.eval_sims)
                except TimeLimitExceeded:
                    row = ["detail", algo, eta, r, cfg.seed, "timeout", "", "", "", "", time.perf_counter() - t0]
                    writer.writerow([_fmt(x) for x in row])
                    out.flush()
                    continue
                mean, _ = simulate_spread(model, sol.seeds, args.eval_sims, seed=cfg.seed, threads=cfg.threads)
                status = "infeasible" if sol.infeasible else "ok"
                rows.append((sol.cost, mean / norm, sol.rr_sets_generated, sol.wall_time))
                row = ["detail", algo, eta, r, cfg.seed, status, sol.cost, "", mean / norm,
                       sol.rr_sets_generated, sol.wall_time]
                writer.writerow([_fmt(x) for x in row])
                out.flush()
            if rows:
                cost, nis, rr, wall = zip(*rows)
                sd = statistics.stdev(cost) if len(cost) > 1 else 0.0
                row = ["aggregate", algo, eta, "all", "", f"{len(rows)}/{args.repeats}", statistics.fmean(cost), sd,
                       statistics.fmean(nis), statistics.fmean(rr), statistics.fmean(wall)]
            else:
                row = ["aggregate", algo, eta, "all", "", f"0/{args.repeats}", "", "", "", "", ""]
            writer.writerow([_fmt(x) for x in row])
    return 0


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "solve":
            return run_solve(args, out)
        if args.command == "oracle":
            return run_oracle(args, out)
        return run_bench(args, out)
    except UsageError as e:
        err.write(f"seedselect: usage error: {e}\n")
    except ConfigError as e:
        err.write(f"seedselect: invalid parameter {e}\n")
    except LimitExceeded as e:
        err.write(f"seedselect: oracle limit exceeded ({e})\n")
    except (GraphFormatError, OSError) as e:
        err.write(f"seedselect: cannot load graph: {e}\n")
    except ValueError as e:
        err.write(f"seedselect: {e}\n")
    return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
