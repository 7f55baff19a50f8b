"""Command-line driver: solve, bound, decode, oracle queries, generation,
and batch benchmarking.

Result documents are JSON on stdout (diagnostics go to stderr) so runs can
be scripted; `solve` exits 0 when the clustering is certified optimal and
2 when a positive bound gap remains.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import json
import sys
import time
from pathlib import Path

import numpy as np

from .bound import CutPool, optimize_lower_bound
from .decode import best_decode
from .graph import GraphError
from .instances import (
    GpbLikeWeights,
    ParseError,
    UniformWeights,
    gen_grid,
    gen_random_planar,
    read_instance,
    write_instance,
)
from .oracle import brute_cc, brute_cc2, brute_cck, check_coloring_chain, full_lp_bound

FORMAT_VERSION = 1
BETA_PRESETS = (0.35, 0.27, 0.20, 0.12)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _add_solver_flags(p, decode=True):
    p.add_argument("--tol", type=float, default=1e-6, help="oracle violation tolerance")
    p.add_argument("--max-batches", type=int, default=1000, help="cutting-plane batch limit")
    if decode:
        p.add_argument("--restarts", type=int, default=10, help="recursive decode restarts")
        p.add_argument("--seed", type=int, default=0, help="decode order seed")
        p.add_argument("--threshold", type=float, default=0.5, help="rounding threshold")


def build_parser():
    parser = _Parser(prog="planarclust", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="lower bound + decoding, full pipeline")
    p.add_argument("instance", type=Path)
    _add_solver_flags(p)

    p = sub.add_parser("bound", help="lower bound only; save the result document")
    p.add_argument("instance", type=Path)
    p.add_argument("--out", type=Path, help="write the bound document here")
    _add_solver_flags(p, decode=False)

    p = sub.add_parser("decode", help="decode from a saved bound document")
    p.add_argument("instance", type=Path)
    p.add_argument("--bound", type=Path, required=True, help="document from `bound --out`")
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=float, default=0.5)

    p = sub.add_parser("oracle", help="exact brute-force values (desk scale)")
    p.add_argument("instance", type=Path)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--cc", action="store_true", help="optimal clustering cost (V <= 12)")
    g.add_argument("--cc2", action="store_true", help="optimal 2-coloring cost (V <= 20)")
    g.add_argument("--cck", type=int, metavar="K", help="optimal K-coloring cost")
    g.add_argument("--chain", action="store_true", help="two/four-coloring inequality report")
    g.add_argument(
        "--full-lp",
        action="store_true",
        help="bound LP with the complete cut constraint set (V <= 10)",
    )

    p = sub.add_parser("gen", help="generate an instance file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--grid", metavar="WxH", help="grid instance, e.g. 20x20")
    g.add_argument("--random", type=int, metavar="N", help="random planar instance")
    p.add_argument(
        "--beta",
        type=float,
        help=f"boundary-probability weights with this threshold (presets: {BETA_PRESETS})",
    )
    p.add_argument("--uniform", metavar="A,B", help="uniform weights on [A,B] (default -1,1)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("bench", help="run solve over a directory, emit CSV")
    p.add_argument("directory", type=Path)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--jobs", type=int, default=1)
    _add_solver_flags(p)
    return parser


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=1)
    sys.stdout.write("\n")


def _solve_instance(instance, tol, max_batches, restarts, seed, threshold):
    t0 = time.perf_counter()
    br = optimize_lower_bound(instance.graph, instance.theta, tol=tol, max_batches=max_batches)
    t1 = time.perf_counter()
    res = best_decode(
        instance.graph, instance.theta, br, restarts=restarts, seed=seed, threshold=threshold
    )
    t2 = time.perf_counter()
    return br, res, (t1 - t0) * 1000.0, (t2 - t1) * 1000.0


def cmd_solve(args) -> int:
    instance = read_instance(args.instance)
    br, res, ms_bound, ms_decode = _solve_instance(
        instance, args.tol, args.max_batches, args.restarts, args.seed, args.threshold
    )
    gap = res.energy - br.bound
    _emit(
        {
            "format_version": FORMAT_VERSION,
            "name": instance.name,
            "bound": br.bound,
            "energy": res.energy,
            "gap": gap,
            "certificate": bool(res.certificate),
            "converged": bool(br.converged),
            "batches": br.batches,
            "oracle_calls": br.oracle_calls,
            "method": res.method,
            "wall_times": {"bound_ms": ms_bound, "decode_ms": ms_decode},
            "labels": res.partition.tolist(),
            "params": {
                "tol": args.tol,
                "restarts": args.restarts,
                "seed": args.seed,
                "threshold": args.threshold,
                "max_batches": args.max_batches,
            },
        }
    )
    return 0 if res.certificate else 2


def cmd_bound(args) -> int:
    instance = read_instance(args.instance)
    t0 = time.perf_counter()
    br = optimize_lower_bound(instance.graph, instance.theta, tol=args.tol, max_batches=args.max_batches)
    ms = (time.perf_counter() - t0) * 1000.0
    doc = {
        "format_version": FORMAT_VERSION,
        "name": instance.name,
        "bound": br.bound,
        "converged": bool(br.converged),
        "batches": br.batches,
        "oracle_calls": br.oracle_calls,
        "lambda": [repr(float(x)) for x in br.lam],
        "pool": [np.flatnonzero(c).tolist() for c in br.pool],
        "wall_times": {"bound_ms": ms},
        "params": {"tol": args.tol, "max_batches": args.max_batches},
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
    _emit(doc)
    return 0


def _load_bound(path, edge_count):
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    lam = np.array([float(x) for x in doc["lambda"]], dtype=float)
    if lam.shape != (edge_count,):
        raise ParseError(f"{path}: lambda length does not match the instance")
    pool = CutPool()
    for ids in doc["pool"]:
        cut = np.zeros(edge_count, dtype=bool)
        cut[np.asarray(ids, dtype=int)] = True
        pool.add(cut)
    from .bound import BoundResult

    return BoundResult(
        lam=lam,
        bound=float(doc["bound"]),
        pool=pool,
        batches=int(doc["batches"]),
        oracle_calls=int(doc["oracle_calls"]),
        converged=bool(doc["converged"]),
    )


def cmd_decode(args) -> int:
    instance = read_instance(args.instance)
    br = _load_bound(args.bound, instance.graph.edge_count)
    t0 = time.perf_counter()
    res = best_decode(
        instance.graph,
        instance.theta,
        br,
        restarts=args.restarts,
        seed=args.seed,
        threshold=args.threshold,
    )
    ms = (time.perf_counter() - t0) * 1000.0
    gap = res.energy - br.bound
    _emit(
        {
            "format_version": FORMAT_VERSION,
            "name": instance.name,
            "bound": br.bound,
            "energy": res.energy,
            "gap": gap,
            "certificate": bool(res.certificate),
            "method": res.method,
            "wall_times": {"decode_ms": ms},
            "labels": res.partition.tolist(),
        }
    )
    return 0 if res.certificate else 2


def cmd_oracle(args) -> int:
    instance = read_instance(args.instance)
    doc = {"format_version": FORMAT_VERSION, "name": instance.name}
    if args.cc:
        labels, value = brute_cc(instance.graph, instance.theta)
        doc.update(query="cc", value=value, labels=labels.tolist())
    elif args.cc2:
        cut, value = brute_cc2(instance.graph, instance.theta)
        doc.update(query="cc2", value=value, cut=np.flatnonzero(cut).tolist())
    elif args.cck is not None:
        doc.update(query=f"cc{args.cck}", value=brute_cck(instance.graph, instance.theta, args.cck))
    elif args.chain:
        r = check_coloring_chain(instance.graph, instance.theta)
        doc.update(
            query="chain",
            cc2=r.cc2,
            cc4=r.cc4,
            merged_energies=list(r.merged_energies),
            ok=r.ok,
        )
    else:
        doc.update(
            query="full_lp",
            with_upper_bounds=full_lp_bound(instance.graph, instance.theta, True),
            without_upper_bounds=full_lp_bound(instance.graph, instance.theta, False),
        )
    _emit(doc)
    return 0


def cmd_gen(args) -> int:
    if args.beta is not None and args.uniform is not None:
        raise ParseError("choose either --beta or --uniform, not both")
    if args.uniform is not None:
        a, b = (float(x) for x in args.uniform.split(","))
        model = UniformWeights(a, b)
    elif args.beta is not None:
        model = GpbLikeWeights(args.beta)
    else:
        model = UniformWeights()
    if args.grid:
        w, h = (int(x) for x in args.grid.lower().split("x"))
        instance = gen_grid(w, h, model, args.seed)
    else:
        if args.beta is not None:
            raise ParseError("--beta applies to grid instances only")
        instance = gen_random_planar(args.random, args.seed)
    write_instance(instance, args.out)
    print(f"wrote {instance.name} to {args.out}", file=sys.stderr)
    return 0


def _bench_one(task):
    path, tol, max_batches, restarts, seed, threshold = task
    instance = read_instance(path)
    br, res, ms_bound, ms_decode = _solve_instance(
        instance, tol, max_batches, restarts, seed, threshold
    )
    return {
        "name": instance.name,
        "bound": br.bound,
        "energy": res.energy,
        "gap": res.energy - br.bound,
        "certificate": bool(res.certificate),
        "batches": br.batches,
        "ms_bound": ms_bound,
        "ms_decode": ms_decode,
    }


def cmd_bench(args) -> int:
    paths = sorted(args.directory.glob("*.json"))
    if not paths:
        print(f"no instance files in {args.directory}", file=sys.stderr)
        return 1
    tasks = [
        (p, args.tol, args.max_batches, args.restarts, args.seed, args.threshold) for p in paths
    ]
    if args.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_bench_one, tasks))
    else:
        rows = [_bench_one(t) for t in tasks]
    fieldnames = ["name", "bound", "energy", "gap", "certificate", "batches", "ms_bound", "ms_decode"]
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)
    return 0


_COMMANDS = {
    "solve": cmd_solve,
    "bound": cmd_bound,
    "decode": cmd_decode,
    "oracle": cmd_oracle,
    "gen": cmd_gen,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, GraphError, OSError, ValueError) as exc:
        print(f"planarclust: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
