"""Command-line interface: generate, cluster, evaluate, oracle checks, benchmarks.

Exit codes: 0 success (a not-found clustering is still success, reported as
"found": false), 1 usage error, 2 I/O or parse error, 3 invalid parameters.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import bench as bench_mod
from .cover import cover_vertex
from .esp import evo_cut_directed
from .fileio import (
    ParseError,
    default_labels_path,
    load_edge_list,
    load_flow_matrix,
    load_labels,
    load_names,
    write_edge_list,
    write_labels,
)
from .generators import CbmPlusSpec, CbmSpec, SbmSpec, gen_cbm, gen_cbm_plus, gen_sbm
from .metrics import ari, misclassified_ratio, pair_labeling
from .oracle import exact_esp_kernel, exact_pagerank, ls_curve
from .pagerank import approximate_pagerank_dc, loc_bipart_dc, simplify
from .results import build_run_result, run_result_json, run_result_to_dict

EXIT_USAGE = 1
EXIT_IO = 2
EXIT_PARAMS = 3

DEFAULT_RNG_SEED = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load_graph(args):
    if getattr(args, "format", "edges") == "flow":
        return load_flow_matrix(args.graph)
    return load_edge_list(args.graph, directed=args.directed)


def _emit_result(args, result):
    if getattr(args, "names", None):
        names = load_names(args.names)
        result.metrics["l_names"] = [names.get(v, str(v)) for v in result.l]
        result.metrics["r_names"] = [names.get(v, str(v)) for v in result.r]
    if args.json:
        print(run_result_json(result))
        return
    data = run_result_to_dict(result)
    if not result.found:
        print("no qualifying pair found")
        return
    print(f"L ({len(result.l)}): {result.l}")
    print(f"R ({len(result.r)}): {result.r}")
    for key, value in data["metrics"].items():
        print(f"{key}: {value}")
    print(f"wall_ms: {result.wall_ms:.2f}")


def _cmd_generate(args) -> int:
    if args.model == "sbm":
        spec = SbmSpec(n1=args.n1, p1=args.p1, q1=args.q1)
        g, labels = gen_sbm(spec, args.seed)
    elif args.model == "cbm":
        spec = CbmSpec(k=args.k, n=args.n, p=args.p, q=args.q, eta=args.eta)
        g, labels = gen_cbm(spec, args.seed)
    else:
        spec = CbmPlusSpec(
            k=args.k,
            n=args.n,
            n_prime=args.n_prime,
            p=args.p,
            q=args.q,
            eta=args.eta,
            q1_prime=args.q1_prime,
            q2_prime=args.q2_prime,
            eta_prime=args.eta_prime,
        )
        g, labels = gen_cbm_plus(spec, args.seed)
    write_edge_list(g, args.output)
    write_labels(labels, default_labels_path(args.output))
    print(f"wrote {args.output} (n={g.n}, m={g.edge_count}) and {default_labels_path(args.output)}")
    return 0


def _cmd_cluster_bipartite(args) -> int:
    g = _load_graph(args)
    t0 = time.perf_counter()
    pair = loc_bipart_dc(
        g,
        args.seed_vertex,
        args.gamma,
        args.beta,
        alpha=args.alpha,
        best_sweep=args.best_sweep,
    )
    wall_ms = 1000.0 * (time.perf_counter() - t0)
    params = {
        "gamma": args.gamma,
        "beta_hat": args.beta,
        "alpha": args.alpha,
        "best_sweep": args.best_sweep,
    }
    result = build_run_result(g, "cluster-bipartite", args.seed_vertex, params, pair, wall_ms)
    _emit_result(args, result)
    return 0


def _cmd_cluster_directed(args) -> int:
    g = _load_graph(args)
    both = args.side == "both"
    sides = (1, 2) if both else (int(args.side),)
    t0 = time.perf_counter()
    best = None
    for side in sides:
        seed_degree = g.degrees[args.seed_vertex] if side == 1 else g.in_degrees[args.seed_vertex]
        if both and seed_degree <= 0:
            continue  # that copy of the seed is isolated in the cover
        rng = np.random.default_rng(np.random.SeedSequence([args.rng_seed, side]))
        pair = evo_cut_directed(g, args.seed_vertex, side, args.phi, rng, steps=args.esp_steps)
        if pair is not None and (best is None or pair.flow < best.flow):
            best = pair
    wall_ms = 1000.0 * (time.perf_counter() - t0)
    params = {
        "phi": args.phi,
        "side": args.side,
        "esp_steps": args.esp_steps,
    }
    result = build_run_result(
        g, "cluster-directed", args.seed_vertex, params, best, wall_ms, rng_seed=args.rng_seed
    )
    _emit_result(args, result)
    return 0


def _cmd_eval(args) -> int:
    with open(args.output, "r", encoding="utf-8") as handle:
        result = json.load(handle)
    labels = load_labels(args.labels)
    try:
        first, second = (int(part) for part in args.pair.split(","))
    except ValueError:
        raise ValueError(f"--pair expects 'a,b', got {args.pair!r}")
    c1 = np.flatnonzero(labels == first)
    c2 = np.flatnonzero(labels == second)
    truth = pair_labeling(labels.size, c1, c2)
    predicted = pair_labeling(labels.size, result.get("l", []), result.get("r", []))
    report = {
        "ari": ari(truth, predicted),
        "misclassified_ratio": misclassified_ratio(result.get("l", []), result.get("r", []), c1, c2),
    }
    print(json.dumps(report, indent=2))
    return 0


def _parse_cover_set(text: str) -> set:
    keys = set()
    for item in text.split(","):
        base, _, side = item.partition(":")
        keys.add(cover_vertex(int(base), int(side)))
    return keys


def _cmd_oracle(args) -> int:
    g = _load_graph(args)
    if args.check == "pagerank":
        dim = g.n if args.base else 2 * g.n
        s = np.zeros(dim)
        s[args.seed_vertex if args.base else cover_vertex(args.seed_vertex, args.side)] = 1.0
        vec = exact_pagerank(g, not args.base, args.alpha, s)
        if args.base:
            entries = [{"vertex": v, "mass": m} for v, m in enumerate(vec.tolist()) if m > 0]
        else:
            entries = [
                {"vertex": key >> 1, "side": (key & 1) + 1, "mass": m}
                for key, m in enumerate(vec.tolist())
                if m > 0
            ]
        print(json.dumps({"alpha": args.alpha, "entries": entries}, indent=2))
    elif args.check == "kernel":
        start = _parse_cover_set(args.set)
        k, k_hat = exact_esp_kernel(g, start)
        rows = []
        for succ in sorted(k_hat, key=lambda s: -k_hat[s]):
            rows.append(
                {
                    "set": sorted([[key >> 1, (key & 1) + 1] for key in succ]),
                    "k": k.get(succ, 0.0),
                    "k_hat": k_hat[succ],
                }
            )
        empty = k.get(frozenset())
        print(json.dumps({"successors": rows, "k_empty": empty}, indent=2))
    else:  # ls-curve
        p, _ = approximate_pagerank_dc(g, args.seed_vertex, args.alpha, args.epsilon)
        if not args.raw:
            p = simplify(p)
        curve = ls_curve(p, g, cover=True)
        points = [[float(x), float(y)] for x, y in zip(curve.xs, curve.ys)]
        print(json.dumps({"points": points}, indent=2))
    return 0


def _cmd_bench(args) -> int:
    if args.table == "table1":
        report = bench_mod.run_table1(
            n1=args.n1, trials=args.trials, rng_seed=args.rng_seed, workers=args.workers
        )
    else:
        report = bench_mod.run_table2(
            trials=args.trials,
            rng_seed=args.rng_seed,
            workers=args.workers,
            steps=args.esp_steps,
            attempts=args.attempts,
        )
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
        return 0
    print(f"{report.name}: {report.params}")
    for row in report.rows:
        print("  " + ", ".join(f"{key}={_fmt(value)}" for key, value in row.items()))
    print("means: " + ", ".join(f"{key}={_fmt(value)}" for key, value in report.means.items()))
    status = "PASS" if report.gates_passed else "FAIL"
    print(f"gates {report.gates}: {status} ({report.total_seconds:.1f}s)")
    return 0


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.4f}"
    return value


def build_parser() -> _Parser:
    parser = _Parser(prog="pairclust", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="generate a synthetic graph plus labels sidecar")
    gen_sub = gen.add_subparsers(dest="model", required=True, parser_class=_Parser)
    gen_sbm_p = gen_sub.add_parser("sbm")
    gen_sbm_p.add_argument("--n1", type=int, required=True)
    gen_sbm_p.add_argument("--p1", type=float, required=True)
    gen_sbm_p.add_argument("--q1", type=float, required=True)
    gen_cbm_p = gen_sub.add_parser("cbm")
    gen_cbmp_p = gen_sub.add_parser("cbm+")
    for sp in (gen_cbm_p, gen_cbmp_p):
        sp.add_argument("--k", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--p", type=float, default=0.001)
        sp.add_argument("--q", type=float, default=0.01)
        sp.add_argument("--eta", type=float, default=0.9)
    gen_cbmp_p.add_argument("--n-prime", type=int, required=True)
    gen_cbmp_p.add_argument("--q1-prime", type=float, default=0.5)
    gen_cbmp_p.add_argument("--q2-prime", type=float, default=0.005)
    gen_cbmp_p.add_argument("--eta-prime", type=float, default=1.0)
    for sp in (gen_sbm_p, gen_cbm_p, gen_cbmp_p):
        sp.add_argument("--seed", type=int, default=DEFAULT_RNG_SEED)
        sp.add_argument("-o", "--output", required=True)
        sp.set_defaults(func=_cmd_generate)

    cb = sub.add_parser("cluster-bipartite", help="find a densely connected pair (undirected)")
    cb.add_argument("-g", "--graph", required=True)
    cb.add_argument("--format", choices=["edges"], default="edges")
    cb.add_argument("--seed-vertex", type=int, required=True)
    cb.add_argument("--gamma", type=float, required=True, help="target volume")
    cb.add_argument("--beta", type=float, required=True, help="target output quality")
    cb.add_argument("--alpha", type=float, default=None, help="override teleport probability")
    cb.add_argument("--best-sweep", action="store_true", help="return best prefix, not first")
    cb.add_argument("--names", default=None)
    cb.add_argument("--json", action="store_true")
    cb.set_defaults(func=_cmd_cluster_bipartite, directed=False)

    cd = sub.add_parser("cluster-directed", help="find a directed flow pair (digraph)")
    cd.add_argument("-g", "--graph", required=True)
    cd.add_argument("--format", choices=["edges", "flow"], default="edges")
    cd.add_argument("--seed-vertex", type=int, required=True)
    cd.add_argument("--side", choices=["1", "2", "both"], default="both")
    cd.add_argument("--phi", type=float, required=True, help="target flow ratio")
    cd.add_argument("--esp-steps", type=int, default=None, help="override step count")
    cd.add_argument("--rng-seed", type=int, default=DEFAULT_RNG_SEED)
    cd.add_argument("--names", default=None)
    cd.add_argument("--json", action="store_true")
    cd.set_defaults(func=_cmd_cluster_directed, directed=True)

    ev = sub.add_parser("eval", help="score a result JSON against ground-truth labels")
    ev.add_argument("--output", required=True, help="RunResult JSON file")
    ev.add_argument("--labels", required=True)
    ev.add_argument("--pair", default="0,1", help="ground-truth labels of the planted pair")
    ev.set_defaults(func=_cmd_eval)

    orc = sub.add_parser("oracle", help="exact slow reference computations")
    orc.add_argument("check", choices=["pagerank", "kernel", "ls-curve"])
    orc.add_argument("-g", "--graph", required=True)
    orc.add_argument("--format", choices=["edges", "flow"], default="edges")
    orc.add_argument("--directed", action="store_true")
    orc.add_argument("--seed-vertex", type=int, default=0)
    orc.add_argument("--side", type=int, choices=[1, 2], default=1)
    orc.add_argument("--alpha", type=float, default=0.1)
    orc.add_argument("--epsilon", type=float, default=1e-4)
    orc.add_argument("--base", action="store_true", help="base graph instead of the cover")
    orc.add_argument("--raw", action="store_true", help="skip the simplify step (ls-curve)")
    orc.add_argument("--set", default="0:1", help="cover set as base:side,... (kernel)")
    orc.set_defaults(func=_cmd_oracle)

    bn = sub.add_parser("bench", help="run the scaled synthetic benchmarks")
    bn.add_argument("table", choices=["table1", "table2"])
    bn.add_argument("--n1", type=int, default=1000)
    bn.add_argument("--trials", type=int, default=10)
    bn.add_argument("--rng-seed", type=int, default=DEFAULT_RNG_SEED)
    bn.add_argument("--workers", type=int, default=1)
    bn.add_argument("--esp-steps", type=int, default=bench_mod.TABLE2_STEPS)
    bn.add_argument("--attempts", type=int, default=bench_mod.TABLE2_ATTEMPTS)
    bn.add_argument("--json", action="store_true")
    bn.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())
