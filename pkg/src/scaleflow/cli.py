"""``scaleflow`` command line: flow, gomory-hu, gen and scaling workloads."""

from __future__ import annotations

import argparse
import os
import sys

from . import bench
from .errors import GenerationError, ParseError, SamplingError
from .generators import ErParams, GirgParams, LayeredParams, gen_er, gen_girg_1d, gen_layered
from .io import format_dimacs_max, format_edge_list, read_graph, write_text
from .push_relabel import STRATEGIES

PAIR_CHOICES = ("low", "high", "uniform", "gh", "fixed")


def _add_generator_flags(p):
    g = p.add_argument_group("generator")
    g.add_argument("--model", choices=("er", "layered", "girg"), help="generate the instance instead of reading --input")
    g.add_argument("--n", type=int, help="vertex count (er, girg)")
    g.add_argument("--p", type=float, help="edge probability (er)")
    g.add_argument("--m", type=int, help="edge count (er)")
    g.add_argument("--weights", type=int, nargs=2, metavar=("LO", "HI"), help="capacity range")
    g.add_argument("--super-terminals", action="store_true", help="add s*/t* to an er graph")
    g.add_argument("--width", type=int, help="layer width (layered)")
    g.add_argument("--length", type=int, help="layer count (layered)")
    g.add_argument("--degree", type=int, help="out-degree per vertex (layered)")
    g.add_argument("--avg-degree", type=float, default=10.0, help="target average degree (girg)")
    g.add_argument("--ple", type=float, default=2.8, help="power-law exponent (girg)")
    g.add_argument("--gen-seed", type=int, default=0, help="generator seed")


def _add_input_flags(p):
    p.add_argument("--input", help="graph file")
    p.add_argument("--format", choices=("edgelist", "dimacs"), default="edgelist")
    p.add_argument("--directed", action="store_true", help="treat edge-list lines as directed arcs")
    p.add_argument("--instance", help="instance name for the CSV (default: input file name or model)")
    _add_generator_flags(p)


def _add_solver_flags(p):
    p.add_argument("--solver", choices=bench.SOLVERS, default="dinitz-opt")
    p.add_argument("--pr-cut", choices=STRATEGIES, help="cut extraction for push-relabel")
    p.add_argument("--no-skip-layer", action="store_true", help="disable the forward-layer skip rule (dinitz-opt)")
    p.add_argument("--recreate-state", action="store_true", help="reallocate solver state before every flow")


def build_parser():
    parser = argparse.ArgumentParser(prog="scaleflow", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("flow", help="run one flow per sampled terminal pair")
    _add_input_flags(p)
    _add_solver_flags(p)
    p.add_argument("--pairs", default="low",
                   help=f"comma-separated pair modes from {{{','.join(PAIR_CHOICES)}}}")
    p.add_argument("--count", type=int, default=10, help="pairs per mode")
    p.add_argument("--terminals", type=int, nargs=2, metavar=("S", "T"), help="terminals for --pairs fixed")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV path (default: stdout)")

    p = sub.add_parser("gomory-hu", help="Gomory-Hu tree via Gusfield's algorithm")
    _add_input_flags(p)
    _add_solver_flags(p)
    p.add_argument("--tree", help="where to write the tree ('child parent weight' lines)")
    p.add_argument("--out", help="summary CSV path (default: stdout)")

    p = sub.add_parser("gen", help="write a generated instance")
    _add_generator_flags(p)
    p.add_argument("--format", choices=("edgelist", "dimacs"), default="edgelist")
    p.add_argument("--out", required=True)

    p = sub.add_parser("scaling", help="edge-scan scaling study on fresh GIRGs")
    p.add_argument("--min-n", type=int, default=1000)
    p.add_argument("--max-n", type=int, default=64000)
    p.add_argument("--iterations", type=int, default=10)
    p.add_argument("--count", type=int, default=10, help="pairs per graph")
    p.add_argument("--solvers", default="dinitz,dinitz-opt", help="comma-separated solver names")
    p.add_argument("--band", type=int, nargs=2, default=(10, 20), metavar=("LO", "HI"), help="terminal degree band")
    p.add_argument("--avg-degree", type=float, default=10.0)
    p.add_argument("--ple", type=float, default=2.8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="per-flow CSV path (default: stdout)")
    p.add_argument("--aggregate-out", help="per-size aggregate CSV path")
    return parser


def _generate(args):
    if args.model == "er":
        if args.n is None:
            raise SystemExit("--model er needs --n")
        weights = tuple(args.weights) if args.weights else None
        return gen_er(ErParams(args.n, p=args.p, m=args.m, weights=weights,
                               super_terminals=args.super_terminals, seed=args.gen_seed))
    if args.model == "layered":
        if None in (args.width, args.length, args.degree):
            raise SystemExit("--model layered needs --width, --length and --degree")
        weights = tuple(args.weights) if args.weights else (1, 10000)
        return gen_layered(LayeredParams(args.width, args.length, args.degree, weights, seed=args.gen_seed))
    if args.n is None:
        raise SystemExit("--model girg needs --n")
    return gen_girg_1d(GirgParams(args.n, args.avg_degree, args.ple, seed=args.gen_seed))


def _load(args):
    """Returns ``(n, edges, directed, terminals, instance)``."""
    if (args.input is None) == (args.model is None):
        raise SystemExit("give exactly one of --input and --model")
    if args.input is not None:
        n, edges, _, terminals = read_graph(args.input, args.format)
        directed = args.directed or args.format == "dimacs"
        return n, edges, directed, terminals, args.instance or os.path.basename(args.input)
    g = _generate(args)
    return g.n, g.edges, g.directed, g.terminals, args.instance or f"{args.model}-seed{args.gen_seed}"


def _emit(text, path):
    if path:
        write_text(path, text)
    else:
        sys.stdout.write(text)


def _config(args, **kw):
    return bench.BenchConfig(command=args.command, solver=args.solver, pr_cut=args.pr_cut,
                             skip_layer=not args.no_skip_layer, reuse_state=not args.recreate_state, **kw)


def cmd_flow(args):
    n, edges, directed, terminals, instance = _load(args)
    for mode in args.pairs.split(","):
        if mode not in PAIR_CHOICES:
            raise SystemExit(f"unknown pair mode {mode!r}")
    config = _config(args, pairs=args.pairs, count=args.count, seed=args.seed,
                     terminals=tuple(args.terminals) if args.terminals else None, instance=instance)
    rows = bench.run_flow_workload(config, n, edges, directed, designated=terminals)
    _emit(bench.to_csv(rows), args.out)


def cmd_gomory_hu(args):
    n, edges, directed, _, instance = _load(args)
    if directed:
        raise SystemExit("gomory-hu needs an undirected graph")
    config = _config(args, instance=instance)
    _, row = bench.run_gomory_hu(config, n, edges, tree_path=args.tree)
    _emit(bench.to_csv([row], bench.GH_COLUMNS), args.out)


def cmd_gen(args):
    if args.model is None:
        raise SystemExit("gen needs --model")
    g = _generate(args)
    if args.format == "dimacs":
        if g.terminals is None:
            raise SystemExit("dimacs output needs terminals (layered, or er with --super-terminals)")
        text = format_dimacs_max(g.n, g.edges, *g.terminals)
    else:
        text = format_edge_list(g.n, g.edges, weighted=True)
    write_text(args.out, text)


def cmd_scaling(args):
    config = bench.ScalingConfig(sizes=bench.doubling_sizes(args.min_n, args.max_n),
                                 iterations=args.iterations, pairs=args.count,
                                 solvers=tuple(args.solvers.split(",")), avg_degree=args.avg_degree,
                                 ple=args.ple, band=tuple(args.band), seed=args.seed)
    for name in config.solvers:
        if name not in bench.SOLVERS:
            raise SystemExit(f"unknown solver {name!r}")
    rows, agg = bench.run_scaling(config)
    _emit(bench.to_csv(rows), args.out)
    if args.aggregate_out:
        write_text(args.aggregate_out, bench.to_csv(agg, bench.AGGREGATE_COLUMNS))


COMMANDS = {"flow": cmd_flow, "gomory-hu": cmd_gomory_hu, "gen": cmd_gen, "scaling": cmd_scaling}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except (ParseError, SamplingError, GenerationError, ValueError, OSError) as exc:
        print(f"scaleflow: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
