"""Benchmark workloads and CSV emission.

Every workload builds its network once, then runs one flow computation per
terminal pair.  Non-timing columns depend only on the instance, the
configuration and the seed.
"""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .dinitz import Dinitz
from .dinitz_opt import DinitzOpt, dinitz_bi, dinitz_reset, dinitz_stamp
from .generators import GirgParams, gen_girg_1d, sample_terminals
from .gomory_hu import CutOracle, gusfield
from .network import FlowNetwork
from .push_relabel import STRATEGIES, PushRelabel

SOLVERS = ("dinitz", "dinitz-bi", "dinitz-reset", "dinitz-stamp", "dinitz-opt", "push-relabel")

COUNTER_COLUMNS = (
    "instance", "n", "m", "solver", "source", "sink", "source_degree", "sink_degree",
    "flow_value", "rounds", "initial_distance", "bfs_edges_total", "dfs_edges_total", "edge_scans",
    "forward", "backward", "next_forward", "next_backward", "intersection",
    "augmented_arcs", "reset_arcs",
)
TIMING_COLUMNS = ("build", "reset", "init", "bfs", "dfs", "flow", "total")
COLUMNS = COUNTER_COLUMNS + TIMING_COLUMNS

AGGREGATED = ("rounds", "bfs_edges_total", "dfs_edges_total", "edge_scans", "flow")
AGGREGATE_COLUMNS = ("solver", "n", "flows") + tuple(f"{c}_{s}" for c in AGGREGATED for s in ("mean", "std"))

GH_COLUMNS = ("instance", "n", "m", "solver", "oracle_calls", "trivial_cuts", "tree_weight",
              "build", "reset", "flow", "cut", "total")
GH_COUNTER_COLUMNS = GH_COLUMNS[:7]


def make_solver(name, pr_cut=None, skip_layer=True, reuse_state=True):
    """Instantiate a solver by its command-line name."""
    if pr_cut is not None and name != "push-relabel":
        raise ValueError(f"--pr-cut applies to push-relabel only, not {name}")
    if not skip_layer and name != "dinitz-opt":
        raise ValueError(f"disabling the skip rule applies to dinitz-opt only, not {name}")
    if name == "dinitz":
        return Dinitz(reuse_state=reuse_state)
    if name == "dinitz-bi":
        return dinitz_bi(reuse_state=reuse_state)
    if name == "dinitz-reset":
        return dinitz_reset(reuse_state=reuse_state)
    if name == "dinitz-stamp":
        return dinitz_stamp(reuse_state=reuse_state)
    if name == "dinitz-opt":
        return DinitzOpt(skip_forward_layer=skip_layer, reuse_state=reuse_state)
    if name == "push-relabel":
        return PushRelabel(cut_strategy=pr_cut or "convert", reuse_state=reuse_state)
    raise ValueError(f"unknown solver {name!r}; pick one of {SOLVERS}")


@dataclass
class BenchConfig:
    command: str = "flow"
    solver: str = "dinitz-opt"
    pr_cut: str | None = None
    pairs: str = "low"
    count: int = 10
    seed: int = 0
    skip_layer: bool = True
    reuse_state: bool = True
    terminals: tuple[int, int] | None = None
    instance: str = "graph"

    def __post_init__(self):
        if self.solver not in SOLVERS:
            raise ValueError(f"unknown solver {self.solver!r}; pick one of {SOLVERS}")
        if self.pr_cut is not None:
            if self.solver != "push-relabel":
                raise ValueError("pr_cut is only valid with the push-relabel solver")
            if self.pr_cut not in STRATEGIES:
                raise ValueError(f"unknown cut strategy {self.pr_cut!r}")
        if self.count < 1:
            raise ValueError("count must be positive")

    def new_solver(self):
        return make_solver(self.solver, self.pr_cut, self.skip_layer, self.reuse_state)


# --- rows ------------------------------------------------------------------


def _timed_build(n, edges, directed):
    t0 = time.perf_counter()
    net = FlowNetwork.build(n, edges, directed=directed)
    return net, time.perf_counter() - t0


def flow_row(net, solver, s, t, instance="graph", build=0.0, pr_cut=None):
    """Run one flow, reset the network, and return the CSV record."""
    deg = net.degrees()
    before = net.augmented_arcs
    row = dict.fromkeys(COLUMNS, 0)
    row.update(instance=instance, n=net.n, m=net.m, solver=solver.name, source=s, sink=t,
               source_degree=int(deg[s]), sink_degree=int(deg[t]), build=build)
    if isinstance(solver, PushRelabel):
        if pr_cut is not None:
            cut = solver.min_cut(net, s, t, strategy=pr_cut)
            row["flow_value"] = cut.value
            row["flow"] = sum(solver.timings.get(k, 0.0) for k in ("preflow", "convert", "cut"))
        else:
            row["flow_value"] = solver.max_flow(net, s, t).value
            row["flow"] = solver.timings["preflow"]
        row["init"] = solver.timings["init"]
        row["edge_scans"] = int(solver.stats[3])
        row["initial_distance"] = -1
    else:
        res = solver.max_flow(net, s, t)
        st = res.stats
        row.update(flow_value=res.value, rounds=res.rounds,
                   initial_distance=st.distances[0] if st.distances else -1,
                   bfs_edges_total=st.bfs_total, dfs_edges_total=st.dfs_total, edge_scans=st.total,
                   **st.regions)
        row.update({k: res.timings[k] for k in ("init", "bfs", "dfs", "flow")})
    row["augmented_arcs"] = net.augmented_arcs - before
    t0 = time.perf_counter()
    row["reset_arcs"] = solver.reset(net)
    row["reset"] = time.perf_counter() - t0
    row["total"] = row["flow"] + row["reset"]
    return row


def run_flow_workload(config, n, edges, directed, designated=None):
    """One row per sampled pair, in pair order."""
    net, build = _timed_build(n, edges, directed)
    pairs = config_pairs(config, net, designated)
    solver = config.new_solver()
    return [flow_row(net, solver, s, t, config.instance, build, config.pr_cut) for s, t in pairs]


def config_pairs(config, net, designated=None):
    """Pairs for every mode of the comma-separated ``config.pairs``, ``count`` each."""
    pairs = []
    for i, mode in enumerate(config.pairs.split(",")):
        if mode == "fixed":
            terminals = config.terminals or designated
            pairs += sample_terminals(net, "fixed", config.count, terminals=terminals)
        else:
            pairs += sample_terminals(net, mode, config.count, seed=_cell_seed(config.seed, i))
    return pairs


# --- scaling ---------------------------------------------------------------


def doubling_sizes(lo, hi):
    sizes = []
    n = lo
    while n <= hi:
        sizes.append(n)
        n *= 2
    return sizes


def _cell_seed(seed, *keys):
    return int(np.random.SeedSequence([seed, *keys]).generate_state(1)[0])


@dataclass
class ScalingConfig:
    sizes: list[int] = field(default_factory=lambda: doubling_sizes(1000, 64000))
    iterations: int = 10
    pairs: int = 10
    solvers: tuple[str, ...] = ("dinitz", "dinitz-opt")
    avg_degree: float = 10.0
    ple: float = 2.8
    band: tuple[int, int] = (10, 20)
    seed: int = 0


def run_scaling(config):
    """Per-flow rows and per-(solver, size) aggregates over fresh GIRGs."""
    rows = []
    for n in config.sizes:
        for it in range(config.iterations):
            graph = gen_girg_1d(GirgParams(n, config.avg_degree, config.ple, seed=_cell_seed(config.seed, n, it)))
            net, build = _timed_build(graph.n, graph.edges, directed=False)
            pairs = sample_terminals(net, "low", config.pairs, seed=_cell_seed(config.seed, n, it, 1),
                                     band=config.band)
            for name in config.solvers:
                solver = make_solver(name)
                for s, t in pairs:
                    rows.append(flow_row(net, solver, s, t, f"girg-n{n}-i{it}", build))
    return rows, aggregate(rows)


def aggregate(rows):
    groups = {}
    for r in rows:
        groups.setdefault((r["solver"], r["n"]), []).append(r)
    out = []
    for (solver, n), members in groups.items():
        agg = {"solver": solver, "n": n, "flows": len(members)}
        for c in AGGREGATED:
            vals = np.array([m[c] for m in members], dtype=float)
            agg[f"{c}_mean"] = float(vals.mean())
            agg[f"{c}_std"] = float(vals.std())
        out.append(agg)
    return out


def loglog_slope(xs, ys):
    """Least-squares slope of log(y) against log(x)."""
    xs, ys = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
    if len(xs) < 2 or (xs <= 0).any() or (ys <= 0).any():
        raise ValueError("need at least two positive points")
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


# --- Gomory-Hu ---------------------------------------------------------------


def run_gomory_hu(config, n, edges, tree_path=None):
    """Build the tree with the configured oracle; returns ``(tree, summary_row)``."""
    net, build = _timed_build(n, edges, directed=False)
    oracle = CutOracle(net, config.new_solver())
    t0 = time.perf_counter()
    tree = gusfield(net, oracle)
    total = time.perf_counter() - t0
    wdeg = net.weighted_degrees()
    trivial = sum(1 for s, t, v in tree.calls if v == min(wdeg[s], wdeg[t]))
    if tree_path is not None:
        tree.write(tree_path)
    row = {"instance": config.instance, "n": n, "m": net.m, "solver": oracle.solver.name,
           "oracle_calls": len(tree.calls), "trivial_cuts": trivial, "tree_weight": int(tree.weight.sum()),
           "build": build, **oracle.timings, "total": total}
    return tree, row


# --- CSV -------------------------------------------------------------------------


def _fmt(v):
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else str(v)
    return str(v)


def to_csv(rows, columns=COLUMNS):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()


def write_csv(path, rows, columns=COLUMNS):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(to_csv(rows, columns))


def strip_timings(text, keep=COUNTER_COLUMNS):
    """CSV text reduced to the deterministic columns."""
    rows = list(csv.reader(io.StringIO(text)))
    idx = [rows[0].index(c) for c in keep if c in rows[0]]
    return "\n".join(",".join(r[i] for i in idx) for r in rows) + "\n"
