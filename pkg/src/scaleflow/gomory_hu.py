"""Gusfield's Gomory-Hu tree construction over a pluggable min-cut oracle."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import GomoryHuError


@dataclass
class GomoryHuTree:
    """Cut tree rooted at vertex 0; ``weight[v]`` labels the edge to ``parent[v]``."""

    parent: np.ndarray
    weight: np.ndarray
    calls: list = field(default_factory=list)  # (source, sink, value) per oracle call

    @property
    def n(self):
        return len(self.parent)

    def min_cut(self, u, v):
        return tree_min_cut(self, u, v)

    def lines(self):
        return [f"{v} {int(self.parent[v])} {int(self.weight[v])}" for v in range(1, self.n)]

    def write(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.writelines(line + "\n" for line in self.lines())

    @classmethod
    def read(cls, path, n=None):
        rows = np.loadtxt(path, dtype=np.int64, ndmin=2)
        if n is None:
            n = len(rows) + 1
        parent = np.zeros(n, dtype=np.int64)
        weight = np.zeros(n, dtype=np.int64)
        for child, par, w in rows:
            parent[child] = par
            weight[child] = w
        return cls(parent, weight)


class CutOracle:
    """Min-cut oracle on a shared network; clears touched arcs before every call."""

    def __init__(self, net, solver):
        self.net = net
        self.solver = solver
        self.timings = {"reset": 0.0, "flow": 0.0, "cut": 0.0}
        self.reset_arcs = 0
        self.results = []

    def __call__(self, s, t):
        clock = time.perf_counter
        t0 = clock()
        self.reset_arcs += self.net.reset_flows()
        t1 = clock()
        if hasattr(self.solver, "cut_strategy"):
            # push-relabel computes the flow inside min_cut; split its own timers
            cut = self.solver.min_cut(self.net, s, t)
            result = None
            t2 = t1 + sum(self.solver.timings.get(k, 0.0) for k in ("init", "preflow", "convert"))
        else:
            result = self.solver.max_flow(self.net, s, t)
            t2 = clock()
            cut = self.solver.min_cut(self.net, s, t)
        t3 = clock()
        self.timings["reset"] += t1 - t0
        self.timings["flow"] += t2 - t1
        self.timings["cut"] += t3 - t2
        self.results.append(result)
        return cut


def gusfield(net, oracle):
    """Build a Gomory-Hu tree with ``n - 1`` calls to ``oracle(source, sink)``.

    The oracle returns a :class:`~scaleflow.results.CutResult` whose
    ``source_side`` contains the source and not the sink.
    """
    if net.directed:
        raise ValueError("Gomory-Hu trees need an undirected network")
    n = net.n
    if n < 1:
        raise ValueError("need at least one vertex")
    parent = np.zeros(n, dtype=np.int64)
    weight = np.zeros(n, dtype=np.int64)
    calls = []
    for i in range(1, n):
        p = int(parent[i])
        cut = oracle(i, p)
        side = np.asarray(cut.source_side, dtype=np.int64)
        inside = np.zeros(n, dtype=bool)
        inside[side] = True
        if not inside[i] or inside[p]:
            raise GomoryHuError(f"oracle cut for ({i}, {p}) does not separate source from sink")
        weight[i] = cut.value
        calls.append((i, p, int(cut.value)))
        # only vertices of the source side can move, so scan that side alone
        movers = side[(side > i) & (parent[side] == p)]
        parent[movers] = i
    return GomoryHuTree(parent, weight, calls)


def tree_min_cut(tree, u, v):
    """Smallest weight on the tree path between ``u`` and ``v``."""
    if u == v:
        raise ValueError("tree_min_cut needs two distinct vertices")
    parent, weight = tree.parent, tree.weight
    best = None
    # parent[x] < x for every non-root x, so always lift the larger index
    while u != v:
        if u > v:
            w, u = weight[u], parent[u]
        else:
            w, v = weight[v], parent[v]
        best = w if best is None else min(best, w)
    return int(best)


def validate(tree, net, solver=None, max_n=200):
    """Check every pair's tree cut against a direct max-flow computation."""
    from .dinitz import Dinitz

    if net.n > max_n:
        raise ValueError(f"validate is quadratic in flows; n={net.n} exceeds max_n={max_n}")
    solver = solver or Dinitz()
    for u, v in combinations(range(net.n), 2):
        solver.reset(net)
        value = solver.max_flow(net, u, v).value
        if value != tree_min_cut(tree, u, v):
            solver.reset(net)
            return False
    solver.reset(net)
    return True
