"""Seeded random instance generators and terminal-pair sampling.

All generators are deterministic functions of their parameters (including
the seed) and return an :class:`EdgeList`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import GenerationError, SamplingError


@dataclass
class EdgeList:
    n: int
    edges: np.ndarray  # (k, 3) int64 rows: tail, head, capacity
    directed: bool
    weighted: bool = False
    source: int | None = None
    sink: int | None = None

    @property
    def terminals(self):
        if self.source is None:
            return None
        return self.source, self.sink

    def network(self):
        from .network import FlowNetwork
        return FlowNetwork.build(self.n, self.edges, directed=self.directed)

    def average_degree(self):
        return 2 * len(self.edges) / self.n if self.n else 0.0


def _capacities(rng, k, weights):
    if weights is None:
        return np.ones(k, dtype=np.int64)
    lo, hi = weights
    return rng.integers(lo, hi + 1, size=k, dtype=np.int64)


# --- Erdos-Renyi -------------------------------------------------------------


@dataclass
class ErParams:
    n: int
    p: float | None = None
    m: int | None = None
    weights: tuple[int, int] | None = None
    super_terminals: bool = False
    seed: int = 0

    def __post_init__(self):
        if (self.p is None) == (self.m is None):
            raise ValueError("set exactly one of p and m")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.p is not None and not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p={self.p} is not a probability")
        if self.m is not None and not 0 <= self.m <= self.n * (self.n - 1):
            raise ValueError(f"m={self.m} exceeds the {self.n * (self.n - 1)} possible arcs")
        if self.weights is not None and not 0 <= self.weights[0] <= self.weights[1]:
            raise ValueError(f"bad capacity range {self.weights}")
        if self.super_terminals and self.n < 20:
            raise ValueError("super terminals attach to 10 + 10 distinct vertices; need n >= 20")


SUPER_TERMINAL_FANOUT = 10


def gen_er(params):
    """Directed simple G(n, p) or G(n, m) graph."""
    P = params
    rng = np.random.default_rng(P.seed)
    n = P.n
    pairs = n * (n - 1)
    if P.m is not None:
        codes = np.sort(rng.choice(pairs, size=P.m, replace=False)) if P.m else np.zeros(0, dtype=np.int64)
    else:
        count = rng.binomial(pairs, P.p)
        codes = np.sort(rng.choice(pairs, size=count, replace=False)) if count else np.zeros(0, dtype=np.int64)
    codes = codes.astype(np.int64)
    u = codes // (n - 1) if n > 1 else codes
    r = codes % (n - 1) if n > 1 else codes
    v = np.where(r < u, r, r + 1)
    cap = _capacities(rng, len(codes), P.weights)
    edges = np.column_stack([u, v, cap])
    if not P.super_terminals:
        return EdgeList(n, edges, directed=True, weighted=P.weights is not None)
    big = int(cap.sum()) + 1
    chosen = rng.choice(n, size=2 * SUPER_TERMINAL_FANOUT, replace=False)
    s, t = n, n + 1
    out_arcs = [(s, int(x), big) for x in chosen[:SUPER_TERMINAL_FANOUT]]
    in_arcs = [(int(x), t, big) for x in chosen[SUPER_TERMINAL_FANOUT:]]
    extra = np.array(out_arcs + in_arcs, dtype=np.int64)
    return EdgeList(n + 2, np.vstack([edges, extra]), directed=True, weighted=True, source=s, sink=t)


# --- layered hard instances --------------------------------------------------


@dataclass
class LayeredParams:
    width: int
    length: int
    degree: int
    weights: tuple[int, int] = (1, 10000)
    seed: int = 0

    def __post_init__(self):
        if self.width < 1 or self.length < 1:
            raise ValueError("width and length must be positive")
        if not 1 <= self.degree <= self.width:
            raise ValueError(f"degree {self.degree} must lie in [1, width={self.width}]")
        if not 0 <= self.weights[0] <= self.weights[1]:
            raise ValueError(f"bad capacity range {self.weights}")


def gen_layered(params):
    """``length`` layers of ``width`` vertices between a source and a sink.

    Vertex ``j`` of a layer links to ``degree`` distinct vertices of the next
    layer: a random permutation partner plus uniformly chosen others, so every
    vertex has an incoming arc.  Source and sink arcs never bottleneck.
    """
    P = params
    rng = np.random.default_rng(P.seed)
    W, L, d = P.width, P.length, P.degree
    s, t = 0, W * L + 1
    vid = lambda layer, j: 1 + layer * W + j  # noqa: E731
    rows = []
    for layer in range(L - 1):
        partner = rng.permutation(W)
        for j in range(W):
            others = np.delete(np.arange(W), partner[j])
            targets = [partner[j], *rng.choice(others, size=d - 1, replace=False)]
            rows.extend((vid(layer, j), vid(layer + 1, int(k))) for k in targets)
    inner = np.array(rows, dtype=np.int64).reshape(-1, 2)
    cap = _capacities(rng, len(inner), P.weights)
    big = d * P.weights[1] + 1
    source_arcs = [(s, vid(0, j), big) for j in range(W)]
    sink_arcs = [(vid(L - 1, j), t, big) for j in range(W)]
    edges = np.vstack([
        np.array(source_arcs, dtype=np.int64),
        np.column_stack([inner, cap]),
        np.array(sink_arcs, dtype=np.int64),
    ])
    return EdgeList(W * L + 2, edges, directed=True, weighted=True, source=s, sink=t)


# --- 1-dimensional threshold GIRGs ---------------------------------------------


@dataclass
class GirgParams:
    n: int
    avg_degree: float = 10.0
    ple: float = 2.8
    seed: int = 0
    scale: float | None = None  # fixes the threshold constant and skips calibration
    tolerance: float = 0.01

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.ple <= 2:
            raise ValueError(f"power-law exponent must exceed 2, got {self.ple}")
        if self.avg_degree <= 0:
            raise ValueError("average degree must be positive")
        if not 0 < self.tolerance <= 0.05:
            raise ValueError("tolerance must lie in (0, 0.05]")


@njit(cache=True)
def _girg_pairs(pos, w, cls_start, cls_wmax, scale, limit, emit, out):
    """Count (and with ``emit``, write) pairs within the threshold distance.

    Vertices are grouped by weight class and sorted by position inside each
    class, so each vertex only binary-searches a window per class.
    Returns -1 once the count exceeds ``limit``.
    """
    n = pos.shape[0]
    ncls = cls_start.shape[0] - 1
    total_w = w.sum()
    k = 0
    for u in range(n):
        xu = pos[u]
        f = scale * w[u] / total_w
        for c in range(ncls):
            lo, hi = cls_start[c], cls_start[c + 1]
            if lo == hi:
                continue
            r = f * cls_wmax[c]
            if r >= 0.5:
                a0, a1, b0, b1 = lo, hi, hi, hi
            else:
                seg = pos[lo:hi]
                left, right = xu - r, xu + r
                if left < 0.0:
                    a0 = lo
                    a1 = lo + np.searchsorted(seg, right, side="right")
                    b0 = lo + np.searchsorted(seg, left + 1.0, side="left")
                    b1 = hi
                elif right > 1.0:
                    a0 = lo + np.searchsorted(seg, left, side="left")
                    a1 = hi
                    b0 = lo
                    b1 = lo + np.searchsorted(seg, right - 1.0, side="right")
                else:
                    a0 = lo + np.searchsorted(seg, left, side="left")
                    a1 = lo + np.searchsorted(seg, right, side="right")
                    b0, b1 = hi, hi
                if b0 < a1 and b1 > a0:
                    b0 = max(b0, a1)  # overlapping windows near the wrap
            for rng_i in range(2):
                i0 = a0 if rng_i == 0 else b0
                i1 = a1 if rng_i == 0 else b1
                for v in range(i0, i1):
                    if v <= u:
                        continue
                    dx = abs(pos[v] - xu)
                    if dx > 0.5:
                        dx = 1.0 - dx
                    if dx <= f * w[v]:
                        if emit:
                            out[k, 0] = u
                            out[k, 1] = v
                        k += 1
                        if k > limit:
                            return -1
    return k


def _girg_layout(params):
    rng = np.random.default_rng(params.seed)
    n = params.n
    w = (1.0 - rng.random(n)) ** (-1.0 / (params.ple - 1.0))
    pos = rng.random(n)
    cls = np.floor(np.log2(w)).astype(np.int64)
    order = np.lexsort((pos, cls))
    ncls = int(cls.max()) + 1
    cls_start = np.searchsorted(cls[order], np.arange(ncls + 1)).astype(np.int64)
    cls_wmax = np.array([w[order[cls_start[c]:cls_start[c + 1]]].max(initial=0.0) for c in range(ncls)])
    # relabel so that sorted order coincides with vertex order inside the kernel
    return w[order], pos[order], cls_start, cls_wmax, order


def calibrate_girg(params):
    """Threshold constant whose realised average degree is within tolerance of the target."""
    w, pos, cls_start, cls_wmax, _ = _girg_layout(params)
    n = params.n
    target = params.avg_degree
    if target > n - 1:
        raise GenerationError(f"average degree {target} is unattainable with n={n}")
    dummy = np.zeros((1, 2), dtype=np.int64)
    limit = int(math.ceil(n * target))  # twice the target edge count

    def degree(log_c):
        k = _girg_pairs(pos, w, cls_start, cls_wmax, 2.0 ** log_c, limit, False, dummy)
        return math.inf if k < 0 else 2.0 * k / n

    lo, hi = -20.0, 20.0
    best = None
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        deg = degree(mid)
        err = abs(deg - target) / target
        if best is None or err < best[1]:
            best = (mid, err)
        if err <= params.tolerance:
            break
        if deg < target:
            lo = mid
        else:
            hi = mid
    if best[1] > 0.05:
        raise GenerationError(f"could not reach average degree {target} (closest relative error {best[1]:.3f})")
    return 2.0 ** best[0]


def gen_girg_1d(params):
    """Undirected unit-capacity GIRG on the circle with temperature 0."""
    scale = params.scale if params.scale is not None else calibrate_girg(params)
    w, pos, cls_start, cls_wmax, order = _girg_layout(params)
    k = _girg_pairs(pos, w, cls_start, cls_wmax, scale, np.int64(1) << 62, False, np.zeros((1, 2), dtype=np.int64))
    pairs = np.zeros((k, 2), dtype=np.int64)
    _girg_pairs(pos, w, cls_start, cls_wmax, scale, np.int64(1) << 62, True, pairs)
    # back to the original (random) vertex ids
    ids = order[pairs]
    ids.sort(axis=1)
    ids = ids[np.lexsort((ids[:, 1], ids[:, 0]))]
    edges = np.column_stack([ids, np.ones(len(ids), dtype=np.int64)])
    graph = EdgeList(params.n, edges, directed=False)
    graph.scale = scale
    return graph


# --- terminal sampling --------------------------------------------------------

PAIR_MODES = ("low", "high", "uniform", "gh", "gh_like", "fixed")


def degree_band(mode, avg):
    if mode == "low":
        return 0.75 * avg, 1.25 * avg
    if mode == "high":
        return 10.0 * avg, 100.0 * avg
    raise ValueError(f"mode {mode!r} has no degree band")


def sample_terminals(net, mode, count, seed=0, band=None, terminals=None, oracle_solver=None):
    """Draw ``count`` source/sink pairs from ``net``.

    ``low``/``high`` pick both terminals uniformly among vertices whose degree
    lies in a band relative to the average degree; an explicit ``band``
    (absolute degrees, inclusive) overrides it.  ``gh`` (alias ``gh_like``)
    samples distinct pairs from the schedule of Gusfield's algorithm and
    ``fixed`` repeats ``terminals``.
    """
    rng = np.random.default_rng(seed)
    deg = net.degrees()
    if mode == "fixed":
        if terminals is None:
            raise SamplingError("fixed pairs need designated terminals")
        return [tuple(int(x) for x in terminals)] * count
    if mode not in PAIR_MODES:
        raise ValueError(f"unknown pair mode {mode!r}; pick one of {PAIR_MODES}")
    if mode in ("gh", "gh_like"):
        from .dinitz_opt import DinitzOpt
        from .gomory_hu import CutOracle, gusfield
        tree = gusfield(net, CutOracle(net, oracle_solver or DinitzOpt()))
        net.reset_flows()
        schedule = [(s, t) for s, t, _ in tree.calls]
        if not schedule:
            raise SamplingError("graph too small for a Gusfield schedule")
        idx = rng.choice(len(schedule), size=min(count, len(schedule)), replace=False)
        return [schedule[i] for i in idx]
    if mode == "uniform":
        pool = np.arange(net.n)
        band = None
    else:
        if band is None:
            band = degree_band(mode, float(deg.mean()) if net.n else 0.0)
        lo, hi = band
        pool = np.flatnonzero((deg >= lo) & (deg <= hi))
    if len(pool) < 2:
        raise SamplingError(f"degree band {band} holds {len(pool)} vertices; need two", band=band)
    pairs = []
    for _ in range(count):
        s, t = rng.choice(pool, size=2, replace=False)
        pairs.append((int(s), int(t)))
    return pairs
