"""Dinitz's algorithm with a unidirectional BFS layered network.

The layered network is implicit in the distance labels.  The blocking flow
is found by an iterative DFS that keeps a next-arc counter per vertex, so an
arc that leads nowhere is inspected once per round.  The DFS kernel is shared
with :mod:`scaleflow.dinitz_opt`, which only changes the admissibility rule.
"""

from __future__ import annotations

import time

import numpy as np
from numba import njit

from .errors import ContractViolation
from .network import _augment_path, cut_capacity, reachable_from
from .results import (
    BFS_DISTANCE,
    BFS_FORWARD,
    BFS_FORWARD_LAYERS,
    BFS_LABEL_WRITES,
    BFS_NEXT_FORWARD,
    BFS_SEEN,
    BFS_SLOTS,
    DS,
    DT,
    INF,
    NEXT,
    STAMP,
    CutResult,
    FlowResult,
    SearchSpaceStats,
)


@njit(cache=True)
def _init_labels(node, first, rnd):
    # the per-round linear initialisation that time stamps make unnecessary
    n = node.shape[0]
    for v in range(n):
        node[v, DS] = INF
        node[v, DT] = INF
        node[v, NEXT] = first[v]
        node[v, STAMP] = rnd
    return n


@njit(cache=True)
def _bfs_unidirectional(first, head, cap, flow, node, queue, s, t, out):
    node[s, DS] = 0
    queue[0] = s
    qb, qe = 0, 1
    scanned = 0
    dist_t = INF
    layers = 0
    while qb < qe:
        u = queue[qb]
        du = node[u, DS]
        if du >= dist_t:
            break  # the sink's layer is complete
        qb += 1
        layers = du + 1
        for a in range(first[u], first[u + 1]):
            scanned += 1
            if cap[a] - flow[a] > 0:
                v = head[a]
                if node[v, DS] == INF:
                    node[v, DS] = du + 1
                    queue[qe] = v
                    qe += 1
                    if v == t:
                        dist_t = du + 1
    volume = 0
    for i in range(qb, qe):
        u = queue[i]
        volume += first[u + 1] - first[u]
    out[BFS_FORWARD] = scanned
    out[BFS_NEXT_FORWARD] = volume
    out[BFS_FORWARD_LAYERS] = layers
    out[BFS_DISTANCE] = dist_t
    out[BFS_SEEN] = qe
    return dist_t != INF


@njit(cache=True)
def _blocking_flow(first, head, twin, cap, flow, node, path, s, t, rnd, use_dt, skip_layer,
                   touched, n_touched, marked, counters, out):
    """Augment shortest paths from ``s`` until the layered network is blocked.

    An arc u->v with residual capacity is admissible when ``ds(v) = ds(u)+1``
    or, with ``use_dt``, when ``dt(v) = dt(u)-1``.  Labels count only if the
    vertex stamp equals ``rnd``.  ``skip_layer >= 0`` rejects forward arcs out
    of that layer into vertices the backward search never saw.
    """
    total = 0
    scanned = 0
    paths = 0
    depth = 0
    u = s
    while True:
        if u == t:
            total += _augment_path(path, depth, twin, cap, flow, touched, n_touched, marked, counters)
            paths += 1
            k = 0
            while k < depth and cap[path[k]] - flow[path[k]] > 0:
                k += 1
            depth = k
            u = s if k == 0 else head[path[k - 1]]
            continue
        dsu = node[u, DS]
        dtu = node[u, DT]
        e = node[u, NEXT]
        end = first[u + 1]
        nxt = -1
        while e < end:
            scanned += 1
            if cap[e] - flow[e] > 0:
                v = head[e]
                if node[v, STAMP] == rnd:
                    dsv = node[v, DS]
                    dtv = node[v, DT]
                    ok = dsu != INF and dsv == dsu + 1
                    if ok and dsu == skip_layer and dtv == INF:
                        ok = False
                    if not ok and use_dt and dtu != INF and dtv != INF and dtv == dtu - 1:
                        ok = True
                    if ok:
                        nxt = v
                        break
            e += 1
        node[u, NEXT] = e
        if nxt >= 0:
            path[depth] = e
            depth += 1
            u = nxt
        else:
            if depth == 0:
                break
            depth -= 1
            u = head[twin[path[depth]]]
            node[u, NEXT] += 1
    out[0] = scanned
    out[1] = paths
    return total


class SearchLabels:
    """Per-vertex search state, one interleaved record per vertex.

    Columns are ``dist_s``, ``dist_t``, ``next_arc`` and the round stamp; a
    record is valid only when its stamp equals the current round.
    """

    def __init__(self, n):
        self.node = np.zeros((n, 4), dtype=np.int64)
        self.node[:, STAMP] = -1
        self.queue = np.zeros(max(n, 1), dtype=np.int64)
        self.back_queue = np.zeros(max(n, 1), dtype=np.int64)
        self.path = np.zeros(n + 1, dtype=np.int64)
        self.round = 0

    @property
    def n(self):
        return self.node.shape[0]

    def _column(self, col):
        vals = self.node[:, col].astype(float)
        vals[(self.node[:, STAMP] != self.round) | (self.node[:, col] == INF)] = np.inf
        return vals

    @property
    def dist_s(self):
        """Distances from the source this round; ``inf`` where unset."""
        return self._column(DS)

    @property
    def dist_t(self):
        """Distances to the sink this round; ``inf`` where unset."""
        return self._column(DT)

    @property
    def next_arc(self):
        return self.node[:, NEXT].copy()


def _check_pair(net, s, t):
    if not (0 <= s < net.n and 0 <= t < net.n):
        raise ValueError(f"terminal pair ({s}, {t}) outside [0, {net.n})")
    if s == t:
        raise ValueError("source and sink must differ")


class Dinitz:
    """Textbook Dinitz: BFS from the source, blocking-flow DFS, full reset.

    Parameters
    ----------
    reuse_state : bool
        Keep the label arrays between flows instead of reallocating them
        before every computation.
    """

    name = "dinitz"
    bidirectional = False
    stamps = False
    lazy_reset = False

    def __init__(self, reuse_state=True):
        self.reuse_state = reuse_state
        self.labels = None
        self._bfs_out = np.zeros(BFS_SLOTS, dtype=np.int64)
        self._dfs_out = np.zeros(2, dtype=np.int64)
        self._solved = None
        self._skip_layer = -1

    # -- state ------------------------------------------------------------

    def prepare(self, net):
        """Allocate (or reuse) the search state for ``net``."""
        if self.labels is None or not self.reuse_state or self.labels.n != net.n:
            self.labels = SearchLabels(net.n)
        return self.labels

    def reset(self, net):
        """Clear the flow left by the previous computation; returns arcs visited."""
        self._solved = None
        return net.reset_flows() if self.lazy_reset else net.reset_all()

    # -- one round --------------------------------------------------------

    def _start_round(self, net):
        lab = self.labels
        lab.round += 1
        if self.stamps:
            return 0
        return int(_init_labels(lab.node, net.first, lab.round))

    def _search(self, net, s, t):
        lab = self.labels
        out = self._bfs_out
        out[:] = 0
        reached = _bfs_unidirectional(net.first, net.head, net.cap, net.flow, lab.node, lab.queue, s, t, out)
        self._skip_layer = -1
        return bool(reached)

    def bfs_layered(self, net, s, t):
        """Label distances for one round; returns whether ``t`` was reached."""
        _check_pair(net, s, t)
        self.prepare(net)
        self._start_round(net)
        return self._search(net, s, t)

    def blocking_flow(self, net, s, t):
        """Saturate the layered network built by the last search; returns flow added."""
        lab = self.labels
        self._dfs_out[:] = 0
        return int(_blocking_flow(
            net.first, net.head, net.twin, net.cap, net.flow, lab.node, lab.path, s, t,
            lab.round, self.bidirectional, self._skip_layer,
            net.touched, net.n_touched, net.marked, net.counters, self._dfs_out,
        ))

    def _regions(self):
        return tuple(int(x) for x in self._bfs_out[:5])

    def _distance(self):
        return int(self._bfs_out[BFS_DISTANCE])

    # -- public API -------------------------------------------------------

    def max_flow(self, net, s, t):
        """Maximum ``s``-``t`` flow on ``net`` (which must carry zero flow)."""
        _check_pair(net, s, t)
        if not self.reuse_state:
            self.labels = None
        self.prepare(net)
        stats = SearchSpaceStats()
        timings = dict.fromkeys(("init", "bfs", "dfs"), 0.0)
        value = 0
        rounds = 0
        clock = time.perf_counter
        while True:
            rounds += 1
            t0 = clock()
            writes = self._start_round(net)
            t1 = clock()
            reached = self._search(net, s, t)
            t2 = clock()
            timings["init"] += t1 - t0
            timings["bfs"] += t2 - t1
            writes += int(self._bfs_out[BFS_LABEL_WRITES])
            seen = int(self._bfs_out[BFS_SEEN])
            bfs = int(self._bfs_out[BFS_FORWARD] + self._bfs_out[1])
            if not reached:
                stats.add_round(bfs, 0, 0, None, writes, seen, self._regions())
                break
            added = self.blocking_flow(net, s, t)
            timings["dfs"] += clock() - t2
            value += added
            stats.augmenting_paths += int(self._dfs_out[1])
            stats.add_round(bfs, self._dfs_out[0], added, self._distance(), writes, seen, self._regions())
        timings["flow"] = timings["init"] + timings["bfs"] + timings["dfs"]
        self._solved = (id(net), s, t)
        return FlowResult(value=value, rounds=rounds, stats=stats, timings=timings)

    def min_cut_source_side(self, net, s, t):
        """Source side of a minimum cut: vertices reachable from ``s`` after max_flow."""
        if self._solved != (id(net), s, t):
            raise ContractViolation("min_cut_source_side needs max_flow on the same network and pair first")
        side, scanned = reachable_from(net, s)
        return CutResult(value=cut_capacity(net, side), source_side=side, scanned=scanned)

    min_cut = min_cut_source_side

    def __repr__(self):
        return f"{type(self).__name__}(reuse_state={self.reuse_state})"
