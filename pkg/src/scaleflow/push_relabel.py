"""Highest-label push-relabel with gap relabeling.

Stage one computes a maximum preflow: its sink excess is the flow value.
Stage two (:meth:`PushRelabel.convert_to_flow`) returns stranded excess to the
source by decomposing the positive-flow subgraph: flow cycles are cancelled
during a DFS, then excess is sent back along incoming flow arcs in DFS finish
order.  Global relabeling is not implemented.

Three ways to obtain the source side of a minimum cut are offered:

``convert``  preflow, convert to a flow, BFS from the source
``tside``    preflow, backward BFS from the sink, take the complement
``swap``     preflow from sink to source, backward BFS from the source
             (undirected networks only)
"""

from __future__ import annotations

import time

import numpy as np
from numba import njit

from .errors import ContractViolation
from .network import cut_capacity, push_arc, reachable_from, reaching_to
from .results import CutResult, FlowResult

STRATEGIES = ("convert", "tside", "swap")

# slots of the statistics array
PUSHES, RELABELS, GAPS, SCANS, VALIDITY_ERRORS, ORDER_ERRORS = range(6)


@njit(cache=True)
def _level_insert(v, h, lhead, lnext, lprev):
    w = lhead[h]
    lnext[v] = w
    lprev[v] = -1
    if w >= 0:
        lprev[w] = v
    lhead[h] = v


@njit(cache=True)
def _level_remove(v, h, lhead, lnext, lprev):
    p, q = lprev[v], lnext[v]
    if p >= 0:
        lnext[p] = q
    else:
        lhead[h] = q
    if q >= 0:
        lprev[q] = p


@njit(cache=True)
def _valid_labels(first, head, cap, flow, label, n):
    bad = 0
    for u in range(n):
        for a in range(first[u], first[u + 1]):
            if cap[a] - flow[a] > 0 and label[u] > label[head[a]] + 1:
                bad += 1
    return bad


@njit(cache=True)
def _preflow(first, head, twin, cap, flow, s, t, label, excess, current,
             lhead, lnext, lprev, ahead, anext,
             touched, n_touched, marked, counters, stats, debug):
    n = label.shape[0]
    for v in range(n):
        label[v] = 0
        excess[v] = 0
        current[v] = first[v]
        lhead[v] = -1
        ahead[v] = -1
    label[s] = n
    for v in range(n):
        if v != s:
            _level_insert(v, 0, lhead, lnext, lprev)
    for a in range(first[s], first[s + 1]):
        r = cap[a] - flow[a]
        if r > 0:
            v = head[a]
            push_arc(a, r, twin, flow, touched, n_touched, marked, counters)
            excess[v] += r
            excess[s] -= r
            stats[PUSHES] += 1
    for v in range(n):
        if v != s and v != t and excess[v] > 0:
            anext[v] = ahead[0]
            ahead[0] = v
    highest = 0
    maxlevel = 0
    while highest >= 0:
        u = ahead[highest]
        if u < 0:
            highest -= 1
            continue
        ahead[highest] = anext[u]
        if debug:
            for h in range(highest + 1, n):
                if ahead[h] >= 0:
                    stats[ORDER_ERRORS] += 1
        # discharge u
        while True:
            h = label[u]
            a = current[u]
            end = first[u + 1]
            while a < end:
                stats[SCANS] += 1
                r = cap[a] - flow[a]
                if r > 0:
                    v = head[a]
                    if label[v] + 1 == h:
                        d = excess[u] if excess[u] < r else r
                        push_arc(a, d, twin, flow, touched, n_touched, marked, counters)
                        stats[PUSHES] += 1
                        excess[u] -= d
                        if excess[v] == 0 and v != t and v != s:
                            anext[v] = ahead[h - 1]
                            ahead[h - 1] = v
                            if h - 1 > highest:
                                highest = h - 1
                        excess[v] += d
                        if debug:
                            stats[VALIDITY_ERRORS] += _valid_labels(first, head, cap, flow, label, n)
                        if excess[u] == 0:
                            break
                a += 1
            current[u] = a
            if excess[u] == 0:
                break
            # relabel, with the gap heuristic
            _level_remove(u, h, lhead, lnext, lprev)
            if lhead[h] < 0:
                for g in range(h + 1, maxlevel + 1):
                    w = lhead[g]
                    while w >= 0:
                        label[w] = n
                        w = lnext[w]
                    lhead[g] = -1
                maxlevel = h - 1
                label[u] = n
                stats[GAPS] += 1
                break
            newh = 2 * n
            for b in range(first[u], first[u + 1]):
                stats[SCANS] += 1
                if cap[b] - flow[b] > 0 and label[head[b]] + 1 < newh:
                    newh = label[head[b]] + 1
            stats[RELABELS] += 1
            if newh >= n:
                label[u] = n
                break
            label[u] = newh
            current[u] = first[u]
            _level_insert(u, newh, lhead, lnext, lprev)
            if newh > maxlevel:
                maxlevel = newh
            if debug:
                stats[VALIDITY_ERRORS] += _valid_labels(first, head, cap, flow, label, n)
    return excess[t]


@njit(cache=True)
def _convert(first, head, twin, flow, s, t, excess, touched, n_touched, marked, counters):
    """Turn a preflow into a flow; returns the number of arcs scanned."""
    n = excess.shape[0]
    color = np.zeros(n, dtype=np.int8)  # 0 white, 1 on stack, 2 done
    parc = np.full(n, -1, dtype=np.int64)
    cur = first[:-1].copy()
    order = np.empty(n, dtype=np.int64)
    norder = 0
    scans = 0
    for r in range(n):
        if r == s or r == t or color[r] != 0:
            continue
        color[r] = 1
        u = r
        while True:
            if cur[u] < first[u + 1]:
                a = cur[u]
                scans += 1
                v = head[a]
                if flow[a] > 0 and v != s and v != t:
                    if color[v] == 0:
                        color[v] = 1
                        parc[v] = a
                        u = v
                        continue
                    if color[v] == 1:
                        # cycle v -> ... -> u -> v: cancel its bottleneck
                        d = flow[a]
                        w = u
                        while w != v:
                            b = parc[w]
                            if flow[b] < d:
                                d = flow[b]
                            w = head[twin[b]]
                        push_arc(twin[a], d, twin, flow, touched, n_touched, marked, counters)
                        w = u
                        while w != v:
                            b = parc[w]
                            push_arc(twin[b], d, twin, flow, touched, n_touched, marked, counters)
                            w = head[twin[b]]
                        # resume at the tail of the emptied arc closest to v
                        restart = u if flow[a] == 0 else -1
                        w = u
                        while w != v:
                            b = parc[w]
                            p = head[twin[b]]
                            if flow[b] == 0:
                                restart = p
                            w = p
                        if restart >= 0:
                            w = u
                            while w != restart:
                                color[w] = 0
                                w = head[twin[parc[w]]]
                            u = restart
                        continue
                cur[u] += 1
            else:
                color[u] = 2
                order[norder] = u
                norder += 1
                if u == r:
                    break
                u = head[twin[parc[u]]]
                cur[u] += 1
    # return excess in finish order: downstream vertices come first
    for i in range(norder):
        u = order[i]
        a = first[u]
        while excess[u] > 0 and a < first[u + 1]:
            scans += 1
            if flow[a] < 0:
                d = -flow[a]
                if excess[u] < d:
                    d = excess[u]
                push_arc(a, d, twin, flow, touched, n_touched, marked, counters)
                excess[u] -= d
                excess[head[a]] += d
            a += 1
    return scans


class PushRelabel:
    """Highest-label push-relabel solver.

    Parameters
    ----------
    cut_strategy : {"convert", "tside", "swap"}
        How :meth:`min_cut` finds the source side.
    reuse_state : bool
        Keep auxiliary arrays between flows; ``False`` reallocates them per
        flow like the reference implementation does.
    debug : bool
        Check label validity and highest-label order after every operation
        (quadratic; small instances only).
    """

    name = "push-relabel"
    lazy_reset = True
    heuristics = {"gap_relabeling": True, "global_relabeling": False}

    def __init__(self, cut_strategy="convert", reuse_state=True, debug=False):
        if cut_strategy not in STRATEGIES:
            raise ValueError(f"unknown cut strategy {cut_strategy!r}; pick one of {STRATEGIES}")
        self.cut_strategy = cut_strategy
        self.reuse_state = reuse_state
        self.debug = debug
        self._n = -1
        self._pair = None
        self.stats = np.zeros(6, dtype=np.int64)
        self.timings = {}

    def _prepare(self, n):
        if self._n != n or not self.reuse_state:
            self._n = n
            self.label = np.zeros(n, dtype=np.int64)
            self.excess = np.zeros(n, dtype=np.int64)
            self.current = np.zeros(n, dtype=np.int64)
            self._lists = tuple(np.zeros(n, dtype=np.int64) for _ in range(5))

    def preflow(self, net, s, t):
        """Maximum preflow from ``s`` to ``t``; returns the sink's excess."""
        if s == t:
            raise ValueError("source and sink must differ")
        t0 = time.perf_counter()
        self._prepare(net.n)
        t1 = time.perf_counter()
        self.stats[:] = 0
        value = _preflow(net.first, net.head, net.twin, net.cap, net.flow, s, t,
                         self.label, self.excess, self.current, *self._lists,
                         net.touched, net.n_touched, net.marked, net.counters,
                         self.stats, self.debug)
        self.timings = {"init": t1 - t0, "preflow": time.perf_counter() - t1}
        self._pair = (id(net), s, t)
        return int(value)

    def convert_to_flow(self, net, s, t):
        """Return stranded excess to ``s`` so the preflow becomes a flow."""
        if self._pair != (id(net), s, t):
            raise ContractViolation("convert_to_flow needs a preflow for the same pair")
        t0 = time.perf_counter()
        scans = _convert(net.first, net.head, net.twin, net.flow, s, t, self.excess,
                         net.touched, net.n_touched, net.marked, net.counters)
        self.timings["convert"] = time.perf_counter() - t0
        return int(scans)

    def max_flow(self, net, s, t):
        """Flow value via the preflow stage alone."""
        value = self.preflow(net, s, t)
        return FlowResult(value=value, rounds=0, timings={"flow": self.timings["preflow"], **self.timings})

    def reset(self, net):
        self._pair = None
        return net.reset_flows()

    def min_cut(self, net, s, t, strategy=None):
        """Minimum cut with ``source_side`` containing ``s``; network must carry zero flow."""
        strategy = strategy or self.cut_strategy
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown cut strategy {strategy!r}")
        if strategy == "swap" and net.directed:
            raise ValueError("the swap strategy needs an undirected network")
        if strategy == "swap":
            value = self.preflow(net, t, s)
            timings = dict(self.timings)
            t0 = time.perf_counter()
            side, scanned = reaching_to(net, s)
        else:
            value = self.preflow(net, s, t)
            timings = dict(self.timings)
            if strategy == "convert":
                self.convert_to_flow(net, s, t)
                timings["convert"] = self.timings["convert"]
            t0 = time.perf_counter()
            if strategy == "convert":
                side, scanned = reachable_from(net, s)
            else:
                sink_side, scanned = reaching_to(net, t)
                mask = np.ones(net.n, dtype=bool)
                mask[sink_side] = False
                side = np.flatnonzero(mask)
        timings["cut"] = time.perf_counter() - t0
        self.timings = timings
        cut = CutResult(value=cut_capacity(net, side), source_side=side, scanned=scanned)
        if cut.value != value:
            raise ContractViolation(f"{strategy} cut capacity {cut.value} differs from flow value {value}")
        return cut

    def __repr__(self):
        return f"PushRelabel(cut_strategy={self.cut_strategy!r}, reuse_state={self.reuse_state})"
