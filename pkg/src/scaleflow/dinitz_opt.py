"""Dinitz variants tuned for scale-free networks.

A balanced bidirectional BFS replaces the BFS from the source.  Arcs are
admissible for the DFS when they raise the distance from the source or lower
the distance to the sink; every arc of a shortest augmenting path satisfies
both, so nothing relevant is lost.  Three further switches are layered on
top, each mirroring one step of the optimisation ladder:

* ``lazy_reset``: clear only the arcs that carried flow between computations
* ``stamps``: per-vertex round stamps instead of a linear initialisation
* ``skip_forward_layer``: the DFS never enters vertices of the unexplored
  forward layer that the backward search has not seen
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .dinitz import Dinitz
from .errors import ContractViolation
from .results import (
    BFS_BACKWARD,
    BFS_BACKWARD_LAYERS,
    BFS_BWD_BEGIN,
    BFS_BWD_END,
    BFS_DISTANCE,
    BFS_FORWARD,
    BFS_FORWARD_LAYERS,
    BFS_FWD_BEGIN,
    BFS_FWD_END,
    BFS_INTERSECTION,
    BFS_LABEL_WRITES,
    BFS_NEXT_BACKWARD,
    BFS_NEXT_FORWARD,
    BFS_SEEN,
    DS,
    DT,
    INF,
    NEXT,
    STAMP,
)


@njit(cache=True)
def _bfs_bidirectional(first, head, twin, cap, flow, node, fq, bq, s, t, rnd, incoming_trick, out):
    writes = 0
    seen = 0
    for x in (s, t):
        if node[x, STAMP] != rnd:
            node[x, STAMP] = rnd
            node[x, DS] = INF
            node[x, DT] = INF
            node[x, NEXT] = first[x]
            writes += 1
        seen += 1
    node[s, DS] = 0
    node[t, DT] = 0
    fq[0] = s
    bq[0] = t
    fb, fe, bb, be = 0, 1, 0, 1
    fcost = first[s + 1] - first[s]
    bcost = first[t + 1] - first[t]
    fl, bl = 0, 0
    fscan, bscan = 0, 0
    met = False
    while fb < fe and bb < be and not met:
        if fcost <= bcost:
            ne = fe
            cost = 0
            for i in range(fb, fe):
                u = fq[i]
                du = node[u, DS] + 1
                for a in range(first[u], first[u + 1]):
                    fscan += 1
                    if cap[a] - flow[a] > 0:
                        v = head[a]
                        if node[v, STAMP] != rnd:
                            node[v, STAMP] = rnd
                            node[v, DS] = INF
                            node[v, DT] = INF
                            node[v, NEXT] = first[v]
                            writes += 1
                        if node[v, DS] == INF:
                            node[v, DS] = du
                            if node[v, DT] != INF:
                                met = True
                            else:
                                seen += 1
                            fq[ne] = v
                            ne += 1
                            cost += first[v + 1] - first[v]
            fb, fe = fe, ne
            fcost = cost
            fl += 1
        else:
            ne = be
            cost = 0
            for i in range(bb, be):
                u = bq[i]
                du = node[u, DT] + 1
                for a in range(first[u], first[u + 1]):
                    bscan += 1
                    if incoming_trick:
                        r = cap[a] + flow[a]
                    else:
                        r = cap[twin[a]] - flow[twin[a]]
                    if r > 0:
                        v = head[a]
                        if node[v, STAMP] != rnd:
                            node[v, STAMP] = rnd
                            node[v, DS] = INF
                            node[v, DT] = INF
                            node[v, NEXT] = first[v]
                            writes += 1
                        if node[v, DT] == INF:
                            node[v, DT] = du
                            if node[v, DS] != INF:
                                met = True
                            else:
                                seen += 1
                            bq[ne] = v
                            ne += 1
                            cost += first[v + 1] - first[v]
            bb, be = be, ne
            bcost = cost
            bl += 1

    nf, nb, inter = 0, 0, 0
    for i in range(fb, fe):
        u = fq[i]
        d = first[u + 1] - first[u]
        if node[u, DT] == bl:
            inter += d
        else:
            nf += d
    for i in range(bb, be):
        u = bq[i]
        if node[u, DS] != fl:
            nb += first[u + 1] - first[u]
    out[BFS_FORWARD] = fscan
    out[BFS_BACKWARD] = bscan
    out[BFS_NEXT_FORWARD] = nf
    out[BFS_NEXT_BACKWARD] = nb
    out[BFS_INTERSECTION] = inter
    out[BFS_FORWARD_LAYERS] = fl
    out[BFS_BACKWARD_LAYERS] = bl
    out[BFS_DISTANCE] = fl + bl if met else INF
    out[BFS_LABEL_WRITES] = writes
    out[BFS_SEEN] = seen
    out[BFS_FWD_BEGIN] = fb
    out[BFS_FWD_END] = fe
    out[BFS_BWD_BEGIN] = bb
    out[BFS_BWD_END] = be
    return met


@dataclass
class BidirFrontier:
    """Where the last bidirectional search stopped."""

    forward: np.ndarray
    backward: np.ndarray
    forward_layers: int
    backward_layers: int
    forward_cost: int
    backward_cost: int


def layer_cost(net, frontier):
    """Arcs one layer expansion of ``frontier`` would scan (its volume)."""
    frontier = np.asarray(frontier, dtype=np.int64)
    return int((net.first[frontier + 1] - net.first[frontier]).sum())


class DinitzOpt(Dinitz):
    """Dinitz with bidirectional search plus optional ladder optimisations.

    Parameters
    ----------
    lazy_reset : bool
        Reset only touched arcs between flow computations.
    stamps : bool
        Initialise per-vertex records lazily via round stamps.
    skip_forward_layer : bool
        Keep the DFS out of unexplored forward-layer vertices that the
        backward search did not see.
    incoming_residual : bool
        On undirected networks, read the residual of incoming arcs from the
        outgoing arc alone.
    reuse_state : bool
        See :class:`~scaleflow.dinitz.Dinitz`.
    """

    name = "dinitz-opt"
    bidirectional = True

    def __init__(self, lazy_reset=True, stamps=True, skip_forward_layer=True,
                 incoming_residual=True, reuse_state=True):
        super().__init__(reuse_state=reuse_state)
        self.lazy_reset = lazy_reset
        self.stamps = stamps
        self.skip_forward_layer = skip_forward_layer
        self.incoming_residual = incoming_residual
        self.frontier = None

    def _search(self, net, s, t):
        lab = self.labels
        out = self._bfs_out
        out[:] = 0
        trick = self.incoming_residual and not net.directed
        met = bool(_bfs_bidirectional(
            net.first, net.head, net.twin, net.cap, net.flow, lab.node,
            lab.queue, lab.back_queue, s, t, lab.round, trick, out,
        ))
        fl = int(out[BFS_FORWARD_LAYERS])
        self._skip_layer = fl - 1 if (met and self.skip_forward_layer) else -1
        self.frontier = None
        return met

    def bidir_bfs(self, net, s, t):
        """Run one round's bidirectional search; returns whether the sides met."""
        return self.bfs_layered(net, s, t)

    def current_frontier(self, net):
        """:class:`BidirFrontier` of the last search."""
        lab, out = self.labels, self._bfs_out
        fwd = lab.queue[out[BFS_FWD_BEGIN]:out[BFS_FWD_END]].copy()
        bwd = lab.back_queue[out[BFS_BWD_BEGIN]:out[BFS_BWD_END]].copy()
        return BidirFrontier(fwd, bwd, int(out[BFS_FORWARD_LAYERS]), int(out[BFS_BACKWARD_LAYERS]),
                             layer_cost(net, fwd), layer_cost(net, bwd))

    def layered_arc_admissible(self, net, u, a):
        """Would the DFS of this round follow arc ``a`` out of ``u``?"""
        if net.tail(a) != u:
            raise ContractViolation(f"arc {a} does not leave vertex {u}")
        node, rnd = self.labels.node, self.labels.round
        if net.residual(a) <= 0 or node[u, STAMP] != rnd:
            return False
        v = int(net.head[a])
        if node[v, STAMP] != rnd:
            return False
        dsu, dtu, dsv, dtv = node[u, DS], node[u, DT], node[v, DS], node[v, DT]
        if dsu != INF and dsv == dsu + 1 and not (dsu == self._skip_layer and dtv == INF):
            return True
        return bool(dtu != INF and dtv != INF and dtv == dtu - 1)

    def __repr__(self):
        flags = ", ".join(f"{k}={getattr(self, k)}" for k in
                          ("lazy_reset", "stamps", "skip_forward_layer", "incoming_residual"))
        return f"DinitzOpt({flags})"


def dinitz_bi(**kw):
    s = DinitzOpt(lazy_reset=False, stamps=False, skip_forward_layer=False, incoming_residual=False, **kw)
    s.name = "dinitz-bi"
    return s


def dinitz_reset(**kw):
    s = DinitzOpt(lazy_reset=True, stamps=False, skip_forward_layer=False, incoming_residual=False, **kw)
    s.name = "dinitz-reset"
    return s


def dinitz_stamp(**kw):
    s = DinitzOpt(lazy_reset=True, stamps=True, skip_forward_layer=False, incoming_residual=False, **kw)
    s.name = "dinitz-stamp"
    return s
