"""Arc-paired adjacency structure used by every solver in the package.

Arcs live in one contiguous array grouped by tail vertex; vertex ``v`` owns
``arcs[first[v]:first[v + 1]]``.  Every input edge yields an arc and its
reverse twin.  A directed edge gives the twin capacity 0, an undirected edge
gives the twin the same capacity, so one code path serves both cases.

Flows are stored per arc with ``flow[a] == -flow[twin[a]]``; the residual
network is never materialised.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .errors import ContractViolation, FlowInputError

# indices into FlowNetwork.counters
AUGMENTED_ARCS = 0
RESET_ARCS = 1


@njit(cache=True, inline="always")
def push_arc(a, delta, twin, flow, touched, n_touched, marked, counters):
    """Move ``delta`` units along arc ``a`` and record the pair as touched."""
    b = twin[a]
    flow[a] += delta
    flow[b] -= delta
    counters[AUGMENTED_ARCS] += 2
    if marked[a] == 0:
        marked[a] = 1
        marked[b] = 1
        touched[n_touched[0]] = a
        n_touched[0] += 1


@njit(cache=True)
def _reset_touched(twin, flow, touched, n_touched, marked, counters):
    k = n_touched[0]
    for i in range(k):
        a = touched[i]
        b = twin[a]
        flow[a] = 0
        flow[b] = 0
        marked[a] = 0
        marked[b] = 0
    n_touched[0] = 0
    counters[RESET_ARCS] += 2 * k
    return 2 * k


@njit(cache=True)
def _augment_path(path, k, twin, cap, flow, touched, n_touched, marked, counters):
    # bottleneck of path[:k], then push it; returns the pushed amount
    b = np.int64(1) << 62
    for i in range(k):
        a = path[i]
        r = cap[a] - flow[a]
        if r < b:
            b = r
    for i in range(k):
        push_arc(path[i], b, twin, flow, touched, n_touched, marked, counters)
    return b


class FlowNetwork:
    """Flow network with paired twin arcs and touched-arc tracking.

    Use :meth:`build` to construct one from an edge list.
    """

    def __init__(self, n, first, head, twin, cap, directed, edge_arc=None):
        self.n = int(n)
        self.first = first
        self.head = head
        self.twin = twin
        self.cap = cap
        self.directed = bool(directed)
        self.flow = np.zeros(len(head), dtype=np.int64)
        # each touched entry covers an arc pair, so m/2 slots suffice
        self.touched = np.zeros(len(head) // 2 + 1, dtype=np.int64)
        self.n_touched = np.zeros(1, dtype=np.int64)
        self.marked = np.zeros(len(head), dtype=np.uint8)
        self.counters = np.zeros(2, dtype=np.int64)
        self.edge_arc = edge_arc

    @classmethod
    def build(cls, n, edges, directed=True):
        """Build a network from ``(tail, head, capacity)`` triples.

        Self-loops are dropped; parallel edges stay separate arc pairs.
        ``edges`` may be any sequence of triples or an ``(k, 3)`` array.
        """
        n = int(n)
        if n < 0:
            raise FlowInputError(f"vertex count must be non-negative, got {n}")
        arr = np.asarray(edges, dtype=np.int64)
        if arr.size == 0:
            arr = np.zeros((0, 3), dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise FlowInputError("edges must be (tail, head, capacity) triples")
        u, v, c = arr[:, 0], arr[:, 1], arr[:, 2]
        bad = (u < 0) | (u >= n) | (v < 0) | (v >= n)
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise FlowInputError(f"edge {i} ({u[i]}, {v[i]}) has an endpoint outside [0, {n})")
        if (c < 0).any():
            i = int(np.flatnonzero(c < 0)[0])
            raise FlowInputError(f"edge {i} has negative capacity {c[i]}")

        keep = u != v
        edge_ids = np.flatnonzero(keep)
        u, v, c = u[keep], v[keep], c[keep]
        k = len(u)
        m = 2 * k

        # arc 2i is the input edge, arc 2i+1 its twin, before grouping by tail
        tails = np.empty(m, dtype=np.int64)
        tails[0::2] = u
        tails[1::2] = v
        heads = np.empty(m, dtype=np.int64)
        heads[0::2] = v
        heads[1::2] = u
        caps = np.empty(m, dtype=np.int64)
        caps[0::2] = c
        caps[1::2] = 0 if directed else c

        order = np.argsort(tails, kind="stable")
        pos = np.empty(m, dtype=np.int64)
        pos[order] = np.arange(m, dtype=np.int64)

        head = heads[order]
        cap = caps[order]
        twin = np.empty(m, dtype=np.int64)
        twin[pos[0::2]] = pos[1::2]
        twin[pos[1::2]] = pos[0::2]
        first = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(tails, minlength=n), out=first[1:])

        edge_arc = np.full(len(arr), -1, dtype=np.int64)
        edge_arc[edge_ids] = pos[0::2]
        return cls(n, first, head, twin, cap, directed, edge_arc)

    # -- inspection -----------------------------------------------------

    @property
    def m(self):
        """Number of stored arcs (twice the number of kept input edges)."""
        return len(self.head)

    def arc_range(self, v):
        return int(self.first[v]), int(self.first[v + 1])

    def tail(self, a):
        return int(self.head[self.twin[a]])

    def degrees(self):
        """Arc-range size per vertex (the degree for undirected networks)."""
        return np.diff(self.first)

    def weighted_degrees(self):
        """Sum of arc capacities leaving each vertex."""
        return np.bincount(self.tails(), weights=self.cap, minlength=self.n).astype(np.int64)

    def tails(self):
        return np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.first))

    def residual(self, a):
        return int(self.cap[a] - self.flow[a])

    def residual_of_incoming(self, a):
        """Residual capacity of ``twin(a)`` read only from arc ``a``.

        Valid for undirected networks, where both arcs share a capacity.
        """
        if self.directed:
            raise ContractViolation("residual_of_incoming requires an undirected network")
        return int(self.cap[a] + self.flow[a])

    def flow_value(self, s):
        lo, hi = self.arc_range(s)
        return int(self.flow[lo:hi].sum())

    def edges(self):
        """Kept input edges, in input order, as a ``(k, 3)`` array."""
        arcs = self.edge_arc[self.edge_arc >= 0]
        tails = self.head[self.twin[arcs]]
        return np.column_stack([tails, self.head[arcs], self.cap[arcs]])

    @property
    def touched_arcs(self):
        """Arc indices (both members of each pair) with flow history."""
        t = self.touched[: self.n_touched[0]]
        return np.concatenate([t, self.twin[t]])

    # -- mutation -------------------------------------------------------

    def augment(self, a, delta):
        """Push ``delta`` units of flow along arc ``a``."""
        if delta <= 0 or delta > self.residual(a):
            raise ContractViolation(f"cannot push {delta} on arc {a} with residual {self.residual(a)}")
        push_arc(a, np.int64(delta), self.twin, self.flow, self.touched, self.n_touched, self.marked, self.counters)

    def reset_flows(self):
        """Zero the flow on touched arcs only; returns the number of arcs reset."""
        return int(_reset_touched(self.twin, self.flow, self.touched, self.n_touched, self.marked, self.counters))

    def reset_all(self):
        """Zero every arc's flow, touching all ``m`` arcs."""
        self.flow[:] = 0
        self.marked[:] = 0
        self.n_touched[0] = 0
        self.counters[RESET_ARCS] += self.m
        return self.m

    @property
    def augmented_arcs(self):
        return int(self.counters[AUGMENTED_ARCS])

    @property
    def reset_arcs(self):
        return int(self.counters[RESET_ARCS])

    def copy(self):
        other = FlowNetwork(self.n, self.first, self.head, self.twin, self.cap, self.directed, self.edge_arc)
        other.flow[:] = self.flow
        other.touched[:] = self.touched
        other.n_touched[:] = self.n_touched
        other.marked[:] = self.marked
        return other

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"FlowNetwork(n={self.n}, m={self.m}, {kind})"


def check_flow(net, s, t, preflow=False):
    """Return a list of violated flow constraints (empty when valid).

    Test helper; scans every arc.
    """
    problems = []
    f, c = net.flow, net.cap
    if (f > c).any():
        problems.append("capacity")
    if (f != -f[net.twin]).any():
        problems.append("asymmetry")
    net_out = np.bincount(net.tails(), weights=f, minlength=net.n)
    interior = np.ones(net.n, dtype=bool)
    interior[[s, t]] = False
    if preflow:
        if (net_out[interior] > 0).any():
            problems.append("excess")
    elif (net_out[interior] != 0).any():
        problems.append("conservation")
    return problems


def cut_capacity(net, source_side):
    """Total capacity of arcs leaving ``source_side`` (a boolean mask or vertex set)."""
    mask = _as_mask(net.n, source_side)
    crossing = mask[net.tails()] & ~mask[net.head]
    return int(net.cap[crossing].sum())


def _as_mask(n, side):
    if isinstance(side, np.ndarray) and side.dtype == bool:
        return side
    mask = np.zeros(n, dtype=bool)
    mask[list(side)] = True
    return mask


@njit(cache=True)
def _reach_forward(first, head, cap, flow, s, seen, queue):
    seen[s] = 1
    queue[0] = s
    qb, qe, scanned = 0, 1, 0
    while qb < qe:
        u = queue[qb]
        qb += 1
        for a in range(first[u], first[u + 1]):
            scanned += 1
            v = head[a]
            if seen[v] == 0 and cap[a] - flow[a] > 0:
                seen[v] = 1
                queue[qe] = v
                qe += 1
    return qe, scanned


@njit(cache=True)
def _reach_backward(first, head, twin, cap, flow, t, seen, queue):
    # vertices that can reach t: scan arcs u->v, follow twin v->u if residual
    seen[t] = 1
    queue[0] = t
    qb, qe, scanned = 0, 1, 0
    while qb < qe:
        u = queue[qb]
        qb += 1
        for a in range(first[u], first[u + 1]):
            scanned += 1
            v = head[a]
            b = twin[a]
            if seen[v] == 0 and cap[b] - flow[b] > 0:
                seen[v] = 1
                queue[qe] = v
                qe += 1
    return qe, scanned


def reachable_from(net, s):
    """Vertices reachable from ``s`` in the residual network, and arcs scanned."""
    seen = np.zeros(net.n, dtype=np.uint8)
    queue = np.empty(max(net.n, 1), dtype=np.int64)
    k, scanned = _reach_forward(net.first, net.head, net.cap, net.flow, s, seen, queue)
    return np.sort(queue[:k]), int(scanned)


def reaching_to(net, t):
    """Vertices that reach ``t`` in the residual network, and arcs scanned."""
    seen = np.zeros(net.n, dtype=np.uint8)
    queue = np.empty(max(net.n, 1), dtype=np.int64)
    k, scanned = _reach_backward(net.first, net.head, net.twin, net.cap, net.flow, t, seen, queue)
    return np.sort(queue[:k]), int(scanned)
