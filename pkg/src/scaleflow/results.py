"""Result records shared by the solvers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# columns of the per-vertex search record (one interleaved row per vertex)
DS, DT, NEXT, STAMP = 0, 1, 2, 3
INF = np.int64(1) << 60

# slots of the int64 array the BFS kernels fill in
BFS_FORWARD, BFS_BACKWARD, BFS_NEXT_FORWARD, BFS_NEXT_BACKWARD, BFS_INTERSECTION = 0, 1, 2, 3, 4
BFS_FORWARD_LAYERS, BFS_BACKWARD_LAYERS, BFS_DISTANCE, BFS_LABEL_WRITES, BFS_SEEN = 5, 6, 7, 8, 9
BFS_FWD_BEGIN, BFS_FWD_END, BFS_BWD_BEGIN, BFS_BWD_END = 10, 11, 12, 13
BFS_SLOTS = 14

REGIONS = ("forward", "backward", "next_forward", "next_backward", "intersection")


@dataclass
class SearchSpaceStats:
    """Deterministic arc-scan counters of one flow computation.

    Per-round sequences include the final round whose BFS fails to reach
    the sink (that round has no DFS, so its ``dfs_edges`` entry is 0).
    """

    bfs_edges: list[int] = field(default_factory=list)
    dfs_edges: list[int] = field(default_factory=list)
    flow_per_round: list[int] = field(default_factory=list)
    distances: list[int] = field(default_factory=list)
    label_writes: list[int] = field(default_factory=list)
    seen_vertices: list[int] = field(default_factory=list)
    regions: dict[str, int] = field(default_factory=lambda: dict.fromkeys(REGIONS, 0))
    augmenting_paths: int = 0

    @property
    def bfs_total(self):
        return sum(self.bfs_edges)

    @property
    def dfs_total(self):
        return sum(self.dfs_edges)

    @property
    def total(self):
        return self.bfs_total + self.dfs_total

    def add_round(self, bfs, dfs, flow, distance, writes, seen, regions=None):
        self.bfs_edges.append(int(bfs))
        self.dfs_edges.append(int(dfs))
        self.flow_per_round.append(int(flow))
        if distance is not None:
            self.distances.append(int(distance))
        self.label_writes.append(int(writes))
        self.seen_vertices.append(int(seen))
        if regions is not None:
            for k, v in zip(REGIONS, regions):
                self.regions[k] += int(v)


@dataclass
class FlowResult:
    value: int
    rounds: int
    stats: SearchSpaceStats = field(default_factory=SearchSpaceStats)
    timings: dict[str, float] = field(default_factory=dict)


@dataclass
class CutResult:
    """A minimum cut; ``source_side`` holds the source and never the sink."""

    value: int
    source_side: np.ndarray  # sorted vertex ids
    scanned: int = 0

    def __contains__(self, v):
        i = np.searchsorted(self.source_side, v)
        return bool(i < len(self.source_side) and self.source_side[i] == v)

    def mask(self, n):
        m = np.zeros(n, dtype=bool)
        m[self.source_side] = True
        return m
