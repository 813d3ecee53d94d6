import numpy as np
import pytest
from conftest import DIAMOND, PATH4, STAR5, S, T, build
from oracles import bfs_distances, brute_min_cut, random_graph

from scaleflow import Dinitz, DinitzOpt, FlowNetwork, check_flow, dinitz_bi, dinitz_reset, dinitz_stamp
from scaleflow.dinitz_opt import layer_cost
from scaleflow.results import BFS_FORWARD_LAYERS, BFS_SEEN

LADDER = (dinitz_bi, dinitz_reset, dinitz_stamp, DinitzOpt)

# s=0 reaches a=1 and a dead end x=2 (with leaves 6, 7); a-b-t is the only route
SKIP_EDGES = [(0, 1, 1), (0, 2, 1), (1, 3, 1), (3, 4, 1), (4, 5, 1), (2, 6, 1), (2, 7, 1)]
SKIP_X = 2


def test_path4_meets_in_the_middle(path4):
    opt, base = DinitzOpt(), Dinitz()
    assert opt.bidir_bfs(path4, 0, 3)
    assert base.bfs_layered(path4, 0, 3)
    meet = [v for v in range(4) if np.isfinite(opt.labels.dist_s[v]) and np.isfinite(opt.labels.dist_t[v])]
    assert meet and set(meet) <= {1, 2}
    # both searches label all four vertices; the saving shows in arc scans
    assert opt._bfs_out[BFS_SEEN] == base._bfs_out[BFS_SEEN] == 4
    assert opt._bfs_out[0] + opt._bfs_out[1] == 4 < base._bfs_out[0] == 5


def test_adjacent_terminals_meet_after_one_forward_layer():
    net = FlowNetwork.build(2, [(0, 1, 3)], directed=True)
    opt = DinitzOpt()
    assert opt.bidir_bfs(net, 0, 1)
    f = opt.current_frontier(net)
    assert (f.forward_layers, f.backward_layers) == (1, 0)


def test_star_leaf_pair_recovers_distance_two(star5):
    opt = DinitzOpt()
    assert opt.bidir_bfs(star5, 1, 2)
    ds, dt = opt.labels.dist_s, opt.labels.dist_t
    meet = [v for v in range(5) if np.isfinite(ds[v]) and np.isfinite(dt[v])]
    assert min(ds[v] + dt[v] for v in meet) == 2
    assert bfs_distances(5, [(u, v) for u, v, _ in STAR5[1]] + [(v, u) for u, v, _ in STAR5[1]], 1)[2] == 2


def test_layer_cost(star5, diamond):
    assert layer_cost(star5, [0]) == 4
    net = FlowNetwork.build(8, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (1, 4, 1), (1, 5, 1), (1, 6, 1)], directed=False)
    assert layer_cost(net, [0]) == 2
    assert layer_cost(net, [0, 1]) == 2 + 5


def test_diamond_tie_goes_forward(diamond):
    opt = DinitzOpt()
    assert layer_cost(diamond, [S]) == layer_cost(diamond, [T]) == 2
    opt.bidir_bfs(diamond, S, T)
    f = opt.current_frontier(diamond)
    assert f.forward_layers >= 1
    assert opt.labels.dist_s[1] == 1 and opt.labels.dist_s[2] == 1
    again = DinitzOpt()
    again.bidir_bfs(build(DIAMOND), S, T)
    assert (again._bfs_out == opt._bfs_out).all()


def test_admissibility_by_either_label(diamond):
    opt = DinitzOpt(skip_forward_layer=False)
    opt.bidir_bfs(diamond, S, T)
    ds, dt = opt.labels.dist_s, opt.labels.dist_t
    for u in range(4):
        for a in range(*diamond.arc_range(u)):
            v = int(diamond.head[a])
            expected = diamond.residual(a) > 0 and (ds[u] + 1 == ds[v] or dt[u] - 1 == dt[v])
            assert opt.layered_arc_admissible(diamond, u, a) == bool(expected)


def test_skip_rule_keeps_dfs_out_of_unseen_forward_layer():
    for skip in (True, False):
        net = FlowNetwork.build(8, SKIP_EDGES, directed=False)
        opt = DinitzOpt(skip_forward_layer=skip)
        assert opt.bidir_bfs(net, 0, 4)
        lab = opt.labels
        assert lab.dist_s[SKIP_X] == 1 and np.isinf(lab.dist_t[SKIP_X])
        assert opt._bfs_out[BFS_FORWARD_LAYERS] == 1
        a = next(a for a in range(*net.arc_range(0)) if net.head[a] == SKIP_X)
        assert opt.layered_arc_admissible(net, 0, a) == (not skip)
        assert opt.blocking_flow(net, 0, 4) == 1
        entered = lab.next_arc[SKIP_X] != net.first[SKIP_X]
        assert entered == (not skip)


def test_skip_rule_never_changes_value():
    rng = np.random.default_rng(21)
    for _ in range(300):
        n, edges, directed, s, t = random_graph(rng)
        values = {skip: DinitzOpt(skip_forward_layer=skip).max_flow(FlowNetwork.build(n, edges, directed), s, t).value
                  for skip in (True, False)}
        assert values[True] == values[False]


def test_single_edge_and_diamond_values(single, diamond):
    assert DinitzOpt().max_flow(single, 0, 1).value == 5
    opt = DinitzOpt()
    assert opt.max_flow(diamond, S, T).value == 5
    cut = opt.min_cut(diamond, S, T)
    assert cut.source_side.tolist() == [S] and cut.value == 5


def test_path4_value(path4):
    assert DinitzOpt().max_flow(path4, 0, 3).value == 1


@pytest.mark.parametrize("factory", LADDER)
def test_ladder_matches_oracle(factory):
    rng = np.random.default_rng(3)
    solver = factory()
    for _ in range(300):
        n, edges, directed, s, t = random_graph(rng)
        net = FlowNetwork.build(n, edges, directed=directed)
        res = solver.max_flow(net, s, t)
        assert res.value == brute_min_cut(n, edges, directed, s, t)
        assert check_flow(net, s, t) == []
        d = res.stats.distances
        assert all(x < y for x, y in zip(d, d[1:]))
        assert solver.min_cut(net, s, t).value == res.value


def test_reset_and_stamp_variants_match_bi_counters():
    rng = np.random.default_rng(4)
    for _ in range(300):
        n, edges, directed, s, t = random_graph(rng)
        stats = []
        for factory in (dinitz_bi, dinitz_reset, dinitz_stamp):
            res = factory().max_flow(FlowNetwork.build(n, edges, directed=directed), s, t)
            stats.append((res.value, res.rounds, res.stats.bfs_edges, res.stats.dfs_edges, res.stats.regions))
        assert stats[0] == stats[1] == stats[2]


def test_per_round_flow_matches_baseline_on_diamond():
    base = Dinitz().max_flow(build(DIAMOND), S, T)
    opt = DinitzOpt().max_flow(build(DIAMOND), S, T)
    assert base.stats.flow_per_round == opt.stats.flow_per_round == [4, 1, 0]


def test_lazy_init_writes_only_explored_vertices():
    rng = np.random.default_rng(5)
    n = 2000
    # a long cycle with chords: searches between near neighbours stay local
    edges = [(i, (i + 1) % n, 1) for i in range(n)] + [(i, (i + 2) % n, 1) for i in range(0, n, 2)]
    net = FlowNetwork.build(n, edges, directed=False)
    for factory, lazy in ((dinitz_stamp, True), (DinitzOpt, True), (dinitz_bi, False)):
        s = int(rng.integers(n))
        res = factory().max_flow(net, s, (s + 3) % n)
        for writes, seen in zip(res.stats.label_writes, res.stats.seen_vertices):
            if lazy:
                assert writes <= seen
                assert writes < n // 10
            else:
                assert writes >= n
        net.reset_flows()


def test_relaxed_layered_network_contains_all_shortest_paths():
    rng = np.random.default_rng(6)
    for _ in range(500):
        n, edges, directed, s, t = random_graph(rng)
        net = FlowNetwork.build(n, edges, directed=directed)
        tails = net.tails()
        live = [(int(tails[a]), int(net.head[a])) for a in range(net.m) if net.residual(a) > 0]
        ds = bfs_distances(n, live, s)
        dt = bfs_distances(n, [(v, u) for u, v in live], t)
        for factory in LADDER:
            opt = factory()
            if not opt.bidir_bfs(net, s, t):
                assert t not in ds
                continue
            dist = ds[t]
            for a in range(net.m):
                u, v = int(tails[a]), int(net.head[a])
                if net.residual(a) > 0 and u in ds and v in dt and ds[u] + 1 + dt[v] == dist:
                    assert opt.layered_arc_admissible(net, u, a)


def test_bidirectional_search_space_dominance():
    rng = np.random.default_rng(9)
    for _ in range(500):
        n, edges, directed, s, t = random_graph(rng)
        net = FlowNetwork.build(n, edges, directed=directed)
        base, opt = Dinitz(), DinitzOpt()
        base.bfs_layered(net, s, t)
        if not opt.bidir_bfs(net, s, t):
            continue
        deg = np.diff(net.first)
        ds, dt = opt.labels.dist_s, opt.labels.dist_t
        f = opt.current_frontier(net)
        slack = max(int(deg[ds == f.forward_layers - 1].sum()), int(deg[dt == f.backward_layers - 1].sum()))
        assert opt._bfs_out[0] + opt._bfs_out[1] <= base._bfs_out[0] + slack


def test_incoming_residual_trick_changes_nothing():
    rng = np.random.default_rng(10)
    for _ in range(300):
        n, edges, _, s, t = random_graph(rng, directed=False)
        a = DinitzOpt(incoming_residual=True).max_flow(FlowNetwork.build(n, edges, False), s, t)
        b = DinitzOpt(incoming_residual=False).max_flow(FlowNetwork.build(n, edges, False), s, t)
        assert (a.value, a.stats) == (b.value, b.stats)


def test_regions_are_recorded(diamond):
    res = DinitzOpt().max_flow(diamond, S, T)
    assert res.stats.regions["forward"] + res.stats.regions["backward"] == res.stats.bfs_total
    assert set(res.stats.regions) == {"forward", "backward", "next_forward", "next_backward", "intersection"}


def test_frontier_snapshot(path4):
    opt = DinitzOpt()
    opt.bidir_bfs(path4, 0, 3)
    f = opt.current_frontier(path4)
    assert f.forward_cost == layer_cost(path4, f.forward)
    assert f.backward_cost == layer_cost(path4, f.backward)
    assert f.forward_layers + f.backward_layers == 3


def test_ladder_names():
    assert [f().name for f in LADDER] == ["dinitz-bi", "dinitz-reset", "dinitz-stamp", "dinitz-opt"]
    assert [f().lazy_reset for f in LADDER] == [False, True, True, True]
    assert [f().stamps for f in LADDER] == [False, False, True, True]
