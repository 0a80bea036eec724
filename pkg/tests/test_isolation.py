from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rcst.errors import NoneReachable, NotMinUnique, OverflowBound, Unreachable
from rcst.graph import Graph
from rcst.isolation import (
    PerturbationConfig,
    ScaledWeights,
    add_path,
    check_strong_min_unique,
    closest,
    find_path,
    isolation_failure_bound,
    perturb,
    preflight,
)
from rcst.oracle import count_shortest_paths_bruteforce, min_unique_witness_bruteforce

from .conftest import complete_graph, connected_graphs, cycle_graph, path_graph

# Strongly min-unique by path enumeration; used for core and star examples elsewhere.
CORE_GRAPH = Graph(5, ((0, 1), (1, 2), (1, 3), (0, 3), (2, 3), (2, 4)), (2, 3, 1, 7, 8, 2))


def _nx(g: Graph, weights) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    for (u, v), w in zip(g.edges, weights):
        h.add_edge(u, v, weight=w)
    return h


class TestPerturb:
    def test_deterministic(self):
        g = complete_graph(5)
        cfg = PerturbationConfig(seed=42)
        assert perturb(g, cfg) == perturb(g, cfg)

    def test_range_and_shape(self):
        g = complete_graph(6, weight=3)
        sw = perturb(g, PerturbationConfig(seed=1))
        assert sw.denom == 6**10
        assert all(1 <= r <= 6**6 for r in sw.rho)
        assert all(big == 3 * sw.denom + r for big, r in zip(sw.scaled, sw.rho))

    def test_seed_changes_draw(self):
        g = complete_graph(6)
        assert perturb(g, PerturbationConfig(seed=1)).rho != perturb(g, PerturbationConfig(seed=2)).rho

    def test_exponent_constraint(self):
        with pytest.raises(ValueError):
            PerturbationConfig(denom_exp=8, numer_exp=5)

    def test_preflight_refuses_large_exponent(self):
        g = complete_graph(32, weight=10**6)
        with pytest.raises(OverflowBound):
            preflight(g, PerturbationConfig(denom_exp=24, numer_exp=6))

    @given(connected_graphs(min_n=2, max_n=6, max_w=5))
    def test_order_preserved(self, g):
        # the perturbation never reverses a strict order between path weights
        sw = perturb(g, PerturbationConfig(seed=3))
        for a in range(g.m):
            for b in range(g.m):
                if g.weights[a] < g.weights[b]:
                    assert sw.scaled[a] < sw.scaled[b]


def test_isolation_bound_k6():
    assert isolation_failure_bound(6) == Fraction(1, 12)


class TestUniqueness:
    def test_core_graph_unique(self):
        sw = ScaledWeights.from_positive(CORE_GRAPH, CORE_GRAPH.weights)
        assert check_strong_min_unique(sw).is_strongly_min_unique
        assert min_unique_witness_bruteforce(CORE_GRAPH, CORE_GRAPH.weights) is None

    def test_unit_four_cycle_witness(self):
        g = cycle_graph([1, 1, 1, 1])
        sw = ScaledWeights.from_positive(g, g.weights)
        report = check_strong_min_unique(sw)
        assert report.witness == (0, 2, 2)
        assert min_unique_witness_bruteforce(g, g.weights) == (0, 2, 2)

    def test_hop_bound_matters(self):
        # 0-2 directly weighs 3, 0-1-2 weighs 3 too: a tie only once k >= 2
        g = Graph(3, ((0, 1), (1, 2), (0, 2)), (1, 2, 3))
        report = check_strong_min_unique(ScaledWeights.from_positive(g, g.weights))
        assert report.witness == (0, 2, 2)
        assert count_shortest_paths_bruteforce(g, None, 0, 2, 1) == 1
        assert count_shortest_paths_bruteforce(g, None, 0, 2, 2) == 2

    def test_tree_always_unique(self):
        g = path_graph([1, 1, 1, 1])
        assert ScaledWeights.from_positive(g, g.weights).is_unique

    @settings(max_examples=150, deadline=None)
    @given(connected_graphs(min_n=1, max_n=6, min_w=1, max_w=4))
    def test_matches_bruteforce(self, g):
        sw = ScaledWeights.from_positive(g, g.weights)
        assert check_strong_min_unique(sw).witness == min_unique_witness_bruteforce(g, g.weights)

    @settings(max_examples=20, deadline=None)
    @given(connected_graphs(min_n=2, max_n=6, min_w=1, max_w=3))
    def test_workers_agree(self, g):
        sw = ScaledWeights.from_positive(g, g.weights)
        assert check_strong_min_unique(sw, workers=2) == check_strong_min_unique(sw, workers=1)

    @settings(max_examples=40, deadline=None)
    @given(connected_graphs(min_n=1, max_n=6, min_w=1, max_w=4), st.integers(2, 50))
    def test_invariant_under_scaling(self, g, c):
        base = check_strong_min_unique(ScaledWeights.from_positive(g, g.weights))
        scaled = check_strong_min_unique(ScaledWeights.from_positive(g, [c * w for w in g.weights]))
        assert base == scaled


class TestFindPath:
    def test_core_graph_path(self):
        sw = ScaledWeights.from_positive(CORE_GRAPH, CORE_GRAPH.weights)
        path, cost = find_path(sw, 0, 4)
        assert path == (0, 1, 2, 4) and cost.value == 7

    def test_not_unique(self):
        g = cycle_graph([1, 1, 1, 1])
        with pytest.raises(NotMinUnique) as exc:
            find_path(ScaledWeights.from_positive(g, g.weights), 0, 2)
        assert exc.value.report.witness == (0, 2, 2)

    def test_unreachable(self):
        g = Graph(3, ((0, 1),), (1,))
        with pytest.raises(Unreachable):
            find_path(ScaledWeights.from_positive(g, (1,)), 0, 2)

    @settings(max_examples=40, deadline=None)
    @given(connected_graphs(min_n=2, max_n=8), st.integers(0, 2**32))
    def test_against_networkx(self, g, seed):
        sw = perturb(g, PerturbationConfig(seed=seed))
        if not sw.is_unique:
            return
        h = _nx(g, sw.scaled)
        for s in range(g.n):
            lengths = nx.single_source_dijkstra_path_length(h, s)
            for t in range(g.n):
                path, cost = find_path(sw, s, t)
                assert cost.value == lengths[t]
                assert path[0] == s and path[-1] == t
                assert sum(sw.scaled[g.edge_id(a, b)] for a, b in zip(path, path[1:])) == cost.value
                assert len(list(nx.all_shortest_paths(h, s, t, weight="weight"))) == 1


class TestClosest:
    def test_core_closest_is_interior(self):
        # the core path 0-1-2 has interior vertex 1 adjacent to 3
        sw = ScaledWeights.from_positive(CORE_GRAPH, CORE_GRAPH.weights)
        assert closest(sw, 3, [0, 1, 2]) == 1
        assert add_path(sw, [0, 1, 2], 3) == (3, 1)

    def test_self_in_targets(self):
        sw = ScaledWeights.from_positive(CORE_GRAPH, CORE_GRAPH.weights)
        assert closest(sw, 2, [0, 2]) == 2
        assert add_path(sw, [0, 2], 2) == (2,)

    def test_none_reachable(self):
        g = Graph(3, ((0, 1),), (1,))
        with pytest.raises(NoneReachable):
            closest(ScaledWeights.from_positive(g, (1,)), 2, [0, 1])

    def test_tie_smallest_id(self):
        g = path_graph([1, 1])
        assert closest(ScaledWeights.from_positive(g, (1, 1)), 1, [2, 0]) == 0


def test_small_k6_rate_reasonable():
    g = complete_graph(6)
    fails = sum(not perturb(g, PerturbationConfig(seed=s)).is_unique for s in range(200))
    assert fails / 200 <= float(isolation_failure_bound(6)) + 3 * (0.0833 * 0.9167 / 200) ** 0.5
