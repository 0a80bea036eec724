import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rcst.costs import routing_cost_edges, tree_distances
from rcst.errors import BudgetExceeded
from rcst.generators import random_connected_graph
from rcst.graph import Graph
from rcst.isolation import PerturbationConfig, ScaledWeights, dijkstra, perturb
from rcst.mrct import (
    ApproxParams,
    approx_mrct,
    build_core,
    build_star,
    candidate_count,
    derive_r,
    parallel_mrct,
)
from rcst.oracle import exact_mrct
from rcst.outcomes import Disconnected, Fail
from rcst.sroct import shortest_path_tree

from .conftest import complete_graph, connected_graphs, path_graph
from .test_isolation import CORE_GRAPH


def _unique(g: Graph, seed: int) -> ScaledWeights | None:
    sw = perturb(g, PerturbationConfig(seed=seed))
    return sw if sw.is_unique else None


class TestParams:
    @pytest.mark.parametrize(
        "eps, r",
        [(Fraction(1), 2), (Fraction(1, 2), 4), (Fraction(16, 3), 1), (Fraction(8), 1), (Fraction(9), 0), (Fraction(1, 10), 18)],
    )
    def test_derive_r(self, eps, r):
        assert derive_r(eps) == r
        # smallest such r
        assert Fraction(8, 9 * r + 2) < eps / 2
        assert r == 0 or Fraction(8, 9 * (r - 1) + 2) >= eps / 2

    def test_nonpositive_epsilon(self):
        with pytest.raises(ValueError):
            derive_r(Fraction(0))

    def test_guarantee(self):
        p = ApproxParams.from_epsilon(1)
        assert p.max_len == 6
        assert p.ratio == Fraction(4, 3) + Fraction(8, 20)
        assert p.guarantee(6) == p.ratio * Fraction(13, 12)

    def test_candidate_count(self):
        assert candidate_count(3, 6) == 3 + 6 + 6
        assert candidate_count(5, 2) == 5 + 20


class TestCore:
    sw = ScaledWeights.from_positive(CORE_GRAPH, CORE_GRAPH.weights)

    def test_singleton(self):
        core = build_core(self.sw, (3,))
        assert core.vertices == {3} and not core.edge_ids

    def test_pair_is_shortest_path(self):
        core = build_core(self.sw, (0, 2))
        assert core.vertices == {0, 1, 2}
        assert core.edge_ids == {CORE_GRAPH.edge_id(0, 1), CORE_GRAPH.edge_id(1, 2)}

    def test_attaches_to_interior_vertex(self):
        core = build_core(self.sw, (0, 2, 3))
        assert core.vertices == {0, 1, 2, 3}
        assert core.edge_ids == {CORE_GRAPH.edge_id(*e) for e in [(0, 1), (1, 2), (1, 3)]}

    def test_star_of_core(self):
        t = build_star(self.sw, (0, 2, 3))
        assert set(t.edges) == {(0, 1), (1, 2), (1, 3), (2, 4)}

    def test_all_vertices_core(self):
        core = build_core(self.sw, (0, 1, 2, 3, 4))
        assert set(build_star(self.sw, (0, 1, 2, 3, 4)).edge_ids) == set(core.edge_ids)

    def test_singleton_star_is_spt(self):
        for v in range(CORE_GRAPH.n):
            assert build_star(self.sw, (v,)) == shortest_path_tree(self.sw, v)


def test_k3_singleton_star():
    # K3 with 0-1:4, 0-2:5, 1-2:2; from 0 the cheapest trees use 0-1 and 0-2
    g = Graph(3, ((0, 1), (0, 2), (1, 2)), (4, 5, 2))
    sw = ScaledWeights.from_positive(g, g.weights)
    assert set(build_star(sw, (0,)).edges) == {(0, 1), (0, 2)}
    # from 2 the path to 0 goes directly (5 < 2 + 4)
    assert set(build_star(sw, (2,)).edges) == {(0, 2), (1, 2)}


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_n=2, max_n=7), st.integers(0, 2**32), st.data())
def test_general_star_property(g, seed, data):
    sw = _unique(g, seed)
    if sw is None:
        return
    seq = tuple(data.draw(st.lists(st.integers(0, g.n - 1), min_size=1, max_size=4)))
    core = build_core(sw, seq)
    assert len(core.edge_ids) == len(core.vertices) - 1
    t = build_star(sw, seq)
    for u in range(g.n):
        td = tree_distances(t, u, sw.scaled)
        gd = dijkstra(g, sw.scaled, u)[0]
        assert min(td[c] for c in core.vertices) == min(gd[c] for c in core.vertices)


class TestApprox:
    def test_two_vertices(self):
        g = path_graph([3])
        res = approx_mrct(ScaledWeights.from_positive(g, (3,)), ApproxParams.from_epsilon(1))
        assert list(res.tree.edges) == [(0, 1)] and res.original_cost.value == 6

    def test_tree_input(self):
        g = Graph(4, ((0, 1), (1, 2), (1, 3)), (1, 2, 3))
        sw = ScaledWeights.from_positive(g, g.weights)
        res = approx_mrct(sw, ApproxParams.from_epsilon(1))
        assert res.tree.edge_ids == (0, 1, 2)
        assert res.original_cost == routing_cost_edges(res.tree)

    @settings(max_examples=15, deadline=None)
    @given(connected_graphs(min_n=2, max_n=5), st.integers(0, 2**32))
    def test_pruned_matches_literal(self, g, seed):
        sw = _unique(g, seed)
        if sw is None:
            return
        params = ApproxParams(Fraction(9), 0)
        fast = approx_mrct(sw, params)
        slow = approx_mrct(sw, params, prune=False)
        assert (fast.tree, fast.scaled_cost, fast.sequence) == (slow.tree, slow.scaled_cost, slow.sequence)

    @settings(max_examples=20, deadline=None)
    @given(connected_graphs(min_n=2, max_n=6), st.integers(0, 2**32), st.data())
    def test_argmin(self, g, seed, data):
        sw = _unique(g, seed)
        if sw is None:
            return
        res = approx_mrct(sw, ApproxParams(Fraction(9), 0))
        seq = tuple(data.draw(st.lists(st.integers(0, g.n - 1), min_size=1, max_size=4)))
        assert res.scaled_cost <= routing_cost_edges(build_star(sw, seq), sw.scaled, res.scaled_cost.unit)

    def test_r0_within_two_of_scaled_optimum(self):
        rng = random.Random(11)
        checked = 0
        while checked < 15:
            g = random_connected_graph(rng, 7, 0.5, (1, 9))
            sw = _unique(g, rng.randrange(2**32))
            if sw is None:
                continue
            res = approx_mrct(sw, ApproxParams(Fraction(9), 0))
            opt = exact_mrct(g, sw.scaled).cost.value
            assert res.scaled_cost.value <= 2 * opt
            checked += 1

    def test_workers_identical(self):
        g = random_connected_graph(random.Random(2), 6, 0.6, (1, 9))
        cfg = PerturbationConfig(seed=4)
        one = parallel_mrct(g, 1, cfg, workers=1)
        two = parallel_mrct(g, 1, cfg, workers=2)
        assert one == two

    def test_budget(self):
        sw = ScaledWeights.from_positive(complete_graph(7), [1] * 21)
        with pytest.raises(BudgetExceeded):
            approx_mrct(sw, ApproxParams.from_epsilon(1), budget=100)


class TestParallelMrct:
    def test_disconnected(self):
        assert isinstance(parallel_mrct(Graph(3, ((0, 1),), (1,)), 1, PerturbationConfig()), Disconnected)

    def test_zero_weights(self):
        g = complete_graph(5, weight=0)
        res = parallel_mrct(g, 1, PerturbationConfig(seed=1))
        assert res.original_cost.value == 0 and res.tree.host == g

    def test_fail_carries_witness(self):
        g = Graph(4, ((0, 1), (1, 2), (2, 3), (0, 3)), (1, 1, 1, 1))
        for seed in range(200):
            res = parallel_mrct(g, 1, PerturbationConfig(seed, 5, 1))
            if isinstance(res, Fail):
                assert res.seed == seed and res.report.witness is not None
                return
        pytest.fail("no failing seed found")

    def test_ratio_n6(self):
        rng = random.Random(6)
        bound = ApproxParams.from_epsilon(1).guarantee(6)
        for seed in range(100):
            g = random_connected_graph(rng, 6, 0.5, (1, 9))
            res = parallel_mrct(g, 1, PerturbationConfig(seed=seed))
            if isinstance(res, Fail):
                continue
            opt = exact_mrct(g).cost.value
            assert opt <= res.original_cost.value <= bound * opt
