import random

import pytest

from designkg.graph import StructuralDigraph
from designkg.randomize import (
    NodeSetMismatch,
    curveball_trade,
    perturbation,
    randomize,
)

from conftest import graph_from_edges
from synthetic import random_digraph


def degrees(struct: StructuralDigraph):
    return (
        [len(s) for s in struct.out_adj],
        [len(s) for s in struct.in_adj()],
    )


class TestTrade:
    def test_identical_out_neighborhoods_do_nothing(self):
        out = [{2, 3}, {2, 3}, set(), set()]
        assert curveball_trade(out, random.Random(0)) is False
        assert out == [{2, 3}, {2, 3}, set(), set()]

    def test_two_nodes_single_edge_is_fixed(self):
        # pair (0, 1) is the only choice and node 1 is excluded from trading
        out = [{1}, set()]
        for seed in range(20):
            assert curveball_trade(out, random.Random(seed)) is False
        assert out == [{1}, set()]

    def test_two_singleton_sets_swap_or_stay(self):
        outcomes = set()
        for seed in range(60):
            out = [{2}, {3}, set(), set()]
            moved = curveball_trade(out, random.Random(seed))
            assert (len(out[0]), len(out[1])) == (1, 1)
            outcomes.add((frozenset(out[0]), frozenset(out[1]), moved))
        assert (frozenset({3}), frozenset({2}), True) in outcomes
        assert (frozenset({2}), frozenset({3}), False) in outcomes
        assert all(o[0] in ({frozenset({2})}, {frozenset({3})}) for o in outcomes)

    def test_degrees_preserved_over_many_trades(self):
        struct = random_digraph(40, 120, seed=4)
        before = degrees(struct)
        rng = random.Random(99)
        for _ in range(10000):
            curveball_trade(struct.out_adj, rng)
            assert all(i not in struct.out_adj[i] for i in range(struct.n))
        assert degrees(struct) == before

    def test_edge_count_conserved(self):
        struct = random_digraph(30, 80, seed=8)
        rng = random.Random(1)
        for _ in range(2000):
            curveball_trade(struct.out_adj, rng)
        assert struct.edge_count == 80


class TestPerturbation:
    def test_identical_graphs(self):
        g = random_digraph(10, 20, seed=0)
        assert perturbation(g, g.copy()) == 0.0

    def test_disjoint_edge_sets(self):
        a = StructuralDigraph(4, [{1}, {2}, set(), set()])
        b = StructuralDigraph(4, [{3}, set(), {1}, set()])
        assert perturbation(a, b) == 1.0

    def test_half_moved(self):
        original = StructuralDigraph(
            8, [{1}, {2}, {3}, {4}, {5}, {6}, set(), set()]
        )
        moved = StructuralDigraph(
            8, [{1}, {2}, {3}, {5}, {6}, {7}, set(), set()]
        )
        assert perturbation(original, moved) == pytest.approx(0.5)

    def test_node_mismatch(self):
        with pytest.raises(NodeSetMismatch):
            perturbation(random_digraph(5, 6, 0), random_digraph(6, 6, 0))


class TestRandomize:
    def test_target_zero_returns_immediately(self):
        result = randomize(random_digraph(20, 40, seed=1), target=0.0, seed=5)
        assert result.trades_executed == 0
        assert result.achieved_perturbation == 0.0
        assert result.reached_target

    def test_rigid_structure_exhausts_budget(self):
        # both sources share the full out-neighborhood: nothing is tradable
        g = graph_from_edges([("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
        result = randomize(g, target=0.5, max_trades=200, seed=3)
        assert result.achieved_perturbation == 0.0
        assert result.trades_executed == 200
        assert not result.reached_target

    def test_deterministic_for_seed(self):
        g = random_digraph(50, 100, seed=7)
        a = randomize(g, target=0.5, max_trades=5000, seed=42)
        b = randomize(g, target=0.5, max_trades=5000, seed=42)
        assert a.graph.edge_set() == b.graph.edge_set()
        assert a.trades_executed == b.trades_executed
        assert a.achieved_perturbation == b.achieved_perturbation

    def test_different_seed_differs(self):
        g = random_digraph(50, 100, seed=7)
        a = randomize(g, target=0.5, max_trades=5000, seed=42)
        b = randomize(g, target=0.5, max_trades=5000, seed=43)
        assert a.graph.edge_set() != b.graph.edge_set()

    def test_reported_perturbation_matches_definition(self):
        g = random_digraph(60, 150, seed=2)
        result = randomize(g, target=0.5, max_trades=5000, seed=11)
        assert result.achieved_perturbation == pytest.approx(
            perturbation(g, result.graph), abs=1e-12
        )

    def test_degrees_and_loops_after_randomize(self):
        g = random_digraph(80, 160, seed=21)
        before = degrees(g)
        result = randomize(g, target=1.1, max_trades=4000, seed=13)
        assert degrees(result.graph) == before
        assert all(i not in result.graph.out_adj[i] for i in range(80))

    def test_no_edges_rejected(self):
        with pytest.raises(ValueError):
            randomize(StructuralDigraph(3, [set(), set(), set()]), seed=0)

    def test_doc_graph_input_leaves_original_untouched(self):
        g = graph_from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
        snapshot = dict(g.edges)
        randomize(g, target=0.9, max_trades=500, seed=9)
        assert g.edges == snapshot
