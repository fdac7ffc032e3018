import random

import pytest

from designkg.facts import load_corpus
from designkg.graph import (
    DocGraph,
    EmptyGraph,
    UnknownEntity,
    build_graph,
    graph_from_json,
    graph_to_json,
    neighborhood,
    sparsity,
    to_dot,
)

from conftest import WORKED_ENTITIES, WORKED_LINES, graph_from_edges


class TestBuild:
    def test_worked_example(self, worked_graph):
        assert worked_graph.doc_id == "US4358411"
        assert set(worked_graph.nodes) == WORKED_ENTITIES
        assert worked_graph.n_nodes == 7
        assert worked_graph.edge_count == 6
        h = worked_graph.node_id("a temperature")
        t = worked_graph.node_id("at least 100° c.")
        assert worked_graph.edges[(h, t)] == {"of"}

    def test_empty(self):
        graph = build_graph([], doc_id="D0")
        assert graph.n_nodes == 0 and graph.edge_count == 0

    def test_parallel_facts_collapse_with_label_union(self):
        corpus = load_corpus(["D1\t0\ta\tr1\tb", "D1\t0\ta\tr2\tb"])
        graph = build_graph(corpus.facts)
        assert graph.edge_count == 1
        assert graph.edges[(0, 1)] == {"r1", "r2"}

    def test_self_loop_dropped_and_counted(self):
        corpus = load_corpus(["D1\t0\tThe Valve\tof\tthe valve", "D1\t0\ta\tof\tb"])
        graph = build_graph(corpus.facts)
        assert graph.dropped_self_loops == 1
        assert graph.edge_count == 1

    def test_permutation_invariant(self):
        forward = build_graph(load_corpus(WORKED_LINES).facts)
        backward = build_graph(load_corpus(list(reversed(WORKED_LINES))).facts)
        named = lambda g: {
            (g.nodes[h], g.nodes[t]): set(labels) for (h, t), labels in g.edges.items()
        }
        assert named(forward) == named(backward)

    def test_degree_sums_equal_edge_count(self, worked_graph):
        assert sum(len(s) for s in worked_graph.out_adj()) == worked_graph.edge_count
        assert sum(len(s) for s in worked_graph.in_adj()) == worked_graph.edge_count

    def test_label_count_equals_distinct_facts(self, worked_graph):
        assert worked_graph.label_count == 6

    def test_mixed_documents_rejected(self):
        corpus = load_corpus(["D1\t0\ta\tof\tb", "D2\t0\ta\tof\tb"])
        with pytest.raises(ValueError):
            build_graph(corpus.facts)


class TestSparsity:
    def test_worked_graph(self, worked_graph):
        assert sparsity(worked_graph) == pytest.approx(6 / 7, abs=1e-9)

    def test_reference_ratio(self):
        # 4460 nodes / 8204 edges is the published large-document example.
        assert 8204 / 4460 == pytest.approx(1.839, abs=5e-4)

    def test_single_node(self):
        graph = DocGraph(doc_id="D")
        graph.add_node("only")
        assert sparsity(graph) == 0.0

    def test_empty_graph_raises(self):
        with pytest.raises(EmptyGraph):
            sparsity(DocGraph(doc_id="D"))


class TestNeighborhood:
    def test_one_hop_around_reaction(self, worked_graph):
        view = neighborhood(worked_graph, "the reaction", hops=1)
        assert set(view.nodes) == {
            "a process",
            "the reaction",
            "a temperature",
            "a partial pressure",
        }
        # induced edges only among those nodes
        assert view.edge_count == 3

    def test_saturation_reaches_component(self, worked_graph):
        view = neighborhood(worked_graph, "a process", hops=10)
        assert set(view.nodes) == WORKED_ENTITIES

    def test_isolated_node(self):
        graph = DocGraph(doc_id="D")
        graph.add_node("alone")
        graph.add_edge("x", "y", "r")
        view = neighborhood(graph, "alone", hops=3)
        assert view.nodes == ["alone"]
        assert view.edge_count == 0

    def test_unknown_entity(self, worked_graph):
        with pytest.raises(UnknownEntity):
            neighborhood(worked_graph, "a missing entity", hops=1)


class TestExport:
    def test_dot_contains_labels_joined(self):
        graph = graph_from_edges([("a", "b", "of"), ("a", "b", "in")])
        dot = to_dot(graph)
        assert '"a" -> "b" [label="in; of"];' in dot

    def test_dot_escapes_quotes(self):
        graph = graph_from_edges([('say "hi"', "b", "of")])
        assert '\\"hi\\"' in to_dot(graph)

    def test_json_round_trip(self, worked_graph):
        clone = graph_from_json(graph_to_json(worked_graph))
        assert clone.doc_id == worked_graph.doc_id
        assert clone.nodes == worked_graph.nodes
        assert clone.edges == worked_graph.edges

    def test_json_deterministic(self, worked_graph):
        assert graph_to_json(worked_graph) == graph_to_json(worked_graph)


class TestStructure:
    def test_structure_round_trip_counts(self):
        rng = random.Random(5)
        graph = DocGraph(doc_id="D")
        for _ in range(40):
            h, t = rng.sample(range(12), 2)
            graph.add_edge(f"n{h}", f"n{t}", "r")
        struct = graph.structure()
        assert struct.edge_count == graph.edge_count
        assert struct.n == graph.n_nodes
        und = struct.und_adj()
        for u, targets in enumerate(struct.out_adj):
            for v in targets:
                assert v in und[u] and u in und[v]
