import pytest

from designkg.facts import load_corpus
from designkg.graph import DocGraph, build_graph

# Six pre-extracted facts from one carbonylation-process document; the
# hand-built graph has 7 nodes and 6 edges (sparsity 6/7) and its connected
# triples are 5 two-edge paths plus 1 fan-out.
WORKED_LINES = [
    "US4358411\t0\tA process\twherein\tthe reaction",
    "US4358411\t0\tthe reaction\tis carried out at\ta temperature",
    "US4358411\t0\ta temperature\tof\tat least 100° C.",
    "US4358411\t0\tthe reaction\tis carried out under\ta partial pressure",
    "US4358411\t0\ta partial pressure\tof\tcarbon monoxide",
    "US4358411\t0\tcarbon monoxide\tof\tat least 5 psi",
]

WORKED_ENTITIES = {
    "a process",
    "the reaction",
    "a temperature",
    "at least 100° c.",
    "a partial pressure",
    "carbon monoxide",
    "at least 5 psi",
}


@pytest.fixture
def worked_corpus():
    return load_corpus(WORKED_LINES)


@pytest.fixture
def worked_graph(worked_corpus):
    return build_graph(worked_corpus.facts)


@pytest.fixture
def worked_tsv(tmp_path):
    path = tmp_path / "facts.tsv"
    path.write_text("\n".join(WORKED_LINES) + "\n", encoding="utf-8")
    return path


def graph_from_edges(edges, doc_id="doc", label="r"):
    """DocGraph over string node names; edges are (head, tail) or (head, tail, label)."""
    g = DocGraph(doc_id=doc_id)
    for edge in edges:
        if len(edge) == 2:
            head, tail = edge
            g.add_edge(head, tail, label)
        else:
            g.add_edge(*edge)
    return g
