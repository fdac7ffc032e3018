"""Analytics for knowledge graphs extracted from artefact descriptions.

The library ingests pre-extracted (head, relationship, tail) facts, builds
one directed labeled graph per document, and provides:

* Zipf-distribution fits and percentile bucketing over term frequencies;
* generalization of entities/relationships to POS-based syntaxes and
  lexicon-based detection of hierarchical relationships;
* enumeration and degree-signature classification of connected 3-/4-node
  subgraphs, with curveball (degree-preserving) graph randomization and
  corpus-standardized motif significance;
* audited graph rewrites that concretize attribute facts and explicate
  hierarchy.
"""

from .facts import (
    Corpus,
    Fact,
    MalformedRecord,
    TokenSpan,
    load_corpus,
    normalize_key,
    parse_fact_record,
    serialize_fact,
    tag_tokens,
)
from .graph import (
    DocGraph,
    EmptyGraph,
    StructuralDigraph,
    UnknownEntity,
    build_graph,
    graph_from_json,
    graph_to_json,
    neighborhood,
    sparsity,
    to_dot,
)
from .lexicons import Lexicons, default_lexicons, load_lexicons
from .mining import (
    DisconnectedSubgraph,
    PatternCounts,
    PatternSpace,
    brute_force_connected_sets,
    canonical_labeled_form,
    count_patterns,
    enumerate_3node,
    enumerate_4node,
    enumerate_all_patterns,
    pattern_signature,
)
from .pipeline import (
    build_doc_graphs,
    derive_seed,
    mine_corpus,
    randomize_corpus,
    score_corpus,
)
from .randomize import (
    NodeSetMismatch,
    RandomizeResult,
    curveball_trade,
    perturbation,
    randomize,
    randomize_ensemble,
)
from .significance import (
    MotifRanking,
    MotifScore,
    TooFewDocuments,
    ZeroEdges,
    ZeroVariance,
    classification_rollup,
    corpus_z_prime,
    delta,
    rank_motifs,
    z_score,
)
from .syntax import (
    EmptyCorpus,
    HierarchyLexicon,
    MissingPos,
    RetentionSet,
    SyntaxString,
    match_hierarchy,
    to_syntax,
    top_frequent_words,
)
from .transforms import (
    RelabelTable,
    TransformEdit,
    apply_edits,
    collapse_attribute,
    explicate_hierarchy,
    suggest_relabels,
)
from .zipf import (
    CdfBuckets,
    DegenerateData,
    RankOutOfRange,
    RankedProportions,
    ZipfFit,
    bucket_cdf,
    fit_zipf,
    harmonic_number,
    zipf_pmf,
)

__version__ = "0.1.0"
