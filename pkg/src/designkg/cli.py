"""Command-line surface tying the pipeline together.

Stages communicate through files (JSONL/CSV) inside the chosen output
directory, and every artifact is deterministic for a given combination of
inputs, flags, and seed, regardless of ``--jobs``. Subcommands:

    ingest stats zipf syntax mine randomize motifs subgraphs
    neighborhood transform export oracle
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import re
import sys
import time
from collections import Counter
from pathlib import Path

from . import __version__
from .facts import Corpus, TokenSpan, load_corpus, serialize_fact
from .graph import DocGraph, graph_to_json, neighborhood, sparsity, to_dot
from .lexicons import load_lexicons
from .mining import (
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
from .randomize import randomize_ensemble
from .significance import classification_rollup, rank_motifs, z_score, ZeroVariance
from .syntax import (
    HierarchyLexicon,
    corpus_syntaxes,
    match_hierarchy,
    top_frequent_words,
)
from .transforms import (
    ATTRIBUTE_LABEL,
    RelabelTable,
    collapse_attribute,
    explicate_hierarchy,
    suggest_relabels,
)
from .zipf import RankedProportions, bucket_cdf, fit_zipf


class UsageError(ValueError):
    """Input problem the user can fix; reported without a traceback."""


def _fmt(value: float) -> str:
    return format(value, ".12g")


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", text).strip("_") or "x"


class Workspace:
    """Tracks files a command writes so failures leave no partial output."""

    def __init__(self, out_dir: str | Path):
        self.root = Path(out_dir)
        self.root.mkdir(parents=True, exist_ok=True)
        self.created: list[Path] = []

    def path(self, *parts: str) -> Path:
        target = self.root.joinpath(*parts)
        target.parent.mkdir(parents=True, exist_ok=True)
        self.created.append(target)
        return target

    def write_text(self, name: str, content: str) -> Path:
        target = self.path(name)
        target.write_text(content, encoding="utf-8")
        return target

    def write_json(self, name: str, obj) -> Path:
        return self.write_text(name, json.dumps(obj, indent=2, sort_keys=True) + "\n")

    def write_csv(self, name: str, header: list[str], rows) -> Path:
        target = self.path(name)
        with open(target, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
        return target

    def write_jsonl(self, name: str, lines) -> Path:
        target = self.path(name)
        with open(target, "w", encoding="utf-8") as handle:
            for line in lines:
                handle.write(line + "\n")
        return target

    def discard(self) -> None:
        for path in reversed(self.created):
            path.unlink(missing_ok=True)


def _read_corpus(args) -> Corpus:
    corpus = load_corpus(_chain_inputs(args.input), on_error=args.on_error)
    return corpus


def _chain_inputs(paths: list[str]):
    for path in paths:
        if not Path(path).exists():
            raise UsageError(f"input file not found: {path}")
    for path in paths:
        with open(path, encoding="utf-8") as handle:
            yield from handle


def _graphs(args, corpus: Corpus) -> dict[str, DocGraph]:
    graphs = build_doc_graphs(corpus, min_fact_freq=args.min_fact_freq)
    if not graphs:
        raise UsageError("corpus contains no documents")
    return graphs


def _retention(args, corpus: Corpus):
    lex = load_lexicons(args.lexicon_dir)
    fixed = args.retention == "fixed"
    field = "entities" if fixed else getattr(args, "field", "entities")
    if field.endswith("-syntaxes"):
        field = field[: -len("-syntaxes")]
    return (
        top_frequent_words(
            corpus, field=field, n=args.top_n, lexicons=lex, fixed_list=fixed
        ),
        lex,
    )


# --------------------------------------------------------------------------
# subcommands


def cmd_ingest(args, ws: Workspace) -> int:
    corpus = _read_corpus(args)
    ws.write_jsonl("corpus.jsonl", (serialize_fact(f) for f in corpus.facts))
    summary = corpus.summary()
    summary["skipped_records"] = len(corpus.skipped)
    ws.write_json("corpus_summary.json", summary)
    print(f"ingested {corpus.n_facts} facts from {corpus.n_documents} documents")
    if corpus.skipped:
        print(f"skipped {len(corpus.skipped)} malformed records", file=sys.stderr)
    return 0


def cmd_stats(args, ws: Workspace) -> int:
    corpus = _read_corpus(args)
    graphs = _graphs(args, corpus)
    ws.write_json("stats.json", corpus.summary())
    rows = []
    for doc_id in sorted(graphs):
        g = graphs[doc_id]
        rows.append(
            [
                doc_id,
                len(corpus.doc_facts(doc_id)),
                g.n_nodes,
                g.edge_count,
                _fmt(sparsity(g)) if g.n_nodes else "",
            ]
        )
    ws.write_csv("doc_stats.csv", ["doc_id", "facts", "nodes", "edges", "sparsity"], rows)
    for key, value in sorted(corpus.summary().items()):
        print(f"{key}: {value}")
    return 0


def _zipf_counts(args, corpus: Corpus) -> Counter:
    field = args.field
    if field == "entities":
        return Counter(corpus.entity_freq)
    if field == "relationships":
        return Counter(corpus.rel_freq)
    retain, lex = _retention(args, corpus)
    base_field = "entities" if field == "entity-syntaxes" else "relationships"
    counts: Counter = Counter()
    for _surface, syntax, count in corpus_syntaxes(corpus, base_field, retain, lex):
        counts[syntax] += count
    return counts


def cmd_zipf(args, ws: Workspace) -> int:
    corpus = _read_corpus(args)
    if corpus.n_facts == 0:
        raise UsageError("corpus is empty; nothing to fit")
    counts = _zipf_counts(args, corpus)
    if len(counts) < 2:
        raise UsageError(f"need at least 2 unique terms in {args.field}, got {len(counts)}")
    ranked = RankedProportions.from_counts(counts)
    fit = fit_zipf(ranked)
    name = args.field.replace("-", "_")
    ws.write_json(f"zipf_{name}.json", {"s": fit.s, "error": fit.error, "N": fit.n})
    buckets = bucket_cdf(ranked, top_k=args.top_k)
    ws.write_csv(
        f"zipf_buckets_{name}.csv",
        ["bucket_lo", "bucket_hi", "unique_count", "top_terms"],
        [
            [_fmt(b.lo), _fmt(b.hi), b.unique_count, "|".join(b.top_terms)]
            for b in buckets.buckets
        ],
    )
    print(f"{args.field}: s={fit.s:.6f} error={fit.error:.3e} N={fit.n}")
    return 0


def cmd_syntax(args, ws: Workspace) -> int:
    corpus = _read_corpus(args)
    if corpus.n_facts == 0:
        raise UsageError("corpus is empty")
    retain, lex = _retention(args, corpus)
    rows = corpus_syntaxes(corpus, args.field, retain, lex)
    ws.write_csv(
        f"syntax_{args.field}.csv",
        ["surface", "syntax", "count"],
        [[surface, syntax, count] for surface, syntax, count in rows],
    )
    print(f"{args.field}: {len(rows)} unique surfaces, "
          f"{len({syntax for _, syntax, _ in rows})} unique syntaxes")
    if args.field == "relationships":
        hierarchy = HierarchyLexicon.load(args.hierarchy_lexicon)
        matches = []
        for surface, _syntax, count in rows:
            pattern = match_hierarchy(TokenSpan.from_text(surface), hierarchy, lex)
            if pattern is not None:
                matches.append([surface, pattern, count])
        ws.write_csv("hierarchy_matches.csv", ["surface", "pattern", "count"], matches)
        print(f"hierarchical relationships: {len(matches)}")
    return 0


def cmd_mine(args, ws: Workspace) -> int:
    corpus = _read_corpus(args)
    graphs = _graphs(args, corpus)
    seeds = None
    if args.size == 4 and not args.exhaustive:
        if not args.seed_sigs:
            raise UsageError("mine --size 4 needs --seed-sigs or --exhaustive")
        seeds = tuple(s.strip() for s in args.seed_sigs.split(",") if s.strip())
    counts = mine_corpus(graphs, k=args.size, seed_signatures=seeds, jobs=args.jobs)
    rows = []
    for doc_id in sorted(counts):
        for signature, count in sorted(
            counts[doc_id].counts.items(), key=lambda kv: (-kv[1], kv[0])
        ):
            rows.append([doc_id, args.size, signature, count])
    ws.write_csv(f"patterns_k{args.size}.csv", ["doc_id", "k", "signature", "count"], rows)
    total = sum(c.total for c in counts.values())
    print(f"mined {total} connected {args.size}-node subgraphs across {len(graphs)} documents")
    return 0


def cmd_randomize(args, ws: Workspace) -> int:
    corpus = _read_corpus(args)
    graphs = _graphs(args, corpus)
    results = randomize_corpus(
        graphs,
        seed=args.seed,
        target=args.target_perturbation,
        max_trades=args.max_trades,
        jobs=args.jobs,
    )
    graph_lines = []
    meta_lines = []
    for doc_id in sorted(results):
        result = results[doc_id]
        if result is None:
            continue
        graph_lines.append(
            json.dumps(
                {
                    "doc_id": doc_id,
                    "nodes": list(graphs[doc_id].nodes),
                    "edges": sorted([u, v] for u, v in result.graph.edge_set()),
                },
                ensure_ascii=False,
                sort_keys=True,
            )
        )
        meta_lines.append(
            json.dumps(
                {
                    "doc_id": doc_id,
                    "perturbation": result.achieved_perturbation,
                    "trades": result.trades_executed,
                    "seed": result.seed,
                },
                ensure_ascii=False,
                sort_keys=True,
            )
        )
    ws.write_jsonl("randomized.jsonl", graph_lines)
    ws.write_jsonl("randomize_meta.jsonl", meta_lines)
    reached = sum(
        1 for r in results.values() if r is not None and r.reached_target
    )
    usable = sum(1 for r in results.values() if r is not None)
    print(f"randomized {usable} graphs; {reached} reached the perturbation target")
    return 0


def cmd_motifs(args, ws: Workspace) -> int:
    corpus = _read_corpus(args)
    graphs = _graphs(args, corpus)
    seeds = None
    if args.size == 4 and not args.exhaustive:
        # Extend only from each document's significant 3-node patterns.
        base = score_corpus(
            graphs,
            k=3,
            seed=args.seed,
            target=args.target_perturbation,
            max_trades=args.max_trades,
            threshold=args.threshold,
            jobs=args.jobs,
        )
        per_doc: dict[str, tuple[str, ...]] = {}
        for score in base.scores:
            if score.significant:
                per_doc.setdefault(score.doc_id, ())
                per_doc[score.doc_id] = tuple(
                    sorted(set(per_doc[score.doc_id]) | {score.signature})
                )
        seeds = per_doc
    result = score_corpus(
        graphs,
        k=args.size,
        seed=args.seed,
        target=args.target_perturbation,
        max_trades=args.max_trades,
        threshold=args.threshold,
        seed_signatures=seeds,
        include_absent=not args.drop_absent,
        jobs=args.jobs,
    )
    detail_rows = [
        [
            s.doc_id,
            s.signature,
            s.p,
            s.r,
            s.e,
            _fmt(s.delta),
            _fmt(s.z_prime),
            str(s.significant).lower(),
        ]
        for s in result.scores
    ]
    ws.write_csv(
        f"motif_detail_k{args.size}.csv",
        ["doc_id", "signature", "P", "R", "E", "delta", "z_prime", "significant"],
        detail_rows,
    )
    ranking = rank_motifs(result.scores)
    ws.write_csv(
        f"motif_ranking_k{args.size}.csv",
        ["signature", "patent_count", "raw_count"],
        ranking.as_rows(),
    )
    if args.class_map:
        doc_class = {}
        for line_no, raw in enumerate(
            Path(args.class_map).read_text(encoding="utf-8").splitlines(), start=1
        ):
            if not raw.strip():
                continue
            parts = raw.split("\t")
            if len(parts) != 2:
                raise UsageError(f"{args.class_map}:{line_no}: expected doc_id<TAB>class")
            doc_class[parts[0].strip()] = parts[1].strip()
        rollup = classification_rollup(result.scores, doc_class)
        rows = []
        for cls in sorted(rollup):
            for signature, patents, raw_count in rollup[cls].as_rows():
                rows.append([cls, signature, patents, raw_count])
        ws.write_csv(
            f"motif_ranking_by_class_k{args.size}.csv",
            ["class", "signature", "patent_count", "raw_count"],
            rows,
        )
    if args.ensemble:
        rows = []
        for doc_id in sorted(graphs):
            g = graphs[doc_id]
            if g.edge_count == 0:
                continue
            counts = count_patterns(g, 3)
            samples = {
                sig: []
                for sig in counts.counts
            }
            ensemble = randomize_ensemble(
                g,
                count=args.ensemble,
                target=args.target_perturbation,
                max_trades=args.max_trades,
                seed=derive_seed(args.seed, doc_id),
            )
            for member in ensemble:
                null_counts = count_patterns(member.graph, 3)
                for sig in samples:
                    samples[sig].append(null_counts.get(sig))
            for sig in sorted(samples):
                p = counts.get(sig)
                try:
                    z = _fmt(z_score(p, samples[sig]))
                except ZeroVariance:
                    z = ""
                mean = sum(samples[sig]) / len(samples[sig])
                rows.append([doc_id, sig, p, _fmt(mean), z])
        ws.write_csv(
            "motif_ensemble_k3.csv",
            ["doc_id", "signature", "P", "R_mean", "z"],
            rows,
        )
    significant_docs = len({s.doc_id for s in result.scores if s.significant})
    print(
        f"scored {len(result.scores)} (document, signature) pairs; "
        f"{significant_docs} documents carry at least one motif"
    )
    for signature, patents, raw_count in ranking.top(5):
        print(f"  {signature}: significant in {patents} documents, raw count {raw_count}")
    return 0


def cmd_subgraphs(args, ws: Workspace) -> int:
    corpus = _read_corpus(args)
    graphs = _graphs(args, corpus)
    counts = mine_corpus(graphs, k=args.size, jobs=args.jobs)
    if args.signatures:
        selected = [s.strip() for s in args.signatures.split(",") if s.strip()]
    else:
        totals: Counter = Counter()
        for doc_counts in counts.values():
            totals.update(doc_counts.counts)
        selected = [sig for sig, _ in sorted(totals.items(), key=lambda kv: (-kv[1], kv[0]))[:3]]
    if not selected:
        raise UsageError("no signatures to report")
    node_syntax = None
    if args.mode == "rel-entity-syntax":
        retain, lex = _retention(args, corpus)
        node_syntax = {
            surface: syntax
            for surface, syntax, _ in corpus_syntaxes(corpus, "entities", retain, lex)
        }
    form_counts: dict[str, Counter] = {sig: Counter() for sig in selected}
    wanted = set(selected)
    for doc_id in sorted(graphs):
        graph = graphs[doc_id]
        if args.size == 3:
            node_sets = enumerate_3node(graph)
        else:
            node_sets = enumerate_4node(graph, None, exhaustive=True)
        for nodes in node_sets:
            sig = pattern_signature(graph, nodes)
            if sig in wanted:
                form = canonical_labeled_form(
                    graph, nodes, mode=args.mode, node_syntax=node_syntax
                )
                form_counts[sig][form] += 1
    rows = []
    bucket_rows = []
    for sig in selected:
        forms = form_counts[sig]
        for form, count in sorted(forms.items(), key=lambda kv: (-kv[1], kv[0])):
            rows.append([sig, form, count])
        if len(forms) >= 2:
            ranked = RankedProportions.from_counts(forms)
            fit = fit_zipf(ranked)
            buckets = bucket_cdf(ranked, top_k=args.top_k)
            for bucket in buckets.buckets:
                bucket_rows.append(
                    [
                        sig,
                        _fmt(fit.s),
                        _fmt(bucket.lo),
                        _fmt(bucket.hi),
                        bucket.unique_count,
                        "|".join(bucket.top_terms),
                    ]
                )
    ws.write_csv(
        f"subgraph_forms_k{args.size}.csv", ["signature", "labeled_form", "count"], rows
    )
    ws.write_csv(
        f"subgraph_form_buckets_k{args.size}.csv",
        ["signature", "zipf_s", "bucket_lo", "bucket_hi", "unique_count", "top_forms"],
        bucket_rows,
    )
    for sig in selected:
        print(f"{sig}: {len(form_counts[sig])} unique labeled subgraphs")
    return 0


def cmd_neighborhood(args, ws: Workspace) -> int:
    corpus = _read_corpus(args)
    graphs = _graphs(args, corpus)
    if args.doc not in graphs:
        raise UsageError(f"unknown document {args.doc!r}")
    graph = graphs[args.doc]
    if not graph.has_node(args.entity):
        raise UsageError(f"entity {args.entity!r} not in document {args.doc!r}")
    view = neighborhood(graph, args.entity, hops=args.hops)
    name = f"neighborhood_{_slug(args.doc)}_{_slug(args.entity)}.dot"
    ws.write_text(name, to_dot(view, name=f"{args.doc}:{args.entity}"))
    print(f"{view.n_nodes} nodes, {view.edge_count} edges within {args.hops} hops")
    return 0


def cmd_transform(args, ws: Workspace) -> int:
    corpus = _read_corpus(args)
    graphs = _graphs(args, corpus)
    if not (args.collapse_of or args.explicate_hierarchy or args.relabel_table):
        raise UsageError(
            "nothing to do: pass --collapse-of, --explicate-hierarchy, and/or --relabel-table"
        )
    lex = load_lexicons(args.lexicon_dir)
    hierarchy = HierarchyLexicon.load(args.hierarchy_lexicon)
    table = RelabelTable.load_tsv(args.relabel_table) if args.relabel_table else None
    transformed_lines = []
    edit_lines = []
    suggestion_rows = []
    for doc_id in sorted(graphs):
        graph = graphs[doc_id]
        before = graph
        edits = []
        if args.explicate_hierarchy:
            graph, hierarchy_edits = explicate_hierarchy(graph, hierarchy, lex)
            edits.extend(hierarchy_edits)
        if args.collapse_of:
            while True:
                of_edges = sorted(
                    (graph.nodes[h], graph.nodes[t])
                    for (h, t), labels in graph.edges.items()
                    if ATTRIBUTE_LABEL in labels
                )
                if not of_edges:
                    break
                head, tail = of_edges[0]
                graph, edit = collapse_attribute(graph, head, tail, lex)
                edits.append(edit)
        if table is not None:
            graph, relabel_edits, suggestions = suggest_relabels(graph, table)
            edits.extend(relabel_edits)
            for suggestion in suggestions:
                suggestion_rows.append(
                    [doc_id, suggestion.head, suggestion.label, suggestion.tail]
                )
        transformed_lines.append(graph_to_json(graph))
        for edit in edits:
            edit_lines.append(
                json.dumps(
                    {"doc_id": doc_id, "edit": json.loads(edit.to_json())},
                    ensure_ascii=False,
                    sort_keys=True,
                )
            )
        if args.dot:
            ws.write_text(f"dot/{_slug(doc_id)}_before.dot", to_dot(before))
            ws.write_text(f"dot/{_slug(doc_id)}_after.dot", to_dot(graph))
    ws.write_jsonl("transformed.jsonl", transformed_lines)
    ws.write_jsonl("edits.jsonl", edit_lines)
    if table is not None:
        ws.write_csv(
            "relabel_suggestions.csv",
            ["doc_id", "head", "label", "tail"],
            suggestion_rows,
        )
    print(f"transformed {len(graphs)} documents with {len(edit_lines)} edits")
    return 0


def cmd_export(args, ws: Workspace) -> int:
    corpus = _read_corpus(args)
    graphs = _graphs(args, corpus)
    ws.write_jsonl(
        "graphs.jsonl", (graph_to_json(graphs[d]) for d in sorted(graphs))
    )
    if args.dot:
        for doc_id in sorted(graphs):
            ws.write_text(f"dot/{_slug(doc_id)}.dot", to_dot(graphs[doc_id]))
    print(f"exported {len(graphs)} graphs")
    return 0


def cmd_oracle(args, ws: Workspace | None) -> int:
    space = enumerate_all_patterns(args.size)
    collisions = space.collisions
    print(f"k={args.size}: {space.connected_labeled} connected labeled digraphs")
    print(f"k={args.size}: {space.isomorphism_class_count} isomorphism classes")
    print(f"{space.signature_count} signatures, {len(collisions)} collisions")
    for signature, n_classes in collisions.items():
        print(f"  collision: {signature} covers {n_classes} isomorphism classes")
    # Brute-force cross-check of the streaming enumeration on random graphs.
    rng = random.Random(args.seed)
    checked = 0
    for _ in range(args.check_graphs):
        n = rng.randint(4, 10)
        node_list = list(range(n))
        graph = DocGraph(doc_id="check", nodes=[f"n{i}" for i in node_list])
        for _ in range(rng.randint(n, 2 * n)):
            h, t = rng.sample(node_list, 2)
            graph.edges.setdefault((h, t), set()).add("x")
        streamed = set(enumerate_3node(graph))
        if args.size == 4:
            streamed = set(enumerate_4node(graph, None, exhaustive=True))
        oracle = brute_force_connected_sets(graph, args.size)
        if streamed != oracle:
            print("enumeration mismatch against brute force", file=sys.stderr)
            return 1
        checked += 1
    print(f"enumeration check: OK ({checked} random graphs)")
    if ws is not None:
        ws.write_json(
            f"oracle_k{args.size}.json",
            {
                "k": args.size,
                "connected_labeled_digraphs": space.connected_labeled,
                "signatures": space.signature_count,
                "isomorphism_classes": space.isomorphism_class_count,
                "collisions": collisions,
            },
        )
        if collisions:
            ws.write_csv(
                f"oracle_k{args.size}_collisions.csv",
                ["signature", "isomorphism_classes"],
                [[sig, n] for sig, n in collisions.items()],
            )
    return 0


# --------------------------------------------------------------------------
# argument parsing


def _add_io(parser, needs_input=True):
    if needs_input:
        parser.add_argument(
            "--input", "-i", nargs="+", required=True, help="fact file(s), TSV or JSONL"
        )
        parser.add_argument(
            "--on-error",
            choices=("abort", "skip"),
            default="abort",
            help="policy for malformed records (default: abort)",
        )
        parser.add_argument(
            "--min-fact-freq",
            type=int,
            default=1,
            help="keep only facts whose triple occurs at least this often corpus-wide",
        )
    parser.add_argument("--out", "-o", required=True, help="output directory")
    parser.add_argument("--lexicon-dir", default=None, help="override bundled word lists")


def _add_retention(parser):
    parser.add_argument(
        "--retention",
        choices=("corpus", "fixed"),
        default="corpus",
        help="retention words: computed from the corpus, or the bundled fixed entity list",
    )
    parser.add_argument(
        "--top-n", type=int, default=30, help="size of the corpus-computed retention list"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="designkg",
        description="Knowledge-graph analytics over pre-extracted facts.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="normalize fact files into corpus.jsonl")
    _add_io(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("stats", help="corpus and per-document summary counts")
    _add_io(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("zipf", help="fit a Zipf distribution to term frequencies")
    _add_io(p)
    p.add_argument(
        "--field",
        choices=("entities", "relationships", "entity-syntaxes", "relationship-syntaxes"),
        default="entities",
    )
    p.add_argument("--top-k", type=int, default=30, help="terms listed per CDF bucket")
    _add_retention(p)
    p.set_defaults(func=cmd_zipf)

    p = sub.add_parser("syntax", help="convert surfaces to linguistic syntaxes")
    _add_io(p)
    p.add_argument("--field", choices=("entities", "relationships"), default="entities")
    p.add_argument("--hierarchy-lexicon", default=None, help="pattern file override")
    _add_retention(p)
    p.set_defaults(func=cmd_syntax)

    p = sub.add_parser("mine", help="count connected k-node subgraph patterns")
    _add_io(p)
    p.add_argument("--size", type=int, choices=(3, 4), default=3)
    p.add_argument("--seed-sigs", default=None, help="comma-separated 3-node seed signatures")
    p.add_argument("--exhaustive", action="store_true", help="ignore seeds; enumerate all")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("randomize", help="degree-preserving graph randomization")
    _add_io(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--target-perturbation", type=float, default=0.5)
    p.add_argument("--max-trades", type=int, default=30000)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_randomize)

    p = sub.add_parser("motifs", help="score pattern significance against nulls")
    _add_io(p)
    p.add_argument("--size", type=int, choices=(3, 4), default=3)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--threshold", type=float, default=1.64)
    p.add_argument("--target-perturbation", type=float, default=0.5)
    p.add_argument("--max-trades", type=int, default=30000)
    p.add_argument("--exhaustive", action="store_true",
                   help="size 4: extend from all triples, not only significant ones")
    p.add_argument("--drop-absent", action="store_true",
                   help="exclude documents where a signature never occurs from mu/sigma")
    p.add_argument("--ensemble", type=int, default=0,
                   help="also compute classic z-scores over this many null graphs")
    p.add_argument("--class-map", default=None, help="TSV doc_id<TAB>class for rollups")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_motifs)

    p = sub.add_parser("subgraphs", help="group subgraphs by canonical labeled form")
    _add_io(p)
    p.add_argument("--size", type=int, choices=(3, 4), default=3)
    p.add_argument("--signatures", default=None, help="comma-separated signatures (default: top 3)")
    p.add_argument("--mode", choices=("rel-only", "rel-entity-syntax"), default="rel-only")
    p.add_argument("--top-k", type=int, default=3, help="forms listed per CDF bucket")
    p.add_argument("--jobs", type=int, default=1)
    _add_retention(p)
    p.set_defaults(func=cmd_subgraphs)

    p = sub.add_parser("neighborhood", help="DOT export of an entity's neighborhood")
    _add_io(p)
    p.add_argument("--doc", required=True)
    p.add_argument("--entity", required=True)
    p.add_argument("--hops", type=int, default=1)
    p.set_defaults(func=cmd_neighborhood)

    p = sub.add_parser("transform", help="apply graph-rewrite precepts")
    _add_io(p)
    p.add_argument("--collapse-of", action="store_true",
                   help="collapse every attribute ('of') edge into a compound entity")
    p.add_argument("--explicate-hierarchy", action="store_true")
    p.add_argument("--relabel-table", default=None,
                   help="TSV relationship<TAB>head_syntax?<TAB>tail_syntax?<TAB>replacement")
    p.add_argument("--hierarchy-lexicon", default=None)
    p.add_argument("--dot", action="store_true", help="write before/after DOT pairs")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("export", help="write graphs as JSONL (optionally DOT)")
    _add_io(p)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("oracle", help="validate the pattern space and enumeration")
    p.add_argument("--size", type=int, choices=(3, 4), default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check-graphs", type=int, default=50)
    p.add_argument("--out", "-o", default=None, help="optional output directory")
    p.set_defaults(func=cmd_oracle, needs_ws=False)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    ws = None
    try:
        if args.command == "oracle":
            ws = Workspace(args.out) if args.out else None
            return cmd_oracle(args, ws)
        ws = Workspace(args.out)
        started = time.monotonic()
        code = args.func(args, ws)
        if code == 0:
            print(f"[{args.command}] done in {time.monotonic() - started:.2f}s", file=sys.stderr)
        return code
    except (UsageError, ValueError, KeyError) as exc:
        if ws is not None:
            ws.discard()
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
