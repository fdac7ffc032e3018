"""Fact records, corpus loading, and the fallback POS tagger.

A fact is one ``head :: relationship :: tail`` statement extracted from an
artefact description, carrying document/sentence provenance. Facts arrive
pre-extracted in TSV or JSONL form; this module parses them into immutable
records, groups them per document, and maintains frequency tables over
normalized surface strings.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Iterator

from .lexicons import Lexicons, default_lexicons


class MalformedRecord(ValueError):
    """A fact record that violates the TSV/JSONL schema."""


def normalize_text(text: str) -> str:
    """Collapse internal whitespace and strip the ends."""
    return " ".join(text.split())


def normalize_key(text: str) -> str:
    """Normalization used for frequency tables and graph node identity."""
    return normalize_text(text).casefold()


_CARDINAL_WORDS = frozenset(
    """zero one two three four five six seven eight nine ten eleven twelve
    thirteen fourteen fifteen sixteen seventeen eighteen nineteen twenty
    thirty forty fifty sixty seventy eighty ninety hundred thousand million
    billion""".split()
)
_CARDINAL_RE = re.compile(r"^\d")


@dataclass(frozen=True)
class TokenSpan:
    """A whitespace-normalized text span with lowercase tokens.

    ``pos`` holds Penn-Treebank tags aligned with ``tokens`` when known;
    tags supplied by the producer always take precedence over the fallback
    tagger.
    """

    text: str
    tokens: tuple[str, ...]
    pos: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if not self.tokens:
            raise MalformedRecord("empty token span")
        if self.pos is not None and len(self.pos) != len(self.tokens):
            raise MalformedRecord(
                f"pos length {len(self.pos)} != token length {len(self.tokens)}"
            )

    @classmethod
    def from_text(cls, text: str, pos: Iterable[str] | None = None) -> "TokenSpan":
        norm = normalize_text(text)
        tokens = tuple(t.casefold() for t in norm.split())
        return cls(norm, tokens, tuple(pos) if pos is not None else None)

    @property
    def key(self) -> str:
        return self.text.casefold()


@dataclass(frozen=True)
class Fact:
    """One (head, relationship, tail) triple with provenance."""

    doc_id: str
    sentence_id: int
    head: TokenSpan
    rel: TokenSpan
    tail: TokenSpan

    def __post_init__(self) -> None:
        if not self.doc_id:
            raise MalformedRecord("empty doc_id")
        if self.sentence_id < 0:
            raise MalformedRecord(f"negative sentence_id {self.sentence_id}")

    @property
    def triple_key(self) -> tuple[str, str, str]:
        return (self.head.key, self.rel.key, self.tail.key)


def _span_from_json(obj: object, field: str) -> TokenSpan:
    if not isinstance(obj, dict) or "text" not in obj:
        raise MalformedRecord(f"field {field!r} must be an object with 'text'")
    text = obj["text"]
    if not isinstance(text, str) or not text.strip():
        raise MalformedRecord(f"field {field!r} has empty text")
    pos = obj.get("pos")
    if pos is not None and (
        not isinstance(pos, list) or not all(isinstance(p, str) for p in pos)
    ):
        raise MalformedRecord(f"field {field!r} has a non-string pos array")
    # Text is case-folded on ingest; identity throughout the pipeline is
    # case-insensitive.
    return TokenSpan.from_text(text.casefold(), pos)


def parse_fact_record(record: str, fmt: str = "auto") -> Fact:
    """Parse one line of a fact file into a Fact.

    TSV records are ``doc_id<TAB>sentence_id<TAB>head<TAB>rel<TAB>tail``;
    JSONL records follow ``{"doc_id":..., "sentence_id":..., "head":
    {"text":..., "pos":[...]?}, "rel":..., "tail":...}``. ``fmt="auto"``
    treats lines starting with ``{`` as JSON.
    """
    record = record.rstrip("\n\r")
    if fmt == "auto":
        fmt = "jsonl" if record.lstrip().startswith("{") else "tsv"
    if fmt == "jsonl":
        try:
            obj = json.loads(record)
        except json.JSONDecodeError as exc:
            raise MalformedRecord(f"invalid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise MalformedRecord("JSON record is not an object")
        missing = {"doc_id", "sentence_id", "head", "rel", "tail"} - obj.keys()
        if missing:
            raise MalformedRecord(f"missing fields: {sorted(missing)}")
        if not isinstance(obj["sentence_id"], int):
            raise MalformedRecord("sentence_id must be an integer")
        return Fact(
            doc_id=str(obj["doc_id"]),
            sentence_id=obj["sentence_id"],
            head=_span_from_json(obj["head"], "head"),
            rel=_span_from_json(obj["rel"], "rel"),
            tail=_span_from_json(obj["tail"], "tail"),
        )
    if fmt != "tsv":
        raise ValueError(f"unknown format {fmt!r}")
    parts = record.split("\t")
    if len(parts) != 5:
        raise MalformedRecord(f"expected 5 TSV fields, got {len(parts)}")
    doc_id, sent, head, rel, tail = parts
    try:
        sentence_id = int(sent)
    except ValueError as exc:
        raise MalformedRecord(f"sentence_id {sent!r} is not an integer") from exc
    for name, value in (("head", head), ("rel", rel), ("tail", tail)):
        if not value.strip():
            raise MalformedRecord(f"empty {name} field")
    return Fact(
        doc_id=doc_id.strip(),
        sentence_id=sentence_id,
        head=TokenSpan.from_text(head.casefold()),
        rel=TokenSpan.from_text(rel.casefold()),
        tail=TokenSpan.from_text(tail.casefold()),
    )


def _span_to_json(span: TokenSpan) -> dict:
    obj: dict = {"text": span.text}
    if span.pos is not None:
        obj["pos"] = list(span.pos)
    return obj


def serialize_fact(fact: Fact) -> str:
    """One JSONL line; parse_fact_record on the result yields an equal Fact."""
    return json.dumps(
        {
            "doc_id": fact.doc_id,
            "sentence_id": fact.sentence_id,
            "head": _span_to_json(fact.head),
            "rel": _span_to_json(fact.rel),
            "tail": _span_to_json(fact.tail),
        },
        ensure_ascii=False,
        sort_keys=True,
    )


@dataclass
class Corpus:
    """All facts of a fact file, grouped by document.

    ``facts`` is stored grouped by document (documents in first-seen order,
    facts in input order within each document); ``doc_index`` maps each
    doc_id to its half-open index range. Frequency tables are keyed by
    normalized strings and count every occurrence, duplicates included.
    """

    facts: list[Fact]
    doc_index: dict[str, tuple[int, int]]
    entity_freq: Counter
    rel_freq: Counter
    fact_freq: Counter
    skipped: list[tuple[int, str]]

    @property
    def n_documents(self) -> int:
        return len(self.doc_index)

    @property
    def n_facts(self) -> int:
        return len(self.facts)

    @property
    def n_unique_entities(self) -> int:
        return len(self.entity_freq)

    @property
    def n_unique_relationships(self) -> int:
        return len(self.rel_freq)

    @property
    def n_sentences_with_facts(self) -> int:
        return len({(f.doc_id, f.sentence_id) for f in self.facts})

    def doc_facts(self, doc_id: str) -> list[Fact]:
        start, end = self.doc_index[doc_id]
        return self.facts[start:end]

    def iter_documents(self) -> Iterator[tuple[str, list[Fact]]]:
        for doc_id in self.doc_index:
            yield doc_id, self.doc_facts(doc_id)

    def summary(self) -> dict:
        return {
            "documents": self.n_documents,
            "sentences_with_facts": self.n_sentences_with_facts,
            "facts": self.n_facts,
            "unique_entities": self.n_unique_entities,
            "unique_relationships": self.n_unique_relationships,
            "unique_facts": len(self.fact_freq),
        }


def _iter_lines(source) -> Iterator[str]:
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as handle:
            yield from handle
    else:
        yield from source


def load_corpus(source: str | Path | IO | Iterable[str], on_error: str = "abort") -> Corpus:
    """Load a fact stream (path, file object, or iterable of lines).

    ``on_error="skip"`` records malformed lines in ``Corpus.skipped`` instead
    of raising. Frequency tables are insensitive to input line order.
    """
    if on_error not in ("abort", "skip"):
        raise ValueError(f"on_error must be 'abort' or 'skip', got {on_error!r}")
    per_doc: dict[str, list[Fact]] = {}
    skipped: list[tuple[int, str]] = []
    for line_no, line in enumerate(_iter_lines(source), start=1):
        if not line.strip():
            continue
        try:
            fact = parse_fact_record(line)
        except MalformedRecord as exc:
            if on_error == "abort":
                raise MalformedRecord(f"line {line_no}: {exc}") from exc
            skipped.append((line_no, str(exc)))
            continue
        per_doc.setdefault(fact.doc_id, []).append(fact)

    facts: list[Fact] = []
    doc_index: dict[str, tuple[int, int]] = {}
    entity_freq: Counter = Counter()
    rel_freq: Counter = Counter()
    fact_freq: Counter = Counter()
    for doc_id, doc_facts in per_doc.items():
        start = len(facts)
        facts.extend(doc_facts)
        doc_index[doc_id] = (start, len(facts))
        for fact in doc_facts:
            entity_freq[fact.head.key] += 1
            entity_freq[fact.tail.key] += 1
            rel_freq[fact.rel.key] += 1
            fact_freq[fact.triple_key] += 1
    return Corpus(facts, doc_index, entity_freq, rel_freq, fact_freq, skipped)


def _tag_word(word: str, cased: str, mid_span: bool, lex: Lexicons) -> str:
    if word in lex.determiners:
        return "DT"
    if word in lex.prepositions:
        return "IN"
    if word in lex.pronouns:
        return "PRP"
    if word in lex.conjunctions:
        return "CC"
    if word in _CARDINAL_WORDS or _CARDINAL_RE.match(word):
        return "CD"
    if word.endswith("ing") and len(word) > 4:
        return "VBG"
    if word.endswith("ed") and len(word) > 3:
        return "VBN"
    if word.endswith("ly") and len(word) > 3:
        return "RB"
    if (
        word.endswith("s")
        and not word.endswith("ss")
        and len(word) >= 3
        and word not in lex.plural_exceptions
    ):
        return "NNS"
    if mid_span and cased[:1].isupper():
        return "NNP"
    return "NN"


def tag_tokens(span: TokenSpan, lexicons: Lexicons | None = None) -> TokenSpan:
    """Fill in POS tags with the deterministic fallback tagger.

    Closed-class lexicons are consulted first (DT, IN, PRP, CC, CD), then
    suffix rules (-ing VBG, -ed VBN, -ly RB, plural NNS), then mid-span
    capitalization (NNP), defaulting to NN. Spans that already carry tags are
    returned unchanged. This is a documented approximation, not a statistical
    tagger.
    """
    if span.pos is not None:
        return span
    lex = lexicons or default_lexicons()
    cased = span.text.split()
    if len(cased) != len(span.tokens):  # defensive; from_text keeps these aligned
        cased = list(span.tokens)
    tags = tuple(
        _tag_word(word, cased[i], i > 0, lex) for i, word in enumerate(span.tokens)
    )
    return TokenSpan(span.text, span.tokens, tags)
