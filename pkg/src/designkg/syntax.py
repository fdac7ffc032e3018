"""Generalizing entities and relationships to linguistic syntaxes.

A syntax keeps frequent/closed-class words verbatim and replaces everything
else with its POS tag, e.g. "the main antenna signal" becomes
"the JJ NN signal". Hierarchical relationships ("includes", "consisting of",
...) are recognized by a pattern lexicon over relationship syntaxes.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .facts import Corpus, TokenSpan, tag_tokens
from .lexicons import DATA_DIR, Lexicons, default_lexicons


class EmptyCorpus(ValueError):
    """Operation requires a corpus with at least one fact."""


class MissingPos(ValueError):
    """Span lacks POS tags where they are required."""


@dataclass(frozen=True)
class RetentionSet:
    """Words kept verbatim during syntax conversion."""

    words: frozenset[str]

    def __contains__(self, word: str) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class SyntaxString:
    """Token sequence mixing retained words and POS tags."""

    tokens: tuple[str, ...]

    @property
    def text(self) -> str:
        return " ".join(self.tokens)

    def __str__(self) -> str:
        return self.text


def top_frequent_words(
    corpus: Corpus,
    field: str = "entities",
    n: int = 30,
    lexicons: Lexicons | None = None,
    fixed_list: bool = False,
) -> RetentionSet:
    """Build a retention set for syntax conversion.

    The ``n`` most frequent word tokens across the chosen field (entity
    mentions, or relationship mentions) are merged with the pronoun and
    preposition lexicons. ``fixed_list=True`` substitutes the bundled
    reference list of 30 entity words instead of counting the corpus; it is
    only meaningful for entities.
    """
    if field not in ("entities", "relationships"):
        raise ValueError(f"field must be 'entities' or 'relationships', got {field!r}")
    lex = lexicons or default_lexicons()
    base = frozenset(lex.pronouns) | frozenset(lex.prepositions)
    if fixed_list:
        if field != "entities":
            raise ValueError("the fixed retention list applies to entities only")
        return RetentionSet(base | frozenset(lex.entity_top_words))
    if corpus.n_facts == 0:
        raise EmptyCorpus("cannot compute frequent words of an empty corpus")
    counts: Counter = Counter()
    for fact in corpus.facts:
        if field == "entities":
            counts.update(fact.head.tokens)
            counts.update(fact.tail.tokens)
        else:
            counts.update(fact.rel.tokens)
    top = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[: max(n, 0)]
    return RetentionSet(base | frozenset(w for w, _ in top))


def to_syntax(span: TokenSpan, retain: RetentionSet) -> SyntaxString:
    """Convert a tagged span to its syntax: retained word or POS tag per token."""
    if span.pos is None:
        raise MissingPos(f"span {span.text!r} has no POS tags")
    return SyntaxString(
        tuple(
            tok if tok in retain else tag for tok, tag in zip(span.tokens, span.pos)
        )
    )


def _is_placeholder(token: str) -> bool:
    return token.isupper() and token.isalpha()


@dataclass(frozen=True)
class HierarchyLexicon:
    """Ordered syntax patterns that identify hierarchical relationships.

    Pattern tokens are literals, prefix wildcards (``includ*``), or POS
    placeholders (``VBG``, ``VBN``, ``NN``, ``RB``). A pattern matches a
    relationship only when token counts agree; longer patterns are tried
    first so that e.g. "not includ*" wins over bare "includ*".
    """

    patterns: tuple[str, ...]

    @classmethod
    def load(cls, path: str | Path | None = None) -> "HierarchyLexicon":
        path = Path(path) if path is not None else DATA_DIR / "hierarchy_patterns.txt"
        patterns = []
        for raw in path.read_text(encoding="utf-8").splitlines():
            line = raw.split("#", 1)[0].strip()
            if line:
                patterns.append(line)
        if not patterns:
            raise ValueError(f"no patterns in {path}")
        return cls(tuple(patterns))

    def ordered(self) -> tuple[str, ...]:
        # Longest first; file order breaks ties (sort is stable).
        return tuple(
            sorted(self.patterns, key=lambda p: -len(p.split()))
        )

    def match(self, rel: TokenSpan, lexicons: Lexicons | None = None) -> str | None:
        """First pattern matching the relationship, or None.

        POS placeholders compare against supplied tags, falling back to the
        deterministic tagger when the span is untagged.
        """
        tagged: TokenSpan | None = None
        for pattern in self.ordered():
            parts = pattern.split()
            if len(parts) != len(rel.tokens):
                continue
            ok = True
            for i, part in enumerate(parts):
                token = rel.tokens[i]
                if _is_placeholder(part):
                    if tagged is None:
                        tagged = tag_tokens(rel, lexicons)
                    if tagged.pos[i] != part:
                        ok = False
                        break
                elif part.endswith("*"):
                    if not token.startswith(part[:-1]):
                        ok = False
                        break
                elif token != part:
                    ok = False
                    break
            if ok:
                return pattern
        return None


def match_hierarchy(
    rel: TokenSpan,
    lex: HierarchyLexicon,
    lexicons: Lexicons | None = None,
) -> str | None:
    """Match a relationship span against the hierarchy lexicon."""
    return lex.match(rel, lexicons)


def corpus_syntaxes(
    corpus: Corpus,
    field: str,
    retain: RetentionSet,
    lexicons: Lexicons | None = None,
) -> list[tuple[str, str, int]]:
    """(surface, syntax, count) for every unique term of the chosen field.

    The representative span per surface is the first occurrence carrying
    supplied POS tags, else the first occurrence fallback-tagged; rows are
    sorted by descending count, then surface.
    """
    if field not in ("entities", "relationships"):
        raise ValueError(f"field must be 'entities' or 'relationships', got {field!r}")
    spans: dict[str, TokenSpan] = {}
    counts: Counter = Counter()
    for fact in corpus.facts:
        if field == "entities":
            members = (fact.head, fact.tail)
        else:
            members = (fact.rel,)
        for span in members:
            counts[span.key] += 1
            known = spans.get(span.key)
            if known is None or (known.pos is None and span.pos is not None):
                spans[span.key] = span
    rows = []
    for surface, count in counts.items():
        span = tag_tokens(spans[surface], lexicons)
        rows.append((surface, to_syntax(span, retain).text, count))
    rows.sort(key=lambda row: (-row[2], row[0]))
    return rows
