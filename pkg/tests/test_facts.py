import json

import pytest
from hypothesis import given, strategies as st

from designkg.facts import (
    Fact,
    MalformedRecord,
    TokenSpan,
    load_corpus,
    parse_fact_record,
    serialize_fact,
    tag_tokens,
)

from conftest import WORKED_LINES


class TestParse:
    def test_tsv_record_is_case_folded(self):
        fact = parse_fact_record(
            "US4358411\t4\ta temperature\tof\tat least 100° C."
        )
        assert fact.doc_id == "US4358411"
        assert fact.sentence_id == 4
        assert fact.head.text == "a temperature"
        assert fact.rel.text == "of"
        assert fact.tail.text == "at least 100° c."
        assert fact.tail.tokens == ("at", "least", "100°", "c.")
        assert fact.head.pos is None

    def test_jsonl_pos_passthrough(self):
        record = json.dumps(
            {
                "doc_id": "D1",
                "sentence_id": 0,
                "head": {"text": "a shake", "pos": ["DT", "NN"]},
                "rel": {"text": "of"},
                "tail": {"text": "a box", "pos": ["DT", "NN"]},
            }
        )
        fact = parse_fact_record(record)
        assert fact.head.pos == ("DT", "NN")
        assert fact.rel.pos is None

    def test_tsv_three_fields_rejected(self):
        with pytest.raises(MalformedRecord):
            parse_fact_record("D1\t0\tonly three")

    def test_pos_length_mismatch_rejected(self):
        record = json.dumps(
            {
                "doc_id": "D1",
                "sentence_id": 0,
                "head": {"text": "a shake", "pos": ["DT"]},
                "rel": {"text": "of"},
                "tail": {"text": "a box"},
            }
        )
        with pytest.raises(MalformedRecord):
            parse_fact_record(record)

    def test_missing_field_rejected(self):
        with pytest.raises(MalformedRecord):
            parse_fact_record('{"doc_id": "D1", "sentence_id": 0}')

    def test_empty_entity_rejected(self):
        with pytest.raises(MalformedRecord):
            parse_fact_record("D1\t0\t  \tof\ttail")

    def test_whitespace_normalization(self):
        fact = parse_fact_record("D1\t0\t a   b \tof\tc")
        assert fact.head.text == "a b"


class TestRoundTrip:
    words = st.text(alphabet="abcdefgh 0123456789°.", min_size=1).filter(
        lambda s: s.split()
    )

    @given(head=words, rel=words, tail=words, sent=st.integers(0, 99))
    def test_serialize_parse_identity(self, head, rel, tail, sent):
        fact = Fact(
            doc_id="D1",
            sentence_id=sent,
            head=TokenSpan.from_text(head.casefold()),
            rel=TokenSpan.from_text(rel.casefold()),
            tail=TokenSpan.from_text(tail.casefold()),
        )
        assert parse_fact_record(serialize_fact(fact)) == fact

    def test_round_trip_with_pos(self):
        fact = parse_fact_record(
            json.dumps(
                {
                    "doc_id": "D9",
                    "sentence_id": 3,
                    "head": {"text": "The Main Antenna Signal", "pos": ["DT", "JJ", "NN", "NN"]},
                    "rel": {"text": "of"},
                    "tail": {"text": "x"},
                }
            )
        )
        assert parse_fact_record(serialize_fact(fact)) == fact
        assert fact.head.text == "the main antenna signal"


class TestLoadCorpus:
    def test_worked_example_counts(self, worked_corpus):
        # Hand count of the six facts: relationships dedupe to
        # {wherein, is carried out at, of, is carried out under}.
        assert worked_corpus.summary() == {
            "documents": 1,
            "sentences_with_facts": 1,
            "facts": 6,
            "unique_entities": 7,
            "unique_relationships": 4,
            "unique_facts": 6,
        }
        assert worked_corpus.entity_freq["the reaction"] == 3
        assert worked_corpus.rel_freq["of"] == 3

    def test_empty_stream(self):
        corpus = load_corpus([])
        assert corpus.summary() == {
            "documents": 0,
            "sentences_with_facts": 0,
            "facts": 0,
            "unique_entities": 0,
            "unique_relationships": 0,
            "unique_facts": 0,
        }

    def test_duplicate_facts_counted_not_dropped(self):
        line = "D1\t0\ta\tof\tb"
        corpus = load_corpus([line, line])
        assert corpus.n_facts == 2
        assert corpus.fact_freq[("a", "of", "b")] == 2
        assert corpus.n_unique_entities == 2
        assert corpus.n_unique_relationships == 1

    def test_abort_policy_reports_line_number(self):
        with pytest.raises(MalformedRecord, match="line 2"):
            load_corpus(["D1\t0\ta\tof\tb", "bad line"])

    def test_skip_policy_collects(self):
        corpus = load_corpus(["D1\t0\ta\tof\tb", "bad line"], on_error="skip")
        assert corpus.n_facts == 1
        assert corpus.skipped == [(2, "expected 5 TSV fields, got 1")]

    def test_frequency_tables_order_insensitive(self):
        forward = load_corpus(WORKED_LINES)
        backward = load_corpus(list(reversed(WORKED_LINES)))
        assert forward.entity_freq == backward.entity_freq
        assert forward.rel_freq == backward.rel_freq
        assert forward.fact_freq == backward.fact_freq

    def test_doc_index_partitions_facts(self):
        lines = [
            "D1\t0\ta\tof\tb",
            "D2\t0\tc\tof\td",
            "D1\t1\te\tof\tf",
        ]
        corpus = load_corpus(lines)
        seen = []
        for doc_id, facts in corpus.iter_documents():
            seen.extend(facts)
            assert all(f.doc_id == doc_id for f in facts)
        assert len(seen) == corpus.n_facts == 3


class TestFallbackTagger:
    def test_a_shake(self):
        assert tag_tokens(TokenSpan.from_text("a shake")).pos == ("DT", "NN")

    def test_single_determiner(self):
        assert tag_tokens(TokenSpan.from_text("the")).pos == ("DT",)

    def test_all_three_erase_blocks(self):
        span = tag_tokens(TokenSpan.from_text("all three erase blocks"))
        assert span.pos == ("DT", "CD", "NN", "NNS")

    def test_suffix_rules(self):
        span = tag_tokens(TokenSpan.from_text("rotating mounted quickly boxes"))
        assert span.pos == ("VBG", "VBN", "RB", "NNS")

    def test_closed_classes(self):
        span = tag_tokens(TokenSpan.from_text("of it and 42"))
        assert span.pos == ("IN", "PRP", "CC", "CD")

    def test_plural_exception_stays_nn(self):
        assert tag_tokens(TokenSpan.from_text("gas")).pos == ("NN",)

    def test_supplied_pos_wins(self):
        span = TokenSpan.from_text("a shake", pos=["XX", "YY"])
        assert tag_tokens(span).pos == ("XX", "YY")

    def test_deterministic(self):
        span = TokenSpan.from_text("a partial pressure of carbon monoxide")
        assert tag_tokens(span) == tag_tokens(span)

    @given(st.text(alphabet="abc defg", min_size=1).filter(lambda s: s.split()))
    def test_total_and_aligned(self, text):
        span = tag_tokens(TokenSpan.from_text(text))
        assert span.pos is not None
        assert len(span.pos) == len(span.tokens)
