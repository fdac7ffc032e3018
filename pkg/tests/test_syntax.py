import pytest

from designkg.facts import TokenSpan, load_corpus
from designkg.lexicons import default_lexicons
from designkg.syntax import (
    EmptyCorpus,
    HierarchyLexicon,
    MissingPos,
    corpus_syntaxes,
    match_hierarchy,
    to_syntax,
    top_frequent_words,
)

FIXED_ENTITY_WORDS = [
    "the", "a", "an", "first", "one", "data", "second", "device", "or",
    "system", "said", "and", "other", "each", "portion", "information",
    "surface", "more", "signal", "invention", "layer", "method", "user",
    "control", "any", "at", "least", "material", "end", "unit",
]


class TestRetention:
    def test_fixed_list_contents(self):
        retain = top_frequent_words(load_corpus([]), "entities", fixed_list=True)
        lex = default_lexicons()
        assert len(lex.entity_top_words) == 30
        for word in FIXED_ENTITY_WORDS:
            assert word in retain
        # pronouns and prepositions ride along
        assert "all" in retain and "of" in retain and "within" in retain
        assert "shake" not in retain

    def test_corpus_top_word(self):
        corpus = load_corpus(["D1\t0\ta shake\tof\ta box"])
        retain = top_frequent_words(corpus, "entities", n=1)
        assert "a" in retain
        assert "shake" not in retain and "box" not in retain

    def test_n_zero_keeps_lexicons_only(self):
        corpus = load_corpus(["D1\t0\ta shake\tof\ta box"])
        retain = top_frequent_words(corpus, "entities", n=0)
        lex = default_lexicons()
        assert retain.words == frozenset(lex.pronouns) | frozenset(lex.prepositions)
        assert "a" not in retain

    def test_relationship_field_counts_rel_tokens(self):
        corpus = load_corpus(["D1\t0\tx\tconnected to\ty", "D1\t1\tx\tconnected to\tz"])
        retain = top_frequent_words(corpus, "relationships", n=1)
        assert "connected" in retain

    def test_empty_corpus_raises(self):
        with pytest.raises(EmptyCorpus):
            top_frequent_words(load_corpus([]), "entities", n=30)

    def test_fixed_list_is_entity_only(self):
        with pytest.raises(ValueError):
            top_frequent_words(load_corpus([]), "relationships", fixed_list=True)


class TestToSyntax:
    @pytest.fixture
    def retain(self):
        return top_frequent_words(load_corpus([]), "entities", fixed_list=True)

    @pytest.mark.parametrize(
        "text,pos,expected",
        [
            ("a shake", ["DT", "NN"], "a NN"),
            ("the cured spar assembly", ["DT", "JJ", "NNP", "NNP"], "the JJ NNP NNP"),
            ("the spectrometer field", ["DT", "JJ", "NN"], "the JJ NN"),
            ("all three erase blocks", ["DT", "CD", "NN", "NNS"], "all CD NN NNS"),
            ("the main antenna signal", ["DT", "JJ", "NN", "NN"], "the JJ NN signal"),
        ],
    )
    def test_reference_rows(self, retain, text, pos, expected):
        span = TokenSpan.from_text(text, pos)
        assert to_syntax(span, retain).text == expected

    def test_identity_when_all_retained(self, retain):
        span = TokenSpan.from_text("the first surface", ["DT", "JJ", "NN"])
        assert to_syntax(span, retain).text == "the first surface"

    def test_length_preserved(self, retain):
        span = TokenSpan.from_text("a very unusual contraption", ["DT", "RB", "JJ", "NN"])
        assert len(to_syntax(span, retain).tokens) == len(span.tokens)

    def test_missing_pos(self, retain):
        with pytest.raises(MissingPos):
            to_syntax(TokenSpan.from_text("a shake"), retain)

    def test_single_syntax_per_surface(self, retain):
        span = TokenSpan.from_text("a shake", ["DT", "NN"])
        assert to_syntax(span, retain) == to_syntax(span, retain)


class TestHierarchyLexicon:
    @pytest.fixture(scope="class")
    def lex(self):
        return HierarchyLexicon.load()

    @pytest.mark.parametrize(
        "rel,pattern",
        [
            ("includes", "includ*"),
            ("comprising", "compris*"),
            ("consisting of", "consist* of"),
            ("not include", "not includ*"),
            ("is part of", "is part of"),
            ("comprising administering", "compris* VBG"),
            ("wherein", "wherein"),
        ],
    )
    def test_matches(self, lex, rel, pattern):
        assert match_hierarchy(TokenSpan.from_text(rel), lex) == pattern

    @pytest.mark.parametrize("rel", ["connected to", "of", "mounted on", "to"])
    def test_rejections(self, lex, rel):
        assert match_hierarchy(TokenSpan.from_text(rel), lex) is None

    def test_negation_never_falls_through_to_bare_pattern(self, lex):
        # Token counts must agree, so a two-token negation cannot be
        # swallowed by the one-token wildcard.
        assert match_hierarchy(TokenSpan.from_text("not include"), lex) == "not includ*"

    def test_placeholder_uses_supplied_tags(self, lex):
        span = TokenSpan.from_text("comprising administering", ["VBG", "VBG"])
        assert match_hierarchy(span, lex) == "compris* VBG"

    def test_custom_file(self, tmp_path):
        path = tmp_path / "patterns.txt"
        path.write_text("# demo\nmade of\npart*\n", encoding="utf-8")
        lex = HierarchyLexicon.load(path)
        assert match_hierarchy(TokenSpan.from_text("made of"), lex) == "made of"
        assert match_hierarchy(TokenSpan.from_text("parts"), lex) == "part*"

    def test_longest_first_ordering(self):
        lex = HierarchyLexicon(patterns=("includ*", "includ* includ*"))
        ordered = lex.ordered()
        assert ordered[0] == "includ* includ*"


class TestCorpusSyntaxes:
    def test_counts_and_representative_pos(self):
        lines = [
            "D1\t0\ta shake\tof\ta box",
            '{"doc_id": "D1", "sentence_id": 1, "head": {"text": "a shake", "pos": ["DT", "VB"]}, "rel": {"text": "of"}, "tail": {"text": "a box"}}',
        ]
        corpus = load_corpus(lines)
        retain = top_frequent_words(load_corpus([]), "entities", fixed_list=True)
        rows = {surface: syntax for surface, syntax, _ in corpus_syntaxes(corpus, "entities", retain)}
        # The tagged occurrence supplies the span even though it came second.
        assert rows["a shake"] == "a VB"
        assert rows["a box"] == "a NN"
