"""Word-list lexicons bundled with the package.

All lists are plain newline-delimited UTF-8 files with ``#`` comments. A
custom directory can be supplied explicitly or through the
``DESIGNKG_LEXICON_DIR`` environment variable; files missing from the custom
directory fall back to the bundled defaults.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

DATA_DIR = Path(__file__).parent / "data"
LEXICON_DIR_ENV = "DESIGNKG_LEXICON_DIR"


def load_word_list(path: str | Path) -> tuple[str, ...]:
    """Read a word list, skipping blanks and ``#`` comments."""
    words = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            words.append(line.casefold())
    return tuple(words)


@dataclass(frozen=True)
class Lexicons:
    """Closed-class word lists used for tagging and retention."""

    determiners: frozenset[str]
    prepositions: frozenset[str]
    pronouns: frozenset[str]
    conjunctions: frozenset[str]
    plural_exceptions: frozenset[str]
    entity_top_words: tuple[str, ...]


def _resolve(name: str, directory: Path | None) -> Path:
    if directory is not None:
        candidate = directory / name
        if candidate.exists():
            return candidate
    return DATA_DIR / name


def load_lexicons(directory: str | Path | None = None) -> Lexicons:
    """Load all lexicons, honouring the directory override if given."""
    if directory is None:
        env = os.environ.get(LEXICON_DIR_ENV)
        directory = Path(env) if env else None
    else:
        directory = Path(directory)
    return Lexicons(
        determiners=frozenset(load_word_list(_resolve("determiners.txt", directory))),
        prepositions=frozenset(load_word_list(_resolve("prepositions.txt", directory))),
        pronouns=frozenset(load_word_list(_resolve("pronouns.txt", directory))),
        conjunctions=frozenset(load_word_list(_resolve("conjunctions.txt", directory))),
        plural_exceptions=frozenset(
            load_word_list(_resolve("plural_exceptions.txt", directory))
        ),
        entity_top_words=load_word_list(_resolve("entity_top_words.txt", directory)),
    )


@lru_cache(maxsize=1)
def default_lexicons() -> Lexicons:
    """Bundled lexicons, ignoring any environment override."""
    return Lexicons(
        determiners=frozenset(load_word_list(DATA_DIR / "determiners.txt")),
        prepositions=frozenset(load_word_list(DATA_DIR / "prepositions.txt")),
        pronouns=frozenset(load_word_list(DATA_DIR / "pronouns.txt")),
        conjunctions=frozenset(load_word_list(DATA_DIR / "conjunctions.txt")),
        plural_exceptions=frozenset(load_word_list(DATA_DIR / "plural_exceptions.txt")),
        entity_top_words=load_word_list(DATA_DIR / "entity_top_words.txt"),
    )
