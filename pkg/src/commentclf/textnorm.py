"""Comment-sentence normalisation.

Stages run in this fixed order:

1. strip surrounding whitespace
2. expand contractions
3. replace every non-alphanumeric character with a space
4. split on whitespace, dropping one-character tokens
5. lowercase
6. drop stopwords
7. Porter-stem
8. all-digit tokens become ``NUM``
9. an empty result becomes ``EMT``

Because stage 4 precedes stage 8 a lone digit ("3") is dropped and never
turns into ``NUM``.  The sentinel strings themselves pass through stages
5 to 7 unchanged, so normalised text can be fed through again.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping

from nltk.stem.porter import PorterStemmer

# Porter's own reference implementation (words of <= 2 letters are left
# alone); nltk's default mode adds extra irregular-form rules on top.
_stemmer = PorterStemmer(mode=PorterStemmer.MARTIN_EXTENSIONS)

_APOSTROPHES = str.maketrans({"’": "'", "‘": "'", "ʼ": "'"})
_NON_ALNUM = re.compile(r"[\W_]+")
_DIGITS = re.compile(r"\d+")


def _read_data(name: str) -> str:
    return resources.files("commentclf").joinpath("data", name).read_text(encoding="utf-8")


def parse_stopwords(text: str) -> frozenset[str]:
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


def parse_contractions(text: str) -> dict[str, str]:
    table = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        key, sep, expansion = line.partition("\t")
        if not sep:
            raise ValueError(f"contraction table line {lineno}: expected KEY<TAB>EXPANSION")
        table[key.strip().lower()] = expansion.strip()
    return table


@dataclass(frozen=True)
class NormalizerConfig:
    contraction_table: Mapping[str, str]
    stopword_set: frozenset[str]
    sentinel_num: str = "NUM"
    sentinel_empty: str = "EMT"
    _pattern: re.Pattern | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.stopword_set:
            raise ValueError("stopword_set must not be empty")
        if any(w != w.lower() for w in self.stopword_set):
            raise ValueError("stopwords must be lowercase")
        table = {k.lower(): v for k, v in self.contraction_table.items()}
        object.__setattr__(self, "contraction_table", table)
        object.__setattr__(self, "stopword_set", frozenset(self.stopword_set))
        object.__setattr__(self, "_pattern", _compile_contractions(table))

    @classmethod
    def from_files(cls, stopwords: str | Path | None = None, contractions: str | Path | None = None):
        sw = Path(stopwords).read_text(encoding="utf-8") if stopwords else _read_data("stopwords.txt")
        ct = (
            Path(contractions).read_text(encoding="utf-8")
            if contractions
            else _read_data("contractions.tsv")
        )
        return cls(parse_contractions(ct), parse_stopwords(sw))

    @property
    def sentinels(self) -> tuple[str, str]:
        return (self.sentinel_num, self.sentinel_empty)

    def to_dict(self) -> dict:
        return {
            "contraction_table": dict(sorted(self.contraction_table.items())),
            "stopword_set": sorted(self.stopword_set),
            "sentinel_num": self.sentinel_num,
            "sentinel_empty": self.sentinel_empty,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "NormalizerConfig":
        return cls(
            dict(d["contraction_table"]),
            frozenset(d["stopword_set"]),
            d.get("sentinel_num", "NUM"),
            d.get("sentinel_empty", "EMT"),
        )


def _compile_contractions(table: Mapping[str, str]) -> re.Pattern | None:
    if not table:
        return None
    # longest key first so "can't've" wins over "can't"
    keys = sorted(table, key=lambda k: (-len(k), k))
    alternation = "|".join(re.escape(k) for k in keys)
    return re.compile(rf"(?<![\w'])(?:{alternation})(?![\w'])", re.IGNORECASE)


@lru_cache(maxsize=1)
def default_config() -> NormalizerConfig:
    return NormalizerConfig.from_files()


def expand_contractions(text: str, table: Mapping[str, str] | NormalizerConfig) -> str:
    """Replace whole-token contractions; a capitalised key yields a capitalised expansion."""
    if isinstance(table, NormalizerConfig):
        pattern, lookup = table._pattern, table.contraction_table
    else:
        lookup = {k.lower(): v for k, v in table.items()}
        pattern = _compile_contractions(lookup)
    if pattern is None:
        return text

    def repl(m: re.Match) -> str:
        word = m.group(0)
        expansion = lookup[word.lower()]
        if word[0].isupper() and expansion:
            expansion = expansion[0].upper() + expansion[1:]
        return expansion

    return pattern.sub(repl, text.translate(_APOSTROPHES))


def stem(token: str, sentinels: tuple[str, ...] = ("NUM", "EMT")) -> str:
    if token in sentinels:
        return token
    return _stemmer.stem(token)


def normalize_tokens(sentence: str, config: NormalizerConfig | None = None) -> list[str]:
    cfg = config or default_config()
    sentinels = cfg.sentinels
    text = sentence.strip()
    text = expand_contractions(text, cfg)
    text = _NON_ALNUM.sub(" ", text)
    tokens = [t for t in text.split() if len(t) > 1]
    tokens = [t if t in sentinels else t.lower() for t in tokens]
    tokens = [t for t in tokens if t in sentinels or t not in cfg.stopword_set]
    tokens = [stem(t, sentinels) for t in tokens]
    tokens = [cfg.sentinel_num if _DIGITS.fullmatch(t) else t for t in tokens]
    return tokens or [cfg.sentinel_empty]


def normalize(sentence: str, config: NormalizerConfig | None = None) -> str:
    """Normalise one comment sentence to space-joined tokens.

    >>> normalize("  I'm running 30 tests!  ")
    'run NUM test'
    >>> normalize("")
    'EMT'
    """
    return " ".join(normalize_tokens(sentence, config))
