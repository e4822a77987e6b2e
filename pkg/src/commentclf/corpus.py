"""Loading the labelled comment-sentence table and slicing it per category."""
from __future__ import annotations

import csv
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .errors import DomainError, ParseError, SchemaError

log = logging.getLogger(__name__)

LANGUAGES = ("Java", "Pharo", "Python")

CATEGORIES: dict[str, tuple[str, ...]] = {
    "Java": ("summary", "pointer", "deprecation", "rational", "ownership", "usage", "expand"),
    "Pharo": (
        "key messages",
        "intent",
        "class references",
        "example",
        "key implementation points",
        "responsibilities",
        "collaborators",
    ),
    "Python": ("summary", "parameters", "usage", "development notes", "expand"),
}

DEFAULT_SCHEMA = {
    "sentence": "comment_sentence",
    "category": "category",
    "membership": "instance_type",
    "partition": "partition",
    "language": "language",
    "id": "comment_sentence_id",
}
# Columns that may be absent from a file without raising SchemaError.
_OPTIONAL_COLUMNS = ("language", "id")

_PARTITIONS = {"0": "Train", "1": "Test", "train": "Train", "test": "Test"}


def _category_key(name: str) -> str:
    # Distribution files spell "key messages" as "Keymessages", so spaces,
    # underscores and hyphens are ignored along with case.
    return re.sub(r"[\s_\-]+", "", name.strip().lower())


def canonical_language(name: str) -> str:
    key = name.strip().lower()
    for lang in LANGUAGES:
        if lang.lower() == key:
            return lang
    raise DomainError(f"unknown language {name!r}; expected one of {', '.join(LANGUAGES)}")


def canonical_category(language: str, name: str) -> str:
    language = canonical_language(language)
    key = _category_key(name)
    for cat in CATEGORIES[language]:
        if _category_key(cat) == key:
            return cat
    raise DomainError(
        f"{name!r} is not a {language} category; valid names: {', '.join(CATEGORIES[language])}"
    )


@dataclass(frozen=True)
class CommentRecord:
    sentence: str
    language: str
    category: str
    is_member: int
    partition: str  # "Train" or "Test"
    row_id: str = ""


@dataclass(frozen=True)
class CategoryDataset:
    language: str
    category: str
    train: tuple[tuple[str, int], ...] = ()
    test: tuple[tuple[str, int], ...] = ()
    train_ids: tuple[str, ...] = field(default=(), repr=False)
    test_ids: tuple[str, ...] = field(default=(), repr=False)

    @property
    def train_sentences(self) -> list[str]:
        return [s for s, _ in self.train]

    @property
    def train_labels(self) -> list[int]:
        return [y for _, y in self.train]

    @property
    def test_sentences(self) -> list[str]:
        return [s for s, _ in self.test]

    @property
    def test_labels(self) -> list[int]:
        return [y for _, y in self.test]


def load_dataset(
    path: str | Path,
    schema: Mapping[str, str] | None = None,
    language: str | None = None,
) -> list[CommentRecord]:
    """Read a comment CSV into records, in file order.

    ``schema`` maps the logical roles (sentence, category, membership,
    partition, language, id) to header names; missing keys fall back to
    :data:`DEFAULT_SCHEMA`.  A file without a language column needs
    ``language`` to be given.  Data rows are numbered from 1 in error
    messages (the header is not counted).
    """
    cols = {**DEFAULT_SCHEMA, **(schema or {})}
    path = Path(path)
    with path.open(newline="", encoding="utf-8-sig") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for role, name in cols.items():
            if role not in _OPTIONAL_COLUMNS and name not in header:
                raise SchemaError(f"{path}: missing column {name!r} (role {role!r})")
        has_lang = cols["language"] in header
        if not has_lang and language is None:
            raise SchemaError(
                f"{path}: no {cols['language']!r} column; pass the language explicitly"
            )
        fixed_lang = canonical_language(language) if language is not None else None
        has_id = cols["id"] in header

        records = []
        for rowno, row in enumerate(reader, start=1):
            member = (row[cols["membership"]] or "").strip()
            if member not in ("0", "1"):
                raise ParseError(
                    f"{path}: row {rowno}: membership value {member!r} is not 0 or 1"
                )
            part = (row[cols["partition"]] or "").strip().lower()
            if part not in _PARTITIONS:
                raise ParseError(f"{path}: row {rowno}: unknown partition {part!r}")
            lang = fixed_lang
            if has_lang and row[cols["language"]]:
                try:
                    lang = canonical_language(row[cols["language"]])
                except DomainError as exc:
                    raise ParseError(f"{path}: row {rowno}: {exc}") from None
            if lang is None:
                raise ParseError(f"{path}: row {rowno}: empty language cell")
            try:
                cat = canonical_category(lang, row[cols["category"]] or "")
            except DomainError as exc:
                raise ParseError(f"{path}: row {rowno}: {exc}") from None
            records.append(
                CommentRecord(
                    sentence=row[cols["sentence"]] or "",
                    language=lang,
                    category=cat,
                    is_member=int(member),
                    partition=_PARTITIONS[part],
                    row_id=(row[cols["id"]] if has_id else "") or str(rowno),
                )
            )
    log.info("loaded %d records from %s", len(records), path)
    return records


def filter_category(
    records: Iterable[CommentRecord], language: str, category: str
) -> CategoryDataset:
    lang = canonical_language(language)
    cat = canonical_category(lang, category)
    train, test, train_ids, test_ids = [], [], [], []
    for rec in records:
        if rec.language != lang or rec.category != cat:
            continue
        if rec.partition == "Train":
            train.append((rec.sentence, rec.is_member))
            train_ids.append(rec.row_id)
        else:
            test.append((rec.sentence, rec.is_member))
            test_ids.append(rec.row_id)
    return CategoryDataset(lang, cat, tuple(train), tuple(test), tuple(train_ids), tuple(test_ids))


def list_categories(records: Iterable[CommentRecord]) -> dict[str, list[str]]:
    """Distinct categories per language, in order of first appearance."""
    seen: dict[str, list[str]] = {}
    for rec in records:
        cats = seen.setdefault(rec.language, [])
        if rec.category not in cats:
            cats.append(rec.category)
    return seen


def sample_dataset_path() -> Path:
    """The bundled 200-row synthetic dataset (Java and Python, language column included)."""
    from importlib import resources

    return Path(str(resources.files("commentclf").joinpath("data", "sample_comments.csv")))
