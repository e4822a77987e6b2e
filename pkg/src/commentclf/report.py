"""Comparison tables built from per-cell scores.

``report.csv``     categories x families F1 matrix, full precision, with a
                   best-family column and an average row.
``breakdown.csv``  precision / recall / F1 per category for the family with
                   the best average F1.
``report.md``      both tables rounded to 4 places (best values in bold),
                   plus deltas against the reference F1 values when the
                   run covers the reference categories.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources

from .corpus import CATEGORIES, LANGUAGES
from .learners import DISPLAY_NAMES, REPORT_ORDER, Family
from .metrics import ScoreTriple, round_half_up


@dataclass(frozen=True)
class CellScore:
    language: str
    category: str
    family: Family
    scores: ScoreTriple


def _category_rank(language: str, category: str) -> tuple:
    lang_i = LANGUAGES.index(language) if language in LANGUAGES else len(LANGUAGES)
    cats = CATEGORIES.get(language, ())
    cat_i = cats.index(category) if category in cats else len(cats)
    return lang_i, cat_i, category


def _reference_order() -> list[tuple[str, str]]:
    return [(r["language"], r["category"]) for r in load_reference()]


def load_reference() -> list[dict]:
    """Reference F1 values (one row per category, one column per family)."""
    text = resources.files("commentclf").joinpath("data", "reference_f1.csv").read_text(encoding="utf-8")
    return list(csv.DictReader(io.StringIO(text)))


class ScoreTable:
    def __init__(self, cells: list[CellScore]):
        self.cells = {(c.language, c.category, c.family): c.scores for c in cells}
        present_fams = {c.family for c in cells}
        self.families = [f for f in REPORT_ORDER if f in present_fams]
        ref = _reference_order()
        keys = {(c.language, c.category) for c in cells}
        # reference row order where it applies, canonical order otherwise
        self.categories = sorted(
            keys,
            key=lambda k: (ref.index(k) if k in ref else len(ref), _category_rank(*k)),
        )

    def f1(self, lang, cat, fam) -> float | None:
        s = self.cells.get((lang, cat, fam))
        return None if s is None else s.f1

    def average(self, fam) -> float | None:
        vals = [self.f1(l, c, fam) for l, c in self.categories]
        vals = [v for v in vals if v is not None]
        return sum(vals) / len(vals) if vals else None

    def best_family_for(self, lang, cat) -> Family | None:
        best = None
        for fam in self.families:
            v = self.f1(lang, cat, fam)
            if v is not None and (best is None or v > self.f1(lang, cat, best)):
                best = fam
        return best

    def best_average_family(self) -> Family | None:
        best = None
        for fam in self.families:
            v = self.average(fam)
            if v is not None and (best is None or v > self.average(best)):
                best = fam
        return best


def _fmt(v: float | None) -> str:
    return "" if v is None else repr(float(v))


def _fmt4(v: float | None) -> str:
    return "-" if v is None else f"{round_half_up(v, 4):.4f}"


def comparison_csv(table: ScoreTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["language", "category", *[f.value for f in table.families], "best_family"])
    for lang, cat in table.categories:
        best = table.best_family_for(lang, cat)
        w.writerow([lang, cat, *[_fmt(table.f1(lang, cat, f)) for f in table.families], best.value if best else ""])
    best = table.best_average_family()
    w.writerow(["", "AVERAGE F1", *[_fmt(table.average(f)) for f in table.families], best.value if best else ""])
    return buf.getvalue()


def breakdown_csv(table: ScoreTable, family: Family | None = None) -> str:
    family = family or table.best_average_family()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["language", "category", "family", "precision", "recall", "f1"])
    if family is None:
        return buf.getvalue()
    rows = [table.cells.get((l, c, family)) for l, c in table.categories]
    for (lang, cat), s in zip(table.categories, rows):
        if s is not None:
            w.writerow([lang, cat, family.value, _fmt(s.precision), _fmt(s.recall), _fmt(s.f1)])
    done = [s for s in rows if s is not None]
    if done:
        n = len(done)
        w.writerow(["", "AVERAGE", family.value,
                    _fmt(sum(s.precision for s in done) / n),
                    _fmt(sum(s.recall for s in done) / n),
                    _fmt(sum(s.f1 for s in done) / n)])
    return buf.getvalue()


def markdown(table: ScoreTable) -> str:
    fams = table.families
    lines = ["# F1 by category and classifier", ""]
    lines.append("| Language | Category | " + " | ".join(DISPLAY_NAMES[f] for f in fams) + " |")
    lines.append("|---|---|" + "---:|" * len(fams))
    for lang, cat in table.categories:
        vals = [table.f1(lang, cat, f) for f in fams]
        top = max((v for v in vals if v is not None), default=None)
        cells = [f"**{_fmt4(v)}**" if v is not None and v == top else _fmt4(v) for v in vals]
        lines.append(f"| {lang} | {cat} | " + " | ".join(cells) + " |")
    best_avg = table.best_average_family()
    avgs = [f"**{_fmt4(table.average(f))}**" if f is best_avg else _fmt4(table.average(f)) for f in fams]
    lines.append("| | *Average F1* | " + " | ".join(avgs) + " |")

    if best_avg is not None:
        lines += ["", f"# {DISPLAY_NAMES[best_avg]}: precision / recall / F1", ""]
        lines += ["| Language | Category | Precision | Recall | F1 |", "|---|---|---:|---:|---:|"]
        done = []
        for lang, cat in table.categories:
            s = table.cells.get((lang, cat, best_avg))
            if s is None:
                continue
            done.append(s)
            lines.append(f"| {lang} | {cat} | {_fmt4(s.precision)} | {_fmt4(s.recall)} | {_fmt4(s.f1)} |")
        n = len(done)
        lines.append(
            f"| | *Average* | {_fmt4(sum(s.precision for s in done) / n)} | "
            f"{_fmt4(sum(s.recall for s in done) / n)} | {_fmt4(sum(s.f1 for s in done) / n)} |"
        )

    deltas = _reference_deltas(table)
    if deltas:
        lines += ["", "# Difference from reference F1 (this run minus reference)", ""]
        lines.append("| Language | Category | " + " | ".join(DISPLAY_NAMES[f] for f in fams) + " |")
        lines.append("|---|---|" + "---:|" * len(fams))
        for (lang, cat), row in deltas:
            lines.append(f"| {lang} | {cat} | " + " | ".join(
                "-" if d is None else f"{d:+.4f}" for d in row) + " |")
    return "\n".join(lines) + "\n"


def _reference_deltas(table: ScoreTable):
    ref = {(r["language"], r["category"]): r for r in load_reference()}
    out = []
    for lang, cat in table.categories:
        r = ref.get((lang, cat))
        if r is None:
            continue
        row = []
        for f in table.families:
            v = table.f1(lang, cat, f)
            row.append(None if v is None else v - float(r[f.value]))
        out.append(((lang, cat), row))
    return out
