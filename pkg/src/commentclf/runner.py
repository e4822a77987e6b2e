"""End-to-end experiment: every (category, family) cell from raw CSV to scores.

Per category: normalise sentences, fit TF-IDF on the training partition,
transform both partitions, oversample the training vectors.  Per family:
grid-search with 10-fold CV, refit the winner, predict the test partition
and score it.  Each cell writes ``model.txt``, ``predictions.csv`` and
``scores.json`` under ``<out>/<language>/<category>/<family>/``; the run
directory also gets ``report.csv``, ``breakdown.csv``, ``report.md`` and
``manifest.json``.

Seeds: the oversampler for a category uses
``derive_seed(seed, language, category)``; a cell's folds and learner use
``derive_seed(seed, language, category, family)``.  Subsetting a run
therefore never changes the randomness of the cells that remain.
"""
from __future__ import annotations

import csv
import json
import logging
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from . import __version__, learners, report
from .corpus import CATEGORIES, LANGUAGES, canonical_category, canonical_language, filter_category, load_dataset
from .errors import DomainError
from .learners import Family
from .metrics import ScoreTriple, confusion, score
from .persist import load_model_full, save_model
from .rng import derive_seed
from .sampler import oversample_indices
from .textnorm import NormalizerConfig, default_config, normalize
from .tuner import ParamGrid, grid_search
from .vectorizer import TfidfModel, fit as fit_tfidf, to_csr, transform

log = logging.getLogger(__name__)


@dataclass
class DatasetSource:
    path: str
    language: str | None = None  # None: the file has a language column


@dataclass
class RunConfig:
    datasets: list[DatasetSource]
    out_dir: str = "runs/default"
    seed: int = 42
    schema: dict[str, str] = field(default_factory=dict)
    languages: list[str] | None = None
    categories: list[str] | None = None
    families: list[str] | None = None
    grids: dict[str, dict[str, list]] = field(default_factory=dict)
    oversample_after_split: bool = False
    n_folds: int = 10
    workers: int = 1
    stopwords_path: str | None = None
    contractions_path: str | None = None

    def resolved(self) -> "RunConfig":
        """Copy with every default materialised."""
        langs = [canonical_language(l) for l in (self.languages or LANGUAGES)]
        fams = [learners.resolve_family(f).value for f in (self.families or learners.FAMILIES)]
        grids = {}
        for f in fams:
            axes = self.grids.get(f) or learners.DEFAULT_GRIDS[Family(f)]
            grids[f] = ParamGrid(Family(f), axes).axes
        return RunConfig(
            datasets=[DatasetSource(str(d.path), d.language) for d in self.datasets],
            out_dir=str(self.out_dir),
            seed=int(self.seed),
            schema=dict(self.schema),
            languages=langs,
            categories=list(self.categories) if self.categories else None,
            families=fams,
            grids=grids,
            oversample_after_split=self.oversample_after_split,
            n_folds=self.n_folds,
            workers=self.workers,
            stopwords_path=self.stopwords_path,
            contractions_path=self.contractions_path,
        )

    def to_dict(self) -> dict:
        return asdict(self)


def slug(name: str) -> str:
    return name.strip().lower().replace(" ", "_")


def cell_dir(out_dir, language: str, category: str, family) -> Path:
    return Path(out_dir) / language / slug(category) / str(family)


def write_predictions(y_true: Sequence[int], y_pred: Sequence[int], ids: Sequence, path) -> None:
    if not (len(y_true) == len(y_pred) == len(ids)):
        raise DomainError("ids, true labels and predictions must have equal length")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["id", "true_label", "predicted_label"])
        for i, t, p in zip(ids, y_true, y_pred):
            w.writerow([i, int(t), int(p)])


def read_predictions(path) -> tuple[list[str], list[int], list[int]]:
    ids, yt, yp = [], [], []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            ids.append(row["id"])
            yt.append(int(row["true_label"]))
            yp.append(int(row["predicted_label"]))
    return ids, yt, yp


@dataclass
class PreparedCategory:
    language: str
    category: str
    tfidf: TfidfModel
    X_train: sp.csr_matrix
    y_train: np.ndarray
    X_test: sp.csr_matrix
    y_test: np.ndarray
    test_ids: tuple[str, ...]
    sample_seed: int


def prepare_category(records, language: str, category: str, seed: int,
                     normalizer: NormalizerConfig | None = None) -> PreparedCategory:
    ds = filter_category(records, language, category)
    if not ds.train:
        raise DomainError(f"{language}/{category}: no training rows")
    train_text = [normalize(s, normalizer) for s in ds.train_sentences]
    test_text = [normalize(s, normalizer) for s in ds.test_sentences]
    tfidf = fit_tfidf(train_text)
    X_train = to_csr([transform(tfidf, s) for s in train_text], tfidf.dimension)
    X_test = to_csr([transform(tfidf, s) for s in test_text], tfidf.dimension)
    return PreparedCategory(
        ds.language, ds.category, tfidf,
        X_train, np.asarray(ds.train_labels, dtype=np.int64),
        X_test, np.asarray(ds.test_labels, dtype=np.int64),
        ds.test_ids, derive_seed(seed, ds.language, ds.category),
    )


class _Oversampler:
    # picklable resampler for the leakage-free ordering
    def __init__(self, seed: int):
        self.seed = seed

    def __call__(self, X, y):
        idx = oversample_indices(y.tolist(), self.seed)
        return X[idx], y[idx]


def run_cell(prep: PreparedCategory, family: str, axes: Mapping, seed: int, out_dir: str,
             n_folds: int = 10, oversample_after_split: bool = False,
             normalizer: NormalizerConfig | None = None) -> dict:
    """Tune, predict and persist one (category, family) cell; returns its summary."""
    fam = Family(family)
    cell_seed = derive_seed(seed, prep.language, prep.category, fam.value)
    started = time.perf_counter()
    summary = {"language": prep.language, "category": prep.category, "family": fam.value, "seed": cell_seed}
    try:
        grid = ParamGrid(fam, axes)
        if oversample_after_split:
            X, y = prep.X_train, prep.y_train
            resample = _Oversampler(prep.sample_seed)
        else:
            X, y = _Oversampler(prep.sample_seed)(prep.X_train, prep.y_train)
            resample = None
        model, cv = grid_search(grid, X, y, cell_seed, n_folds, resample)
        y_pred = learners.predict(model, prep.X_test)
        counts = confusion(prep.y_test.tolist(), y_pred)
        triple = score(counts)

        d = cell_dir(out_dir, prep.language, prep.category, fam)
        d.mkdir(parents=True, exist_ok=True)
        save_model(model, prep.tfidf, d / "model.txt", normalizer)
        write_predictions(prep.y_test.tolist(), y_pred, prep.test_ids, d / "predictions.csv")
        summary.update(
            status="ok",
            best_hyperparameters=dict(model.spec.hyperparameters),
            scores=triple.to_dict(),
            confusion=asdict(counts),
            cv_results=[r.to_dict() for r in cv],
        )
        (d / "scores.json").write_text(json.dumps(summary, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    except Exception as exc:  # one bad cell must not sink the run
        log.error("cell %s/%s/%s failed: %s", prep.language, prep.category, fam, exc)
        summary.update(status="failed", error=f"{type(exc).__name__}: {exc}", traceback=traceback.format_exc())
    summary["seconds"] = time.perf_counter() - started
    return summary


def _select_categories(records, cfg: RunConfig) -> list[tuple[str, str]]:
    present = {(r.language, r.category) for r in records}
    wanted = None
    if cfg.categories:
        wanted = set()
        for name in cfg.categories:
            lang, sep, cat = name.partition("/")
            if sep:
                wanted.add((canonical_language(lang), canonical_category(lang, cat)))
            else:
                hits = [(l, c) for l in cfg.languages for c in CATEGORIES[l]
                        if c == name.strip().lower() or slug(c) == slug(name)]
                if not hits:
                    raise DomainError(f"category {name!r} does not exist in {cfg.languages}")
                wanted.update(hits)
    out = []
    for lang in cfg.languages:
        for cat in CATEGORIES[lang]:
            if (lang, cat) in present and (wanted is None or (lang, cat) in wanted):
                out.append((lang, cat))
    return out


def load_records(cfg: RunConfig):
    records = []
    for src in cfg.datasets:
        records.extend(load_dataset(src.path, cfg.schema, src.language))
    return records


def run_experiment(config: RunConfig) -> dict:
    """Run every selected cell and write reports; returns the manifest."""
    cfg = config.resolved()
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    normalizer = (
        NormalizerConfig.from_files(cfg.stopwords_path, cfg.contractions_path)
        if cfg.stopwords_path or cfg.contractions_path
        else default_config()
    )
    t0 = time.perf_counter()
    records = load_records(cfg)
    pairs = _select_categories(records, cfg)

    summaries, failures = [], []
    jobs = []
    for lang, cat in pairs:
        try:
            prep = prepare_category(records, lang, cat, cfg.seed, normalizer)
        except Exception as exc:
            for fam in cfg.families:
                failures.append({"language": lang, "category": cat, "family": fam, "status": "failed",
                                 "error": f"{type(exc).__name__}: {exc}"})
            continue
        for fam in cfg.families:
            jobs.append((prep, fam, cfg.grids[fam], cfg.seed, str(out), cfg.n_folds,
                         cfg.oversample_after_split, normalizer))

    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [pool.submit(run_cell, *job) for job in jobs]
            summaries = [f.result() for f in futures]
    else:
        summaries = [run_cell(*job) for job in jobs]
    summaries.extend(failures)
    summaries.sort(key=lambda s: (LANGUAGES.index(s["language"]),
                                  CATEGORIES[s["language"]].index(s["category"]),
                                  learners.FAMILIES.index(Family(s["family"]))))

    write_reports(out, cells_from_summaries(summaries))
    manifest = {
        "toolkit_version": __version__,
        "config": cfg.to_dict(),
        "cells": [{k: v for k, v in s.items() if k != "traceback"} for s in summaries],
        "failed": sum(s["status"] != "ok" for s in summaries),
        "seconds": time.perf_counter() - t0,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=1) + "\n", encoding="utf-8")
    return manifest


def cells_from_summaries(summaries) -> list[report.CellScore]:
    return [
        report.CellScore(s["language"], s["category"], Family(s["family"]), ScoreTriple(**s["scores"]))
        for s in summaries if s.get("status") == "ok"
    ]


def collect_cells(run_dir) -> list[report.CellScore]:
    """Read every ``scores.json`` below a run directory."""
    summaries = [json.loads(p.read_text(encoding="utf-8")) for p in sorted(Path(run_dir).glob("*/*/*/scores.json"))]
    return cells_from_summaries(summaries)


def write_reports(run_dir, cells: list[report.CellScore]) -> None:
    run_dir = Path(run_dir)
    table = report.ScoreTable(cells)
    (run_dir / "report.csv").write_text(report.comparison_csv(table), encoding="utf-8")
    (run_dir / "breakdown.csv").write_text(report.breakdown_csv(table), encoding="utf-8")
    (run_dir / "report.md").write_text(report.markdown(table), encoding="utf-8")


def verify_run(run_dir) -> list[str]:
    """Recompute every cell's scores from its predictions file.

    Returns a list of human-readable mismatches (empty when consistent).
    """
    run_dir = Path(run_dir)
    problems = []
    report_f1 = {}
    report_path = run_dir / "report.csv"
    if report_path.exists():
        with report_path.open(newline="", encoding="utf-8") as fh:
            for row in csv.DictReader(fh):
                if row["category"] == "AVERAGE F1":
                    continue
                for fam in learners.FAMILIES:
                    if row.get(fam.value):
                        report_f1[(row["language"], row["category"], fam.value)] = float(row[fam.value])
    else:
        problems.append(f"{report_path}: missing")

    for scores_path in sorted(run_dir.glob("*/*/*/scores.json")):
        summary = json.loads(scores_path.read_text(encoding="utf-8"))
        if summary.get("status") != "ok":
            continue
        pred_path = scores_path.with_name("predictions.csv")
        if not pred_path.exists():
            problems.append(f"{pred_path}: missing")
            continue
        _, yt, yp = read_predictions(pred_path)
        recomputed = score(confusion(yt, yp))
        stored = summary["scores"]
        for name in ("precision", "recall", "f1"):
            if getattr(recomputed, name) != stored[name]:
                problems.append(f"{scores_path}: {name} {stored[name]} != recomputed {getattr(recomputed, name)}")
        key = (summary["language"], summary["category"], summary["family"])
        if key in report_f1 and report_f1[key] != recomputed.f1:
            problems.append(f"report.csv {key}: F1 {report_f1[key]} != recomputed {recomputed.f1}")
    return problems


def classify(model_path, sentence: str) -> tuple[int, float]:
    """Label and decision value for one raw sentence under a saved model."""
    model, tfidf, normalizer = load_model_full(model_path)
    vec = transform(tfidf, normalize(sentence, normalizer))
    margin = learners.decision_function(model, vec)
    return int(margin > 0), margin
