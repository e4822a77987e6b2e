"""Self-describing text model files.

A model file is a single JSON document::

    {"format": "commentclf-model", "version": 1,
     "family": ..., "hyperparameters": {...}, "seed": ...,
     "dimension": ..., "normalizer": {...}, "tfidf": {...},
     "payload": {...}}

Floats are written with ``repr`` precision, so every array round-trips
exactly.  Files are written to a temporary sibling and renamed into place.
"""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .errors import FormatError
from .learners import Family, LearnerSpec, TrainedModel
from .textnorm import NormalizerConfig, default_config
from .vectorizer import TfidfModel

FORMAT = "commentclf-model"
VERSION = 1


def _encode_array(a: np.ndarray) -> dict:
    return {"dtype": a.dtype.str, "shape": list(a.shape), "data": a.ravel().tolist()}


def _decode_array(d) -> np.ndarray:
    return np.asarray(d["data"], dtype=np.dtype(d["dtype"])).reshape(d["shape"])


def _encode_payload(family: Family, payload):
    if family is Family.RandomForest:
        return {"trees": [{k: _encode_array(v) for k, v in t.items()} for t in payload]}
    if family is Family.KNN:
        X = payload["X"]
        return {
            "shape": list(X.shape),
            "data": _encode_array(X.data),
            "indices": _encode_array(X.indices),
            "indptr": _encode_array(X.indptr),
            "y": _encode_array(payload["y"]),
        }
    return {k: _encode_array(v) for k, v in payload.items()}


def _decode_payload(family: Family, d):
    if family is Family.RandomForest:
        return [{k: _decode_array(v) for k, v in t.items()} for t in d["trees"]]
    if family is Family.KNN:
        X = sp.csr_matrix(
            (_decode_array(d["data"]), _decode_array(d["indices"]), _decode_array(d["indptr"])),
            shape=tuple(d["shape"]),
        )
        return {"X": X, "y": _decode_array(d["y"])}
    return {k: _decode_array(v) for k, v in d.items()}


def model_to_dict(model: TrainedModel, tfidf: TfidfModel, normalizer: NormalizerConfig | None = None) -> dict:
    return {
        "format": FORMAT,
        "version": VERSION,
        "family": model.family.value,
        "hyperparameters": dict(model.spec.hyperparameters),
        "seed": model.spec.seed,
        "dimension": model.dimension,
        "normalizer": (normalizer or default_config()).to_dict(),
        "tfidf": tfidf.to_dict(),
        "payload": _encode_payload(model.family, model.payload),
    }


def save_model(model: TrainedModel, tfidf: TfidfModel, path, normalizer: NormalizerConfig | None = None) -> None:
    path = Path(path)
    text = json.dumps(model_to_dict(model, tfidf, normalizer), indent=1)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def load_model_full(path) -> tuple[TrainedModel, TfidfModel, NormalizerConfig]:
    try:
        d = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not a valid model file ({exc})") from None
    if not isinstance(d, dict) or d.get("format") != FORMAT:
        raise FormatError(f"{path}: not a {FORMAT} file")
    if d.get("version") != VERSION:
        raise FormatError(f"{path}: unsupported model file version {d.get('version')!r}")
    try:
        spec = LearnerSpec.from_dict(d)
        model = TrainedModel(spec, int(d["dimension"]), _decode_payload(spec.family, d["payload"]))
        tfidf = TfidfModel.from_dict(d["tfidf"])
        normalizer = NormalizerConfig.from_dict(d["normalizer"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{path}: malformed model file ({exc})") from None
    if tfidf.dimension != model.dimension:
        raise FormatError(f"{path}: TF-IDF vocabulary size does not match model dimension")
    return model, tfidf, normalizer


def load_model(path) -> tuple[TrainedModel, TfidfModel]:
    model, tfidf, _ = load_model_full(path)
    return model, tfidf
