"""
Saved models and single-sentence inference
==========================================

Each cell writes a self-describing JSON model file. It carries the
normalizer settings and the TF-IDF table, so a raw sentence can be
classified without the training data.
"""

import json
import tempfile
from pathlib import Path

from commentclf.corpus import sample_dataset_path
from commentclf.runner import DatasetSource, RunConfig, cell_dir, classify, run_experiment, verify_run

out = Path(tempfile.mkdtemp(prefix="commentclf-"))
run_experiment(RunConfig([DatasetSource(str(sample_dataset_path()))], out_dir=str(out),
                         categories=["Java/ownership"], families=["LogisticRegression", "BernoulliNB"]))

path = cell_dir(out, "Java", "ownership", "LogisticRegression") / "model.txt"
doc = json.loads(path.read_text())
print(doc["family"], doc["hyperparameters"], "vocabulary:", len(doc["tfidf"]["vocabulary"]))

for sentence in ["@author Jane Doe", "Returns the parsed value.", "", "zzz qqq"]:
    label, margin = classify(path, sentence)
    print(f"{sentence!r:28} label={label} margin={margin:+.4f}")

# scores.json and report.csv must agree with predictions.csv
print("verify:", verify_run(out) or "consistent")
