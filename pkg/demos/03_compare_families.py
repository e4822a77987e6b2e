"""
All families on the sample dataset
==================================

Runs every (category, family) cell of the bundled sample and prints the
comparison table. Takes about half a minute.
"""

import sys
import tempfile
from pathlib import Path

from commentclf.corpus import sample_dataset_path
from commentclf.runner import DatasetSource, RunConfig, run_experiment

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp(prefix="commentclf-"))
manifest = run_experiment(RunConfig([DatasetSource(str(sample_dataset_path()))], out_dir=str(out)))
print(len(manifest["cells"]), "cells,", manifest["failed"], "failed,", f"{manifest['seconds']:.1f}s")
print((out / "report.md").read_text())

# which depth did the decision tree pick per category?
for cell in manifest["cells"]:
    if cell["family"] == "DecisionTree":
        print(cell["language"], cell["category"], cell["best_hyperparameters"]["max_depth"])
print("outputs in", out)
