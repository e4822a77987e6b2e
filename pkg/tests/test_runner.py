import csv
import json

import pytest

from commentclf import runner
from commentclf.cli import main
from commentclf.corpus import sample_dataset_path
from commentclf.runner import DatasetSource, RunConfig, cell_dir, read_predictions, run_experiment, write_predictions

FAMILIES = ["MultinomialNB", "LogisticRegression"]


@pytest.fixture(scope="module")
def small_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("run")
    manifest = run_experiment(RunConfig([DatasetSource(str(sample_dataset_path()))], out_dir=str(out),
                                        categories=["Java/ownership", "summary"], families=FAMILIES))
    return out, manifest


def test_predictions_file_format(tmp_path):
    write_predictions([1, 0, 1], [1, 1, 0], ["a", "b", "c"], tmp_path / "p.csv")
    assert (tmp_path / "p.csv").read_text() == "id,true_label,predicted_label\na,1,1\nb,0,1\nc,1,0\n"
    write_predictions([], [], [], tmp_path / "e.csv")
    assert (tmp_path / "e.csv").read_text() == "id,true_label,predicted_label\n"
    assert read_predictions(tmp_path / "p.csv") == (["a", "b", "c"], [1, 0, 1], [1, 1, 0])


def test_manifest_and_layout(small_run):
    out, manifest = small_run
    cells = {(c["language"], c["category"], c["family"]) for c in manifest["cells"]}
    assert cells == {("Java", "ownership", f) for f in FAMILIES} | {("Python", "summary", f) for f in FAMILIES}
    assert manifest["failed"] == 0
    assert manifest["config"]["seed"] == 42 and manifest["config"]["grids"]["MultinomialNB"]
    for c in manifest["cells"]:
        d = cell_dir(out, c["language"], c["category"], c["family"])
        assert {"model.txt", "predictions.csv", "scores.json"} <= {p.name for p in d.iterdir()}
        assert len(c["cv_results"]) == 3 if c["family"] == "MultinomialNB" else 4
    with open(out / "report.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert [r["category"] for r in rows] == ["ownership", "summary", "AVERAGE F1"]
    assert "| Java | ownership |" in (out / "report.md").read_text()


def test_single_cell_config(tmp_path):
    m = run_experiment(RunConfig([DatasetSource(str(sample_dataset_path()))], out_dir=str(tmp_path),
                                 categories=["Java/usage"], families=["BernoulliNB"]))
    assert len(m["cells"]) == 1


def test_verify_and_report_cli(small_run, capsys):
    out, _ = small_run
    assert main(["verify", "--run", str(out)]) == 0
    assert "consistent" in capsys.readouterr().out
    assert main(["report", "--run", str(out), "--format", "csv"]) == 0
    assert capsys.readouterr().out == (out / "report.csv").read_text()


def test_verify_detects_tampering(small_run, tmp_path):
    import shutil
    out, manifest = small_run
    copy = tmp_path / "copy"
    shutil.copytree(out, copy)
    c = manifest["cells"][0]
    pred = cell_dir(copy, c["language"], c["category"], c["family"]) / "predictions.csv"
    lines = pred.read_text().splitlines()
    i, t, p = lines[1].split(",")
    lines[1] = f"{i},{t},{1 - int(p)}"
    pred.write_text("\n".join(lines) + "\n")
    assert runner.verify_run(copy)
    assert main(["verify", "--run", str(copy)]) == 1


def test_classify(small_run, capsys):
    out, _ = small_run
    model = cell_dir(out, "Java", "ownership", "LogisticRegression") / "model.txt"
    label, margin = runner.classify(model, "@author Jane Doe")
    assert label == 1 and margin > 0
    for text in ["", "qqqq zzzz xxxx"]:
        label, margin = runner.classify(model, text)
        assert label == int(margin > 0)
    assert main(["classify", "--model", str(model), "--text", "@author Jane Doe"]) == 0
    assert capsys.readouterr().out.startswith("label=1 margin=")


def test_cli_errors(tmp_path, capsys):
    (tmp_path / "bad.txt").write_text("{not json")
    assert main(["classify", "--model", str(tmp_path / "bad.txt"), "--text", "x"]) == 1
    assert "error" in capsys.readouterr().err
    assert main(["run", "--dataset", str(tmp_path / "missing.csv"), "--out", str(tmp_path / "o")]) == 1


def test_failed_cell_exit_code(tmp_path):
    # a test-only category: no training rows, so the cell fails and the run continues
    src = tmp_path / "d.csv"
    body = ("Java,usage,use it like this,1,1\nJava,usage,not usage,1,0\n"
            "Java,expand,see below,0,1\nJava,expand,other text,0,0\n") * 6
    src.write_text("language,category,comment_sentence,partition,instance_type\n" + body)
    code = main(["run", "--dataset", str(src), "--out", str(tmp_path / "o"), "--families", "MultinomialNB",
                 "--folds", "2"])
    manifest = json.loads((tmp_path / "o" / "manifest.json").read_text())
    assert code == 2 and manifest["failed"] == 1
    assert {c["category"]: c["status"] for c in manifest["cells"]} == {"usage": "failed", "expand": "ok"}


def test_rerun_is_byte_identical(tmp_path):
    cfg = dict(categories=["Python/parameters"], families=["KNN", "DecisionTree"])
    for name in ("a", "b"):
        run_experiment(RunConfig([DatasetSource(str(sample_dataset_path()))], out_dir=str(tmp_path / name), **cfg))
    for fam in cfg["families"]:
        rel = cell_dir("", "Python", "parameters", fam)
        for f in ("predictions.csv", "model.txt"):
            assert (tmp_path / "a" / rel / f).read_bytes() == (tmp_path / "b" / rel / f).read_bytes()


def test_test_rows_never_reach_training(tmp_path, monkeypatch):
    rows = ["language,category,comment_sentence,partition,instance_type"]
    for i in range(30):
        rows.append(f"Java,usage,call method{i % 5} with argument,0,{i % 2}")
    for i in range(10):
        rows.append(f"Java,usage,heldoutsentinel{i} method{i % 5},1,{i % 2}")
    src = tmp_path / "d.csv"
    src.write_text("\n".join(rows) + "\n")

    seen = []
    real_search = runner.grid_search

    def spy(grid, X, y, seed, n_folds=10, resample=None):
        seen.append(X.shape[0])
        return real_search(grid, X, y, seed, n_folds, resample)

    monkeypatch.setattr(runner, "grid_search", spy)
    for after in (False, True):
        out = tmp_path / f"o{after}"
        run_experiment(RunConfig([DatasetSource(str(src))], out_dir=str(out), families=["MultinomialNB"],
                                 oversample_after_split=after))
        vocab = json.loads((cell_dir(out, "Java", "usage", "MultinomialNB") / "model.txt").read_text())["tfidf"]
        assert not [t for t in vocab["vocabulary"] if "sentinel" in t]
        assert vocab["doc_count"] == 30
    # balanced already (15/15): the oversampled matrix has exactly the 30 training rows
    assert seen == [30, 30]
