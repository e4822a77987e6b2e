"""Command-line entry point: ``commentclf {run,classify,verify,report}``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import report as report_mod
from .errors import CommentClfError
from .runner import DatasetSource, RunConfig, classify, collect_cells, run_experiment, verify_run

EXIT_CELL_FAILED = 2


def _split_list(values):
    if not values:
        return None
    out = []
    for v in values:
        out.extend(x.strip() for x in v.split(",") if x.strip())
    return out


def _dataset(arg: str) -> DatasetSource:
    # "Java=path.csv" pins the language for files without a language column
    lang, sep, path = arg.partition("=")
    if sep and not Path(arg).exists():
        return DatasetSource(path, lang)
    return DatasetSource(arg, None)


def _schema(arg: str | None) -> dict:
    if not arg:
        return {}
    if Path(arg).is_file():
        return json.loads(Path(arg).read_text(encoding="utf-8"))
    pairs = [p.split("=", 1) for p in arg.split(",") if p]
    if any(len(p) != 2 for p in pairs):
        raise argparse.ArgumentTypeError("--schema expects role=column[,role=column...] or a JSON file")
    return {k.strip(): v.strip() for k, v in pairs}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="commentclf", description=__doc__)
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="train, tune and evaluate every selected cell")
    run.add_argument("--dataset", nargs="+", required=True, metavar="[LANG=]PATH")
    run.add_argument("--schema", help="role=column pairs or a JSON file")
    run.add_argument("--languages", nargs="+")
    run.add_argument("--categories", nargs="+", help="names, or Language/category")
    run.add_argument("--families", nargs="+")
    run.add_argument("--seed", type=int, default=42)
    run.add_argument("--grid", help="JSON file: {family: {hyperparameter: [values]}}")
    run.add_argument("--out", default="runs/default")
    run.add_argument("--oversample-after-split", action="store_true",
                     help="oversample inside each CV training fold instead of before CV")
    run.add_argument("--folds", type=int, default=10)
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("--stopwords", help="stopword file, one word per line")
    run.add_argument("--contractions", help="contraction table, KEY<TAB>EXPANSION")

    cls = sub.add_parser("classify", help="label one sentence with a saved model")
    cls.add_argument("--model", required=True)
    cls.add_argument("--text", required=True)

    ver = sub.add_parser("verify", help="recompute scores from predictions files")
    ver.add_argument("--run", required=True)

    rep = sub.add_parser("report", help="rebuild the comparison report of a run")
    rep.add_argument("--run", required=True)
    rep.add_argument("--format", choices=("csv", "md"), default="md")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s")
    try:
        return _dispatch(args)
    except (CommentClfError, OSError, json.JSONDecodeError) as exc:
        print(f"commentclf: error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    if args.command == "run":
        if args.seed < 0 or args.seed >= 2**64:
            print("--seed must be an unsigned 64-bit integer", file=sys.stderr)
            return 1
        grids = json.loads(Path(args.grid).read_text(encoding="utf-8")) if args.grid else {}
        cfg = RunConfig(
            datasets=[_dataset(d) for d in args.dataset],
            out_dir=args.out,
            seed=args.seed,
            schema=_schema(args.schema),
            languages=_split_list(args.languages),
            categories=args.categories,
            families=_split_list(args.families),
            grids=grids,
            oversample_after_split=args.oversample_after_split,
            n_folds=args.folds,
            workers=args.workers,
            stopwords_path=args.stopwords,
            contractions_path=args.contractions,
        )
        manifest = run_experiment(cfg)
        ok = len(manifest["cells"]) - manifest["failed"]
        print(f"{ok} cell(s) ok, {manifest['failed']} failed; results in {args.out}")
        return EXIT_CELL_FAILED if manifest["failed"] else 0

    if args.command == "classify":
        label, margin = classify(args.model, args.text)
        print(f"label={label} margin={margin!r}")
        return 0

    if args.command == "verify":
        problems = verify_run(args.run)
        for p in problems:
            print(p)
        print("consistent" if not problems else f"{len(problems)} mismatch(es)")
        return 1 if problems else 0

    if args.command == "report":
        table = report_mod.ScoreTable(collect_cells(args.run))
        text = report_mod.comparison_csv(table) if args.format == "csv" else report_mod.markdown(table)
        sys.stdout.write(text)
        return 0
    return 1  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
