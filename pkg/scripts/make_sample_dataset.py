"""Regenerate the bundled 200-row sample dataset.

Synthetic class-comment sentences in the comment-classification CSV layout:
each sentence appears once per category with a 0/1 membership flag.
Java: 40 sentences x 3 categories, Python: 40 sentences x 2 categories.
Every fourth sentence is in the test partition (partition column 1).

    python scripts/make_sample_dataset.py
"""
import csv
from pathlib import Path

from commentclf.rng import SplitMix64

OUT = Path(__file__).resolve().parents[1] / "src" / "commentclf" / "data" / "sample_comments.csv"

NAMES = ["John Smith", "Ana Lima", "K. Tanaka", "Marta Nowak", "Li Wei", "Omar Haddad", "Sara Jones"]
THINGS = ["buffer", "parser", "cache entry", "socket", "token stream", "session", "query plan",
          "thread pool", "config map", "event queue", "index reader", "file handle"]
VERBS = ["reads", "stores", "wraps", "validates", "closes", "flushes", "builds", "tracks"]

JAVA = {
    "ownership": ["@author {name}", "@author {name} (original version)", "Written by {name}.",
                  "@author {name}, {name2}"],
    "deprecation": ["@deprecated use the new {thing} API instead.", "Deprecated since 2.{n}; will be removed.",
                    "@deprecated This {thing} is no longer maintained.", "Do not use, deprecated in favour of {Thing}Factory."],
    "usage": ["Call open() before using the {thing}.", "Example: {Thing} x = new {Thing}(); x.start();",
              "To use this class, pass a {thing} to the constructor.", "Use {Thing}Builder to create instances."],
    "summary": ["This class {verb} the {thing}.", "A simple {thing} that {verb} data.",
                "Represents a {thing} in memory.", "Utility class which {verb} {thing} objects."],
}
JAVA_PLAN = ["ownership"] * 10 + ["deprecation"] * 8 + ["usage"] * 10 + ["summary"] * 12

PYTHON = {
    "parameters": [":param {thing}: the {thing} to process", "Args: {thing} (str): name of the {thing}.",
                   ":param int n: number of {thing} items, default {n}", "timeout: seconds to wait for the {thing}"],
    "summary": ["Return the {thing} for this session.", "Helper that {verb} a {thing}.",
                "Base class for {thing} handlers.", "Compute {thing} statistics."],
    "usage": [">>> {thing} = load()  # then call run()", "Use with a context manager to close the {thing}.",
              "TODO: refactor the {thing} once the API settles.", "Note: this {verb} the {thing} lazily."],
}
PYTHON_PLAN = ["parameters"] * 12 + ["summary"] * 12 + ["usage"] * 16


def fill(template, rng):
    thing = THINGS[rng.below(len(THINGS))]
    return template.format(
        name=NAMES[rng.below(len(NAMES))], name2=NAMES[rng.below(len(NAMES))],
        thing=thing, Thing=thing.title().replace(" ", ""), verb=VERBS[rng.below(len(VERBS))],
        n=10 + rng.below(90),
    )


def sentences(plan, templates, rng):
    out = []
    for cat in plan:
        options = templates[cat]
        out.append((cat, fill(options[rng.below(len(options))], rng)))
    order = list(range(len(out)))
    rng.shuffle(order)
    return [out[i] for i in order]


def main():
    rng = SplitMix64(2023)
    rows = []
    sid = 0
    for language, plan, templates, cats in (
        ("Java", JAVA_PLAN, JAVA, ["ownership", "deprecation", "usage"]),
        ("Python", PYTHON_PLAN, PYTHON, ["parameters", "summary"]),
    ):
        for i, (true_cat, text) in enumerate(sentences(plan, templates, rng)):
            sid += 1
            partition = 1 if i % 4 == 3 else 0
            for cat in cats:
                rows.append([sid, language, cat, text, partition, int(cat == true_cat)])
    with OUT.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["comment_sentence_id", "language", "category", "comment_sentence", "partition", "instance_type"])
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {OUT}")


if __name__ == "__main__":
    main()
