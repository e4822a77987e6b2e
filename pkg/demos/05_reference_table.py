"""
The reference F1 table
======================

The reference F1 values ship with the package and feed the delta table
in report.md. Here: per-family averages and the best family per category.
"""

from collections import Counter

from commentclf.learners import REPORT_ORDER
from commentclf.metrics import round_half_up
from commentclf.report import load_reference

rows = load_reference()
fams = [f.value for f in REPORT_ORDER]

for fam in fams:
    avg = sum(float(r[fam]) for r in rows) / len(rows)
    print(f"{fam:20s} {round_half_up(avg, 4):.4f}")

wins = Counter(max(fams, key=lambda f: float(r[f])) for r in rows)
print("best family per category:", dict(wins))

perfect = [f"{r['language']}/{r['category']}" for r in rows if all(float(r[f]) == 1.0 for f in fams)]
print("perfect for every family:", perfect)
