"""Flow numbers over the bundled corpus, in the survey-table shape.

Every 3-edge-colourable cubic graph sits at the minimum value 2; the
Petersen graph is the one snark in the bundled corpus and lands in the
2+1/2 column.  The same CSV is produced by `nzflow batch`.
"""

from pathlib import Path

import nzflow
from nzflow.cli import batch_csv

lines = [ln for ln in Path(nzflow.corpus_path()).read_text().splitlines() if ln]
print(f"corpus: {len(lines)} cubic bridgeless graphs, orders 4..14")
csv = batch_csv(lines, 2, "chebyshev", qmax=2, jobs=2)
rows = csv.splitlines()
print()
print("histogram section (columns 2+1/4, 2+1/3, 2+1/2, total):")
start = rows.index("order,2+1/4,2+1/3,2+1/2,total")
for row in rows[start:]:
    print("   ", row)
print()
print("first per-graph rows:")
for row in rows[:6]:
    print("   ", row)
