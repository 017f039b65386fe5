"""
Running an experiment
=====================

An ``ExperimentSpec`` fixes the workload; trial seeds are derived from the
base seed, so reports are byte-identical across runs.
"""

import tempfile
from pathlib import Path

from pathfree.harness import ExperimentSpec, emit_report, run_experiment

res = run_experiment(ExperimentSpec("sandwich", 3000, 30, 0.05, trials=5, seed=0))
for row in res.rows:
    print(dict(zip(res.columns, row)))
print("pass rate", res.pass_rate)

# %%
out = Path(tempfile.mkdtemp()) / "sandwich.csv"
for path in emit_report(res, out):
    print(path.name, path.stat().st_size, "bytes")
