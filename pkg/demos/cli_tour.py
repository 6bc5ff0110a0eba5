"""
Command-line tour
=================

Every workflow is scriptable without Python: fit estimators from a
config, sweep q, simulate mean samples, inject outliers, count bins, and
re-emit plot data from a saved report.  This demo drives the ``qlid``
entry point as a subprocess and lists what lands on disk.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

from qlid import fixture_path

work = Path(tempfile.mkdtemp(prefix="qlid-tour-"))
data = fixture_path("halfline_n90")

def run(*args):
    cmd = [sys.executable, "-m", "qlid", *args]
    print("$ qlid", " ".join(args))
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != 0:
        print(proc.stderr.strip())
    return proc

# A config file holds the run, optimizer budget, and estimator roster.
config = work / "study.toml"
config.write_text(
    f'[run]\ndata = "{data}"\nseed = 9\nedges = [0.0, 0.5, 1.0, 1.5, 2.5, 6.0]\n\n'
    "[optimizer]\npopulation = 24\ngenerations = 40\nrestarts = 2\n\n"
    '[[estimator]]\nkind = "mle"\nfamily0 = "gamma"\n\n'
    '[[estimator]]\nkind = "mqle"\nfamily0 = "gamma"\nq = 0.53\n'
)

run("fit", "--config", str(config), "--out-dir", str(work / "fit"))
print("  ->", sorted(p.name for p in (work / "fit").iterdir()))

report = json.loads((work / "fit" / "report.json").read_text())
for row in report["results"]:
    theta = {k: round(v, 3) for k, v in row["theta"].items()}
    print(f"  {row['label']:22s} theta={theta} criteria={ {k: round(v, 2) for k, v in row['criteria'].items()} }")

# Sweep the deformation parameter on a fixed estimator.
run("sweep", "--config", str(config), "--estimator", "mqle", "--family0",
    "gamma", "--q-grid", "0.3,0.53,0.9", "--out-dir", str(work / "sweep"))
print("  ->", (work / "sweep" / "sweep.txt").read_text().splitlines()[0])

# Simulate an order-statistic mean sample and bin it in one shot.
run("simulate", "--family0", "gamma", "--params", "a=3,b=0.25", "--n", "20",
    "--replications", "400", "--seed", "7", "--edges", "0,0.4,0.8,1.6",
    "--out-dir", str(work / "sim"))
print("  ->", sorted(p.name for p in (work / "sim").iterdir()))

# Outlier injection and bin counting read plain text samples.
run("inject", "--data", str(data), "--out-dir", str(work / "inj"))
injected = (work / "inj" / "injected.txt").read_text().split()
print(f"  -> injected.txt has {len(injected)} values, max {max(map(float, injected)):.4f}")

proc = run("bins", "--data", str(data), "--edges", "0,0.5,1.0,1.5,2.5,6.0")
print("  " + "\n  ".join(proc.stdout.strip().splitlines()[:3]) + "\n  ...")

# Plot data can be re-emitted later from the saved report.
run("plot", "--report", str(work / "fit" / "report.json"), "--data", str(data),
    "--edges", "0,0.5,1.0,1.5,2.5,6.0", "--out-dir", str(work / "replot"))
print("  ->", sorted(p.name for p in (work / "replot" / "plots").iterdir()))

print("\nartifacts under", work)
