"""
Command line and scaling runs
=============================

The ``embst`` command wraps generation, solving, verification and
benchmarking.  This script drives it in-process and fits a log-log slope
to a small scaling run.
"""
import os
import tempfile

from embst.bench import fit_slope, run_scaling
from embst.cli import main

tmp = tempfile.mkdtemp()
inst = os.path.join(tmp, "inst.txt")
main(["gen", "--kind", "two_cluster_adversarial", "--n", "300", "--seed", "1", "--out", inst])
main(["solve", inst, "--snapshot-t", "0.5", "--svg", os.path.join(tmp, "snap.svg")])
main(["verify", "--kind", "clustered", "--n", "200", "--count", "3"])

# %%
rows = run_scaling(["uniform"], [256, 512, 1024, 2048, 4096], [0], reps=3)
print("log-log slope of total time:", round(fit_slope(rows), 3))
