"""
Estimation error vs shot budget
===============================

Runs a small sweep comparing the Bell-sampling estimator against the
direct grouped-measurement baseline on an 8-qubit complete graph state,
then prints a median-error table. The same sweep is available from the
command line via ``bsqn run --config fig3a``.
"""

import json
import statistics
import tempfile
from pathlib import Path

from bsqn import load_config, run_experiment

config = {
    "name": "demo_sweep",
    "seed": 42,
    "graph": {"type": "complete", "n": 8},
    "noise": [{"model": "depolarizing", "F": 0.9}],
    "protocols": [
        {"protocol": "bsqn_full"},
        {"protocol": "dge", "strategy": "complete_overlap_y"},
    ],
    "sweep": {"axis": "Ns", "values": [200, 2000, 20000]},
    "trials": 20,
}

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "demo.json"
    path.write_text(json.dumps(config))
    rows = list(run_experiment(load_config(path)))

protocols = sorted({r.protocol for r in rows})
shots = sorted({r.Ns for r in rows})
print(f"{'protocol':<24} " + " ".join(f"Ns={ns:<8}" for ns in shots))
for protocol in protocols:
    medians = []
    for ns in shots:
        errs = [
            r.l2_error
            for r in rows
            if r.protocol == protocol and r.Ns == ns and r.error is None
        ]
        medians.append(f"{statistics.median(errs):.4f}" if errs else "refused")
    print(f"{protocol:<24} " + " ".join(f"{m:<11}" for m in medians))
