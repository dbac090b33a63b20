"""Regenerate the committed pilot data in tests/data.

The acceptance tests compare fresh runs against these numbers:

    convergence: spec (2,1,1), seed 7, 50 samples at n = 50, 200, 800
    goodness:    d = 3, eps = 0.05, seed 7, 50 samples at n = 100, 400, 1600

Run from the repository root:  python demos/pilot.py
"""

import json
import time
from pathlib import Path

from permuton_lab.experiments import ExperimentConfig, run_convergence, run_goodness, summarize, write_summary

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def main():
    DATA.mkdir(parents=True, exist_ok=True)

    t0 = time.perf_counter()
    cfg = ExperimentConfig(ns=(50, 200, 800), samples=50, seed=7, epsilons=(0.2,), grid=64)
    rows = summarize(cfg, run_convergence(cfg))
    write_summary(DATA / "pilot_convergence.csv", rows)
    for r in rows:
        print(f"n={r['n']:4d}  median W_0.2 = {r['w_0.2_q50']:.4f}  median rect-sup = {r['rect_sup_m64_q50']:.4f}")
    print(f"convergence pilot: {time.perf_counter() - t0:.0f} s")

    t0 = time.perf_counter()
    ns = (100, 400, 1600)
    fractions = run_goodness(ns, d=3, eps=0.05, samples=50, seed=7, max_n=1600)
    (DATA / "pilot_goodness.json").write_text(json.dumps(
        {"d": 3, "eps": 0.05, "seed": 7, "samples": 50, "fractions": {str(n): f for n, f in fractions.items()}},
        indent=2) + "\n")
    for n, f in fractions.items():
        print(f"n={n:5d}  good fraction = {f:.3f}")
    print(f"goodness pilot: {time.perf_counter() - t0:.0f} s")


if __name__ == "__main__":
    main()
