"""Desk-scale grid: p = 3..5, alpha = 0.05..1.5 step 0.05, 200 trials.

    python scripts/run_desk_scale.py results/desk
"""
import sys
import time
from pathlib import Path

from mltlasso.experiments import GridConfig, results_to_csv, run_grid, stderr_progress
from mltlasso.plotting import plot_csv

out = Path(sys.argv[1] if len(sys.argv) > 1 else "results/desk")
out.mkdir(parents=True, exist_ok=True)
cfg = GridConfig(p_values=[3, 4, 5], alpha_start=0.05, alpha_stop=1.5, alpha_step=0.05, trials=200)

start = time.perf_counter()
results = run_grid(cfg, progress=stderr_progress)
(out / "q.csv").write_text(results_to_csv(results, cfg.alpha_decimals))
for path in plot_csv(out / "q.csv", out):
    print(path)
print(f"{len(results)} cells in {time.perf_counter() - start:.1f}s", file=sys.stderr)
