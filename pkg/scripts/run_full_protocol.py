"""Full grid: p = 3..9, n = 1..p, alpha = 0.01..1.5 step 0.01, 1000 trials per cell.

Writes q.csv and one SVG per p. Takes hours on a single core; use --jobs.

    python scripts/run_full_protocol.py results/full --jobs 4
"""
import argparse
import sys
import time
from pathlib import Path

from mltlasso.experiments import GridConfig, results_to_csv, run_grid, stderr_progress
from mltlasso.plotting import plot_csv

parser = argparse.ArgumentParser()
parser.add_argument("out", nargs="?", default="results/full")
parser.add_argument("--jobs", type=int, default=1)
parser.add_argument("--seed", type=int, default=0)
args = parser.parse_args()

out = Path(args.out)
out.mkdir(parents=True, exist_ok=True)
cfg = GridConfig(master_seed=args.seed)

start = time.perf_counter()
results = run_grid(cfg, args.jobs, progress=stderr_progress)
(out / "q.csv").write_text(results_to_csv(results, cfg.alpha_decimals))
for path in plot_csv(out / "q.csv", out):
    print(path)
print(f"{len(results)} cells in {time.perf_counter() - start:.1f}s", file=sys.stderr)
