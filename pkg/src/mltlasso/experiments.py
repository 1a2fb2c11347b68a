"""Monte Carlo estimate of q(p, n, alpha): the probability that the graph
selected by graphical lasso from n standard normal samples in R^p has MLT at
most n.

Every trial draws from its own stream, derived by hashing
(master_seed, p, n, alpha_index, trial) with numpy's SeedSequence. MLT
lookups use a stream derived from (master_seed, p, edge bitmask), so cached
values do not depend on which trial or process asked first. Together these
make the output independent of scheduling.
"""
from __future__ import annotations

import csv
import enum
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from decimal import Decimal
from typing import Callable, Iterable

import numpy as np

from .glasso import (
    Centering,
    CovarianceConfig,
    Normalization,
    empirical_covariance,
    glasso_fit,
    select_graph,
)
from .graphs import Graph, empty_graph
from .numerics import derive_seed, make_rng, sample_standard_normal
from .rigidity import mlt

Z_95 = 1.96

# second component of SeedSequence keys; keeps MLT streams apart from trial streams
_MLT_STREAM = 1
_TRIAL_STREAM = 0

CSV_HEADER = ["p", "n", "alpha", "trials", "successes", "nonconverged", "q_hat", "ci_low", "ci_high"]


class Predicate(enum.Enum):
    MLT_AT_MOST_N = "atmost"
    MLT_LESS_THAN_N = "strict"

    def __call__(self, mlt_value: int, n: int) -> bool:
        if self is Predicate.MLT_AT_MOST_N:
            return mlt_value <= n
        return mlt_value < n


@dataclass
class GridConfig:
    p_values: list[int] = field(default_factory=lambda: list(range(3, 10)))
    alpha_start: float = 0.01
    alpha_stop: float = 1.5
    alpha_step: float = 0.01
    trials: int = 1000
    master_seed: int = 0
    covariance: CovarianceConfig = field(default_factory=CovarianceConfig)
    predicate: Predicate = Predicate.MLT_AT_MOST_N
    tol: float = 1e-6
    max_iter: int = 200

    def __post_init__(self):
        if not self.alpha_step > 0:
            raise ValueError(f"alpha_step must be positive, got {self.alpha_step}")
        if not self.alpha_start > 0:
            raise ValueError(f"alpha_start must be positive, got {self.alpha_start}")
        if self.alpha_stop < self.alpha_start:
            raise ValueError("alpha_stop is below alpha_start")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        for p in self.p_values:
            if not 1 <= p <= 9:
                raise ValueError(f"p must lie in 1..9, got {p}")

    @property
    def alpha_decimals(self) -> int:
        return max(_decimals(self.alpha_start), _decimals(self.alpha_step))

    def alphas(self) -> list[float]:
        count = int(math.floor((self.alpha_stop - self.alpha_start) / self.alpha_step + 1e-9)) + 1
        d = self.alpha_decimals
        return [round(self.alpha_start + k * self.alpha_step, d) for k in range(count)]

    def to_json(self) -> dict:
        out = asdict(self)
        out["covariance"] = {
            "normalization": self.covariance.normalization.value,
            "centering": self.covariance.centering.value,
        }
        out["predicate"] = self.predicate.value
        return out

    @classmethod
    def from_json(cls, data: dict) -> "GridConfig":
        data = dict(data)
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        if "covariance" in data:
            cov = data["covariance"]
            data["covariance"] = CovarianceConfig(
                Normalization(cov.get("normalization", Normalization.SAMPLE_AVERAGED.value)),
                Centering(cov.get("centering", Centering.ASSUME_ZERO_MEAN.value)),
            )
        if "predicate" in data:
            data["predicate"] = Predicate(data["predicate"])
        return cls(**data)


def _decimals(x: float) -> int:
    return max(0, -Decimal(repr(x)).normalize().as_tuple().exponent)


@dataclass(frozen=True)
class GridCellResult:
    p: int
    n: int
    alpha: float
    trials: int
    successes: int
    nonconverged: int
    q_hat: float
    ci_low: float
    ci_high: float


def wald_interval(successes: int, trials: int, z: float = Z_95) -> tuple[float, float, float]:
    """q_hat and the normal-approximation interval, clamped to [0, 1]."""
    q = successes / trials
    half = z * math.sqrt(q * (1 - q) / trials)
    return q, max(0.0, q - half), min(1.0, q + half)


class MltCache:
    """Memo of MLT values keyed by (p, edge bitmask).

    Misses are computed with a stream derived from the graph itself, so a
    cached value is a pure function of (seed, graph).
    """

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.table: dict[tuple[int, int], int] = {}
        self.misses = 0

    def __len__(self):
        return len(self.table)

    def __contains__(self, g: Graph):
        return (g.p, g.mask) in self.table

    def rng_for(self, g: Graph) -> np.random.Generator:
        return make_rng(derive_seed(self.seed, _MLT_STREAM, g.p, g.mask))


def mlt_cached(g: Graph, cache: MltCache, rng: np.random.Generator | None = None) -> int:
    key = (g.p, g.mask)
    hit = cache.table.get(key)
    if hit is not None:
        return hit
    value = mlt(g, rng if rng is not None else cache.rng_for(g))
    cache.table[key] = value
    cache.misses += 1
    return value


def run_cell(
    p: int,
    n: int,
    alpha: float,
    trials: int,
    seed: int,
    cfg: CovarianceConfig = CovarianceConfig(),
    *,
    alpha_index: int = 0,
    predicate: Predicate = Predicate.MLT_AT_MOST_N,
    cache: MltCache | None = None,
    tol: float = 1e-6,
    max_iter: int = 200,
) -> GridCellResult:
    if not 1 <= n <= p <= 9:
        raise ValueError(f"need 1 <= n <= p <= 9, got p={p}, n={n}")
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if cache is None:
        cache = MltCache(seed)
    successes = 0
    nonconverged = 0
    for t in range(trials):
        rng = make_rng(derive_seed(seed, _TRIAL_STREAM, p, n, alpha_index, t))
        X = sample_standard_normal(rng, p, n)
        S = empirical_covariance(X, cfg)
        if np.any(np.diag(S) <= 0):
            # zero-variance variable (e.g. centred data with n = 1): no finite
            # minimizer exists, record the trial as non-converged with no edges
            g = empty_graph(p)
            nonconverged += 1
        else:
            sol = glasso_fit(S, alpha, tol=tol, max_iter=max_iter)
            nonconverged += not sol.converged
            g = select_graph(sol).graph
        successes += predicate(mlt_cached(g, cache), n)
    q, lo, hi = wald_interval(successes, trials)
    return GridCellResult(p, n, alpha, trials, successes, nonconverged, q, lo, hi)


def _run_series(args) -> list[GridCellResult]:
    # one (p, n) series per task so the cache is shared along the alpha grid
    cfg, p, n = args
    cache = MltCache(cfg.master_seed)
    return [
        run_cell(
            p, n, alpha, cfg.trials, cfg.master_seed, cfg.covariance,
            alpha_index=k, predicate=cfg.predicate, cache=cache,
            tol=cfg.tol, max_iter=cfg.max_iter,
        )
        for k, alpha in enumerate(cfg.alphas())
    ]


def run_grid(
    cfg: GridConfig,
    parallelism: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> list[GridCellResult]:
    """All cells for p in cfg.p_values, n in 1..p, alpha on the grid, sorted by (p, n, alpha)."""
    tasks = [(cfg, p, n) for p in sorted(set(cfg.p_values)) for n in range(1, p + 1)]
    results: list[GridCellResult] = []
    if parallelism <= 1 or len(tasks) <= 1:
        for i, task in enumerate(tasks):
            results.extend(_run_series(task))
            if progress:
                progress(i + 1, len(tasks))
    else:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            for i, series in enumerate(pool.map(_run_series, tasks)):
                results.extend(series)
                if progress:
                    progress(i + 1, len(tasks))
    results.sort(key=lambda r: (r.p, r.n, r.alpha))
    return results


def write_csv(results: Iterable[GridCellResult], out, alpha_decimals: int = 2) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in results:
        writer.writerow([
            r.p, r.n, f"{r.alpha:.{alpha_decimals}f}", r.trials, r.successes, r.nonconverged,
            f"{r.q_hat:.6f}", f"{r.ci_low:.6f}", f"{r.ci_high:.6f}",
        ])


def results_to_csv(results: Iterable[GridCellResult], alpha_decimals: int = 2) -> str:
    buf = io.StringIO()
    write_csv(results, buf, alpha_decimals)
    return buf.getvalue()


def read_csv(source) -> list[GridCellResult]:
    """Parse rows written by :func:`write_csv`. ``source`` is a path or an open file."""
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, newline="") as fh:
            return read_csv(fh)
    reader = csv.DictReader(source)
    if reader.fieldnames is None or list(reader.fieldnames) != CSV_HEADER:
        raise ValueError(f"CSV header must be {','.join(CSV_HEADER)}, got {reader.fieldnames}")
    rows = []
    for line in reader:
        rows.append(GridCellResult(
            int(line["p"]), int(line["n"]), float(line["alpha"]), int(line["trials"]),
            int(line["successes"]), int(line["nonconverged"]), float(line["q_hat"]),
            float(line["ci_low"]), float(line["ci_high"]),
        ))
    return rows


def load_config(path) -> GridConfig:
    with open(path) as fh:
        return GridConfig.from_json(json.load(fh))


def stderr_progress(done: int, total: int) -> None:
    print(f"[{done}/{total}] series done", file=sys.stderr, flush=True)
