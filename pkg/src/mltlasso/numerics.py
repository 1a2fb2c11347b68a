"""Seeded randomness, small dense linear algebra, and exact rank mod a prime.

Random streams use numpy's ``Generator`` over the PCG64 bit generator.
Normal variates come from ``Generator.standard_normal`` (numpy's ziggurat
method), which is bit-reproducible for a given seed across platforms.

Real matrices are plain ``float64`` numpy arrays. Prime-field matrices are
``int64`` arrays with entries in ``[0, FIELD_PRIME)``; elimination itself
runs on Python ints so products never overflow.
"""
from __future__ import annotations

import numpy as np
import scipy.linalg

# largest prime below 2**62
FIELD_PRIME = 2**62 - 57


class NotPositiveDefiniteError(np.linalg.LinAlgError):
    pass


def make_rng(seed) -> np.random.Generator:
    """PCG64 generator. ``seed`` may be an int, a sequence of ints or a SeedSequence."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def derive_seed(master_seed: int, *key: int) -> np.random.SeedSequence:
    """Child stream for ``key`` under ``master_seed``.

    SeedSequence hashes (entropy, spawn_key) into the PCG64 state, so streams
    for different keys are independent and do not depend on call order.
    """
    return np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(int(k) for k in key))


def sample_standard_normal(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    if rows < 1 or cols < 1:
        raise ValueError(f"shape must be positive, got ({rows}, {cols})")
    return rng.standard_normal((rows, cols))


def sample_uniform_field(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    if rows < 0 or cols < 0:
        raise ValueError(f"shape must be non-negative, got ({rows}, {cols})")
    return rng.integers(0, FIELD_PRIME, size=(rows, cols), dtype=np.int64)


def _check_square_symmetric(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    if not np.allclose(a, a.T, rtol=1e-10, atol=1e-12):
        raise ValueError("matrix is not symmetric")
    return a


def cholesky(a: np.ndarray) -> np.ndarray:
    """Lower-triangular L with L @ L.T == a."""
    a = _check_square_symmetric(a)
    try:
        return np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        raise NotPositiveDefiniteError("matrix is not positive definite") from None


def spd_inverse(a: np.ndarray) -> np.ndarray:
    a = _check_square_symmetric(a)
    try:
        factor = scipy.linalg.cho_factor(a, lower=True)
    except np.linalg.LinAlgError:
        raise NotPositiveDefiniteError("matrix is not positive definite") from None
    inv = scipy.linalg.cho_solve(factor, np.eye(a.shape[0]))
    return (inv + inv.T) / 2


def log_det(a: np.ndarray) -> float:
    L = cholesky(a)
    return float(2.0 * np.sum(np.log(np.diag(L))))


def field_rank(m, q: int = FIELD_PRIME) -> int:
    """Exact rank of an integer matrix over GF(q) by Gaussian elimination."""
    rows = [[int(x) % q for x in row] for row in np.asarray(m).tolist()]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        inv = pow(prow[c], -1, q)
        for i in range(rank + 1, len(rows)):
            f = rows[i][c]
            if f:
                f = f * inv % q
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank
