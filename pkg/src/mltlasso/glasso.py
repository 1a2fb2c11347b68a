"""Graphical lasso with an off-diagonal L1 penalty.

Minimizes ``tr(S K) - log det K + alpha * sum_{i != j} |K_ij|`` over positive
definite K. The diagonal is not penalized, so the optimal covariance estimate
W = K^{-1} keeps W_ii = S_ii.

The solver is block coordinate descent over columns of W. Each column solves
the lasso subproblem

    min_b  0.5 b' W11 b - s12' b + alpha ||b||_1

by cyclic coordinate descent with soft-thresholding, so zeros in K are exact.
Iteration stops when the duality gap ``tr(S K) + alpha ||K||_off - p`` is
below ``tol`` in absolute value and W = K^{-1} matches diag(S) and stays in
the dual box, both to within ``tol``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from numba import njit

from .graphs import Graph, graph_from_edges
from .numerics import spd_inverse


class Normalization(enum.Enum):
    UNNORMALIZED = "unnormalized"  # S = X X'
    SAMPLE_AVERAGED = "sample"  # S = X X' / n


class Centering(enum.Enum):
    ASSUME_ZERO_MEAN = "zero-mean"
    CENTER_COLUMNS = "center"


@dataclass(frozen=True)
class CovarianceConfig:
    normalization: Normalization = Normalization.SAMPLE_AVERAGED
    centering: Centering = Centering.ASSUME_ZERO_MEAN


@dataclass
class GlassoSolution:
    K: np.ndarray
    W: np.ndarray
    alpha: float
    iterations: int
    duality_gap: float
    converged: bool


@dataclass(frozen=True)
class SelectedGraph:
    graph: Graph
    source_alpha: float


def empirical_covariance(X: np.ndarray, cfg: CovarianceConfig = CovarianceConfig()) -> np.ndarray:
    """Scatter matrix of the columns of a p x n data matrix."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] < 1:
        raise ValueError(f"data must be p x n with n >= 1, got shape {X.shape}")
    if cfg.centering is Centering.CENTER_COLUMNS:
        X = X - X.mean(axis=1, keepdims=True)
    S = X @ X.T
    if cfg.normalization is Normalization.SAMPLE_AVERAGED:
        S /= X.shape[1]
    return (S + S.T) / 2


def alpha_max(S: np.ndarray) -> float:
    """Smallest alpha at which the solution is diagonal: max_{i != j} |S_ij|."""
    S = np.asarray(S, dtype=float)
    if S.shape[0] < 2:
        return 0.0
    off = np.abs(S - np.diag(np.diag(S)))
    return float(off.max())


def objective(S: np.ndarray, K: np.ndarray, alpha: float) -> float:
    sign, logdet = np.linalg.slogdet(K)
    if sign <= 0:
        return np.inf
    off = np.abs(K).sum() - np.abs(np.diag(K)).sum()
    return float(np.sum(S * K) - logdet + alpha * off)


def duality_gap(S: np.ndarray, K: np.ndarray, alpha: float) -> float:
    K = np.asarray(K, dtype=float)
    try:
        np.linalg.cholesky(K)
    except np.linalg.LinAlgError:
        raise ValueError("precision matrix is not positive definite") from None
    off = np.abs(K).sum() - np.abs(np.diag(K)).sum()
    return float(np.sum(S * K) + alpha * off - K.shape[0])


@njit(cache=True)
def _soft(x, t):
    if x > t:
        return x - t
    if x < -t:
        return x + t
    return 0.0


@njit(cache=True)
def _stationary(S, K, alpha, tol):
    """W = K^{-1} keeps the diagonal of S and stays in the box |S_ij - W_ij| <= alpha."""
    W = np.linalg.inv(K)
    p = S.shape[0]
    for a in range(p):
        if abs(W[a, a] - S[a, a]) > tol:
            return False
        for b in range(p):
            if a != b and abs(S[a, b] - W[a, b]) > alpha + tol:
                return False
    return True


@njit(cache=True)
def _bcd(S, alpha, tol, max_iter, W, K, B):
    """Runs sweeps in place on W, K and the coefficient matrix B.

    Returns (iterations, gap, converged, best_W, best_K, best_gap).
    """
    p = S.shape[0]
    inner_tol = tol / 1000.0
    max_inner = 10000
    best_gap = np.inf
    best_W = W.copy()
    best_K = K.copy()
    gap = np.inf
    it = 0
    for it in range(1, max_iter + 1):
        ok = True
        for j in range(p):
            # lasso for column j; B[:, j] holds the warm start, B[j, j] unused.
            # Errors in b reach the gap multiplied by K_jj, hence the scaling.
            col_tol = inner_tol / max(1.0, K[j, j] * W[j, j])
            for _ in range(max_inner):
                delta = 0.0
                for k in range(p):
                    if k == j:
                        continue
                    r = S[k, j]
                    for l in range(p):
                        if l != j and l != k:
                            r -= W[k, l] * B[l, j]
                    new = _soft(r, alpha) / W[k, k]
                    d = abs(new - B[k, j]) * W[k, k]
                    if d > delta:
                        delta = d
                    B[k, j] = new
                if delta < col_tol:
                    break
            quad = 0.0
            for k in range(p):
                if k == j:
                    continue
                w = 0.0
                for l in range(p):
                    if l != j:
                        w += W[k, l] * B[l, j]
                W[k, j] = w
                W[j, k] = w
                quad += w * B[k, j]
            denom = W[j, j] - quad
            if not denom > 0.0:
                ok = False
                break
            kjj = 1.0 / denom
            K[j, j] = kjj
            for k in range(p):
                if k != j:
                    K[k, j] = -B[k, j] * kjj
                    K[j, k] = K[k, j]
        if not ok:
            break
        gap = -float(p)
        for a in range(p):
            for b in range(p):
                gap += S[a, b] * K[a, b]
                if a != b:
                    gap += alpha * abs(K[a, b])
        if abs(gap) < best_gap:
            best_gap = abs(gap)
            best_W[:, :] = W
            best_K[:, :] = K
        if abs(gap) < tol and _stationary(S, K, alpha, tol):
            return it, gap, True, best_W, best_K, best_gap
    return it, gap, False, best_W, best_K, best_gap


def glasso_fit(S: np.ndarray, alpha: float, tol: float = 1e-6, max_iter: int = 200) -> GlassoSolution:
    S = np.ascontiguousarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ValueError(f"S must be square, got shape {S.shape}")
    p = S.shape[0]
    if p == 0:
        raise ValueError("S is empty")
    if not np.all(np.isfinite(S)):
        raise ValueError("S has non-finite entries")
    if not np.allclose(S, S.T, rtol=1e-10, atol=1e-12):
        raise ValueError("S is not symmetric")
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    diag = np.diag(S).copy()
    if np.any(diag <= 0):
        # the objective is unbounded below when some variable has zero variance
        raise ValueError("S has a non-positive diagonal entry")
    S = (S + S.T) / 2

    amax = alpha_max(S)
    if amax <= alpha:
        K = np.diag(1.0 / diag)
        return GlassoSolution(K, np.diag(diag), alpha, 0, duality_gap(S, K, alpha), True)

    # dual-feasible, positive definite start: shrink off-diagonals just into the box
    t = 1.0 - alpha / amax
    W = t * S + (1.0 - t) * np.diag(diag)
    K = np.linalg.inv(W)
    K = (K + K.T) / 2
    B = np.zeros((p, p))
    it, gap, converged, best_W, best_K, best_gap = _bcd(S, float(alpha), float(tol), int(max_iter), W, K, B)
    if not converged:
        K, W = best_K, best_W
    # report W as the exact inverse of K; the sweep's W lags K by one column update
    if _is_pd(K):
        W = spd_inverse(K)
        gap = duality_gap(S, K, alpha)
    else:
        gap = np.inf
    # + 0.0 turns the -0.0 left by soft-thresholding into 0.0
    return GlassoSolution(K + 0.0, W, alpha, it, gap, converged)


def _is_pd(K: np.ndarray) -> bool:
    try:
        np.linalg.cholesky(K)
    except np.linalg.LinAlgError:
        return False
    return True


def select_graph(sol: GlassoSolution, zero_tol: float = 0.0) -> SelectedGraph:
    """Edge {i, j} whenever |K_ij| > zero_tol."""
    K = sol.K
    p = K.shape[0]
    edges = [(i + 1, j + 1) for i in range(p) for j in range(i + 1, p) if abs(K[i, j]) > zero_tol]
    return SelectedGraph(graph_from_edges(p, edges), sol.alpha)
