"""Rigidity matrices, generic rank, generic completion rank and the MLT.

For graphs on at most 9 vertices the maximum likelihood threshold equals the
generic completion rank (GCR): the least n such that the rigidity matrix in
dimension n - 1 has full row rank |E| at a generic configuration.

Generic ranks are computed exactly over GF(q), q = 2**62 - 57, from uniformly
random configurations. A random evaluation can only under-estimate the
generic rank, and does so with probability at most deg/q per trial, so we
take the maximum over a few independent trials.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph
from .numerics import FIELD_PRIME, field_rank, sample_uniform_field

MAX_MLT_VERTICES = 9


@dataclass(frozen=True)
class RigidityMatrix:
    graph: Graph
    dim: int
    body: np.ndarray  # |E| x (p * dim), column (i, k) at i * dim + k


@dataclass(frozen=True)
class GenericRankReport:
    graph: Graph
    dim: int
    rank: int
    trials: int


def rigidity_matrix(g: Graph, X, modulus: int | None = None) -> RigidityMatrix:
    """Row for edge {i, j} holds X[i] - X[j] in the block of vertex i and X[j] - X[i] in block j.

    With ``modulus`` set, X must hold integers and entries are reduced mod the prime.
    """
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != g.p:
        raise ValueError(f"configuration must have shape ({g.p}, n), got {X.shape}")
    n = X.shape[1]
    edges = g.edges()
    if modulus is None:
        body = np.zeros((len(edges), g.p * n), dtype=float)
    else:
        body = np.zeros((len(edges), g.p * n), dtype=np.int64)
    for e, (i, j) in enumerate(edges):
        i, j = i - 1, j - 1
        diff = X[i] - X[j]
        if modulus is None:
            body[e, i * n:(i + 1) * n] = diff
            body[e, j * n:(j + 1) * n] = -diff
        else:
            body[e, i * n:(i + 1) * n] = diff % modulus
            body[e, j * n:(j + 1) * n] = -diff % modulus
    return RigidityMatrix(g, n, body)


def generic_rank(g: Graph, dim: int, rng: np.random.Generator, trials: int = 3) -> GenericRankReport:
    """Generic rank of the ``dim``-dimensional rigidity matrix of g.

    Stops early once a trial reaches min(|E|, p * dim): no evaluation can
    exceed the generic rank, so further trials could not raise the maximum.
    """
    if dim < 0:
        raise ValueError(f"dim must be non-negative, got {dim}")
    ceiling = min(g.n_edges, g.p * dim)
    if ceiling == 0:
        return GenericRankReport(g, dim, 0, 0)
    best = 0
    used = 0
    for _ in range(trials):
        X = sample_uniform_field(rng, g.p, dim)
        best = max(best, field_rank(rigidity_matrix(g, X, FIELD_PRIME).body))
        used += 1
        if best == ceiling:
            break
    return GenericRankReport(g, dim, best, used)


def gcr(g: Graph, rng: np.random.Generator) -> int:
    """Generic completion rank: least n >= 1 with generic rank |E| in dimension n - 1."""
    m = g.n_edges
    if m == 0:
        return 1
    for n in range(1, g.p + 2):
        d = n - 1
        # with p > d points in general position the d(d+1)/2 trivial motions lie
        # in the kernel, so more edges than p*d - d(d+1)/2 cannot be independent
        if g.p > d and m > g.p * d - d * (d + 1) // 2:
            continue
        if generic_rank(g, d, rng).rank == m:
            return n
    raise RuntimeError(f"no dimension up to p = {g.p} gives full rank for {g}; this is a bug")


def mlt(g: Graph, rng: np.random.Generator) -> int:
    """Maximum likelihood threshold of a graph on at most 9 vertices."""
    if g.p > MAX_MLT_VERTICES:
        raise ValueError(
            f"MLT equals the generic completion rank only for p <= {MAX_MLT_VERTICES}; got p = {g.p}"
        )
    return gcr(g, rng)
