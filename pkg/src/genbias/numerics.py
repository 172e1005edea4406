"""Dimension-agnostic numerical kernel.

Vector arithmetic, the dominant principal component via power iteration,
and tie-aware Spearman rank correlation. All functions are pure, operate
in float64 regardless of input dtype, and use no randomness, so repeated
calls on the same input give identical results.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceError, DegenerateInputError

# Power-iteration budget: convergence is measured as the direction change
# between consecutive iterates.
PC_TOL = 1e-12
PC_MAX_ITER = 10_000


def cosine(u, v) -> float:
    """Cosine similarity of two nonzero vectors, clamped to [-1, 1].

    Raises ValueError on a zero-norm input or a shape mismatch.
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape or u.ndim != 1:
        raise ValueError(f"expected two equal-length vectors, got {u.shape} and {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine similarity is undefined for a zero vector")
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))


def mean_vector(vectors) -> np.ndarray:
    """Component-wise arithmetic mean of a nonempty sequence of vectors."""
    if len(vectors) == 0:
        raise ValueError("mean of an empty vector list")
    m = np.asarray(vectors, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError("vectors must share a common length")
    return m.mean(axis=0)


def first_principal_component(rows, center: bool = False) -> np.ndarray:
    """Unit vector maximizing the summed squared projections of ``rows``.

    Equivalently the first right singular vector of the (optionally
    column-mean centered) row matrix. Computed by power iteration on the
    d x d Gram matrix from the deterministic start (1, ..., 1)/sqrt(d),
    stopping when the direction change between iterates drops below
    ``PC_TOL`` (at most ``PC_MAX_ITER`` iterations). If the start vector
    has a near-zero Gram image it falls back to standard basis vectors.

    The sign is canonicalized so the largest-magnitude component is
    positive; callers that need a semantic orientation flip it themselves.

    Raises DegenerateInputError on an identically-zero matrix and
    ConvergenceError when the iteration budget is exhausted.
    """
    m = np.asarray(rows, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a nonempty 2-d row matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("row matrix contains non-finite entries")
    if center:
        m = m - m.mean(axis=0)
    if not m.any():
        raise DegenerateInputError("row matrix is identically zero")

    d = m.shape[1]
    gram = m.T @ m
    image_floor = 1e-14 * float(np.linalg.norm(gram))

    x = np.full(d, 1.0 / math.sqrt(d))
    if float(np.linalg.norm(gram @ x)) <= image_floor:
        # Start orthogonal to the dominant eigenspace (e.g. rows that sum
        # to zero). Some basis vector must have a nonzero image.
        for k in range(d):
            x = np.zeros(d)
            x[k] = 1.0
            if float(np.linalg.norm(gram @ x)) > image_floor:
                break
        else:  # pragma: no cover - excluded by the zero-matrix check
            raise DegenerateInputError("Gram matrix has no usable start vector")

    for _ in range(PC_MAX_ITER):
        y = gram @ x
        ny = float(np.linalg.norm(y))
        if ny == 0.0:  # pragma: no cover - PSD Gram keeps iterates out of the nullspace
            raise DegenerateInputError("power iteration hit the Gram nullspace")
        x_new = y / ny
        converged = 1.0 - abs(float(np.dot(x_new, x))) <= PC_TOL
        x = x_new
        if converged:
            break
    else:
        raise ConvergenceError(
            f"power iteration did not converge within {PC_MAX_ITER} iterations"
        )

    k = int(np.argmax(np.abs(x)))
    if x[k] < 0.0:
        x = -x
    return x / float(np.linalg.norm(x))


def fractional_ranks(values) -> np.ndarray:
    """Tie-averaged (fractional) 1-based ranks, O(n log n) via argsort.

    Equal values all receive the mean of the rank positions they occupy,
    e.g. [10, 20, 20, 30] -> [1.0, 2.5, 2.5, 4.0].
    """
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("ranks are defined for 1-d arrays")
    n = x.size
    order = np.argsort(x, kind="stable")
    ranks = np.empty(n, dtype=np.float64)
    i = 0
    while i < n:
        j = i
        while j + 1 < n and x[order[j + 1]] == x[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def spearman(xs, ys) -> float:
    """Spearman rank correlation with average ranks for ties.

    Pearson correlation of the two fractional-rank vectors, clamped to
    [-1, 1]. Returns 0.0 when either rank vector is constant (the
    correlation is undefined there). Requires equal lengths n >= 2.
    """
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"expected two equal-length arrays, got {x.shape} and {y.shape}")
    if x.size < 2:
        raise ValueError("spearman requires at least 2 observations")
    rx = fractional_ranks(x)
    ry = fractional_ranks(y)
    rx -= rx.mean()
    ry -= ry.mean()
    # Centered ranks are exact half-integers, so these dot products are
    # exact for any realistic n; the single square root then makes the
    # result exactly +-1.0 for perfectly agreeing or reversed orders.
    sx2 = float(np.dot(rx, rx))
    sy2 = float(np.dot(ry, ry))
    if sx2 == 0.0 or sy2 == 0.0:
        return 0.0
    return float(np.clip(np.dot(rx, ry) / math.sqrt(sx2 * sy2), -1.0, 1.0))
