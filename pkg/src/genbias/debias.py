"""Debiased embedding spaces via projection along the gender direction.

* projection: every vector loses its component along the direction,
  ``w' = w - (w . v) v``, leaving it orthogonal to the gender axis.
* partial projection: projection plus a constant term derived from the
  mean of target-pair means, so gendered-by-definition words keep a
  common, nonzero gender coordinate instead of being flattened to zero.

The partial variant has two selectable semantics because the constant can
be read either as the full mean vector or as its component along the
direction:

* ``full_vector`` (default): ``w' = w - (w . v) v + mu``
* ``along_direction``:       ``w' = w - (w . v) v + (mu . v) v``

Transformed spaces are new objects; inputs are never mutated. The
``normalized`` flag is always cleared since projection changes norms.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .embedding_store import EmbeddingSpace
from .errors import CoverageError
from .lexicon import TargetPairSet
from .subspace import GenderDirection, usable_pair_vectors

METHOD_PROJECTION = "projection"
METHOD_PARTIAL = "partial_projection"
DEBIAS_METHODS = (METHOD_PROJECTION, METHOD_PARTIAL)

MU_FULL_VECTOR = "full_vector"
MU_ALONG_DIRECTION = "along_direction"
MU_MODES = (MU_FULL_VECTOR, MU_ALONG_DIRECTION)


@dataclass(frozen=True)
class MuVector:
    """Mean of the per-pair mean vectors over usable target pairs."""

    components: np.ndarray
    n_pairs: int

    def __post_init__(self):
        v = np.asarray(self.components, dtype=np.float64)
        if not np.isfinite(v).all():
            raise ValueError("mu vector must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "components", v)


@dataclass(frozen=True)
class DebiasConfig:
    """Which transform to run and how."""

    method: str
    mu_mode: str = MU_FULL_VECTOR
    exclude_targets: bool = False

    def __post_init__(self):
        if self.method not in DEBIAS_METHODS:
            raise ValueError(f"unknown debias method {self.method!r}")
        if self.mu_mode not in MU_MODES:
            raise ValueError(f"unknown mu mode {self.mu_mode!r}")


def compute_mu(space: EmbeddingSpace, targets: TargetPairSet) -> MuVector:
    """Per-pair mean of the two member vectors, then the mean over pairs."""
    pair_vectors = usable_pair_vectors(space, targets)
    if not pair_vectors:
        raise CoverageError("no target pair has both members in vocabulary")
    pair_means = [(m + f) / 2.0 for m, f in pair_vectors]
    return MuVector(
        components=np.mean(pair_means, axis=0), n_pairs=len(pair_vectors)
    )


def _check_dim(space: EmbeddingSpace, direction: GenderDirection) -> None:
    if direction.vector.shape != (space.dim,):
        raise ValueError(
            f"direction has dimension {direction.vector.shape[0]}, space has {space.dim}"
        )


def _transform(space, transform, skip: frozenset[str]) -> EmbeddingSpace:
    entries = {}
    for word, vec in space.entries.items():
        entries[word] = vec if word in skip else transform(vec)
    return EmbeddingSpace(dim=space.dim, entries=entries, normalized=False)


def _skip_set(exclude_targets: bool, targets: Optional[TargetPairSet]) -> frozenset[str]:
    if not exclude_targets:
        return frozenset()
    if targets is None:
        raise ValueError("exclude_targets requires the target pair set")
    return frozenset(targets.masculine) | frozenset(targets.feminine)


def project_out(
    space: EmbeddingSpace,
    direction: GenderDirection,
    *,
    exclude_targets: bool = False,
    targets: Optional[TargetPairSet] = None,
) -> EmbeddingSpace:
    """Remove every vector's component along the gender direction.

    With ``exclude_targets`` the target-set words are passed through
    untouched (``targets`` must then be given).
    """
    _check_dim(space, direction)
    v = direction.vector

    def transform(w):
        return w - np.dot(w, v) * v

    return _transform(space, transform, _skip_set(exclude_targets, targets))


def partial_project(
    space: EmbeddingSpace,
    direction: GenderDirection,
    mu: MuVector,
    *,
    mu_mode: str = MU_FULL_VECTOR,
    exclude_targets: bool = False,
    targets: Optional[TargetPairSet] = None,
) -> EmbeddingSpace:
    """Projection plus the constant mu term (see module docstring).

    ``mu`` must come from the same target set used to build ``direction``.
    """
    _check_dim(space, direction)
    if mu.components.shape != (space.dim,):
        raise ValueError(
            f"mu has dimension {mu.components.shape[0]}, space has {space.dim}"
        )
    if mu_mode not in MU_MODES:
        raise ValueError(f"unknown mu mode {mu_mode!r}")
    v = direction.vector
    if mu_mode == MU_FULL_VECTOR:
        constant = mu.components
    else:
        constant = np.dot(mu.components, v) * v

    def transform(w):
        return w - np.dot(w, v) * v + constant

    return _transform(space, transform, _skip_set(exclude_targets, targets))


def apply_debias(
    space: EmbeddingSpace,
    direction: GenderDirection,
    targets: TargetPairSet,
    config: DebiasConfig,
) -> EmbeddingSpace:
    """Run the configured transform, computing mu from ``space`` if needed."""
    if config.method == METHOD_PROJECTION:
        return project_out(
            space, direction, exclude_targets=config.exclude_targets, targets=targets
        )
    mu = compute_mu(space, targets)
    return partial_project(
        space,
        direction,
        mu,
        mu_mode=config.mu_mode,
        exclude_targets=config.exclude_targets,
        targets=targets,
    )
