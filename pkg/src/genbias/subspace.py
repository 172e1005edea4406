"""Gender-direction extraction from target word pairs.

Two constructions of the unit direction:

* ``ripa``: stack the per-pair difference vectors (feminine - masculine)
  and take their first principal component.
* ``pca``: for each pair subtract the pair mean from both members, stack
  the two deviation rows per pair, and take the first principal component.

No additional column-mean centering is applied in either construction:
for the difference stack the column mean IS the average gender offset,
and the pair-mean subtraction already centers the deviation stack.

After extraction the sign is fixed feminine-positive: the direction's dot
product with (mean feminine - mean masculine) is made non-negative.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .embedding_store import EmbeddingSpace
from .errors import CoverageError, DegenerateInputError
from .lexicon import TargetPairSet
from .numerics import first_principal_component, mean_vector

logger = logging.getLogger(__name__)

METHOD_RIPA = "ripa"
METHOD_PCA = "pca"
METHODS = (METHOD_PCA, METHOD_RIPA)


@dataclass(frozen=True)
class GenderDirection:
    """Unit gender direction with provenance and a fixed sign convention.

    ``orientation_check`` is the dot product of the direction with
    (mean feminine - mean masculine) over the pairs used; the sign fix
    guarantees it is never negative.
    """

    vector: np.ndarray
    method: str
    n_pairs_used: int
    orientation_check: float

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown subspace method {self.method!r}")
        v = np.asarray(self.vector, dtype=np.float64)
        if abs(float(np.linalg.norm(v)) - 1.0) > 1e-10:
            raise ValueError("gender direction must be unit-norm")
        if self.orientation_check < 0.0:
            raise ValueError("orientation check must be non-negative after the sign fix")
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)


def usable_pair_vectors(
    space: EmbeddingSpace, targets: TargetPairSet
) -> list[tuple[np.ndarray, np.ndarray]]:
    """(masculine, feminine) vector pairs for pairs fully in-vocabulary.

    Pairs with either member OOV are skipped with a logged warning.
    """
    usable = []
    for masc, fem in targets.pairs:
        mv = space.lookup(masc)
        fv = space.lookup(fem)
        if mv is None or fv is None:
            logger.warning("target pair (%s, %s) skipped: member out of vocabulary", masc, fem)
            continue
        usable.append((mv, fv))
    return usable


def _oriented(vector: np.ndarray, pair_vectors) -> tuple[np.ndarray, float]:
    avg_m = mean_vector([m for m, _ in pair_vectors])
    avg_f = mean_vector([f for _, f in pair_vectors])
    check = float(np.dot(vector, avg_f - avg_m))
    if check < 0.0:
        vector = -vector
        check = -check
    return vector, check


def ripa_direction(space: EmbeddingSpace, targets: TargetPairSet) -> GenderDirection:
    """Gender direction from the stacked per-pair difference vectors.

    Needs at least one fully in-vocabulary pair. Raises CoverageError when
    no pair is usable and DegenerateInputError when every difference is
    the zero vector.
    """
    pair_vectors = usable_pair_vectors(space, targets)
    if not pair_vectors:
        raise CoverageError("no target pair has both members in vocabulary")
    rows = np.array([f - m for m, f in pair_vectors])
    if not rows.any():
        raise DegenerateInputError("every target pair difference is the zero vector")
    vector = first_principal_component(rows, center=False)
    vector, check = _oriented(vector, pair_vectors)
    return GenderDirection(
        vector=vector,
        method=METHOD_RIPA,
        n_pairs_used=len(pair_vectors),
        orientation_check=check,
    )


def pca_direction(space: EmbeddingSpace, targets: TargetPairSet) -> GenderDirection:
    """Gender direction from pair-mean-centered deviation rows.

    Each usable pair contributes two rows: (feminine - pair mean) and
    (masculine - pair mean). A single usable pair yields two anti-parallel
    rows, which is permitted but logged. Raises CoverageError with zero
    usable pairs and DegenerateInputError when the stack is all zeros.
    """
    pair_vectors = usable_pair_vectors(space, targets)
    if not pair_vectors:
        raise CoverageError("no target pair has both members in vocabulary")
    if len(pair_vectors) == 1:
        logger.warning("pca direction from a single pair: two anti-parallel rows only")
    rows = []
    for m, f in pair_vectors:
        a = (m + f) / 2.0
        rows.append(f - a)
        rows.append(m - a)
    rows = np.array(rows)
    if not rows.any():
        raise DegenerateInputError("every pair-centered deviation row is the zero vector")
    vector = first_principal_component(rows, center=False)
    vector, check = _oriented(vector, pair_vectors)
    return GenderDirection(
        vector=vector,
        method=METHOD_PCA,
        n_pairs_used=len(pair_vectors),
        orientation_check=check,
    )


def build_direction(
    space: EmbeddingSpace, targets: TargetPairSet, method: str
) -> GenderDirection:
    """Dispatch on the method tag ('pca' or 'ripa')."""
    if method == METHOD_RIPA:
        return ripa_direction(space, targets)
    if method == METHOD_PCA:
        return pca_direction(space, targets)
    raise ValueError(f"unknown subspace method {method!r}")
