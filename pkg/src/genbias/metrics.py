"""The four bias scores over an embedding space.

Two families, each in a neutral-attribute and a gendered-pair variant:

* ECT: Spearman rank correlation between the attribute words'
  cosine similarities to the masculine target mean a1 and to the feminine
  target mean a2. 1.0 means the two rank orders agree (no bias).
* RND: signed sum over attributes of ``|avg(M) - p| - |avg(F) - p|``
  (Euclidean norms). 0 means both target groups sit equally far (no bias).

In the gendered variants the attribute is itself a (masculine, feminine)
word pair: the masculine member is compared against a1 / avg(M) and the
feminine member against a2 / avg(F).

Out-of-vocabulary words and half-OOV pairs are skipped and counted; a
category whose coverage falls below the configured floor raises
CoverageError instead of producing a misleading score.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .embedding_store import EmbeddingSpace
from .errors import CoverageError
from .lexicon import KIND_GENDERED, KIND_NEUTRAL, AttributeCategory, TargetPairSet
from .numerics import cosine, mean_vector, spearman
from .subspace import usable_pair_vectors

ECT_N = "ect_n"
RND_N = "rnd_n"
ECT_G = "ect_g"
RND_G = "rnd_g"
NEUTRAL_METRICS = (ECT_N, RND_N)
GENDERED_METRICS = (ECT_G, RND_G)
ALL_METRICS = NEUTRAL_METRICS + GENDERED_METRICS

DEFAULT_COVERAGE_FLOOR = 0.5

# (a1, a2): masculine and feminine target means, optionally precomputed by
# the caller to evaluate a transformed space against baseline means.
TargetMeans = tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True)
class BiasScores:
    """One (metric, category) cell with its per-word breakdown.

    ``per_word`` pairs each evaluated word (or masc/fem pair) with its
    contribution: for RND the summand, for ECT the diagnostic similarity
    gap s1 - s2. For RND metrics the value equals the contribution sum.
    """

    metric: str
    category: str
    value: float
    per_word: tuple[tuple[object, float], ...]
    n_used: int
    n_skipped: int

    def __post_init__(self):
        if self.metric not in ALL_METRICS:
            raise ValueError(f"unknown metric {self.metric!r}")
        if not np.isfinite(self.value):
            raise ValueError("bias score must be finite")
        if self.n_used < 1:
            raise ValueError("bias score needs at least one evaluated word")
        if self.metric in (ECT_N, ECT_G) and not -1.0 <= self.value <= 1.0:
            raise ValueError(f"rank correlation out of range: {self.value}")


def target_means(space: EmbeddingSpace, targets: TargetPairSet) -> TargetMeans:
    """Masculine mean a1 and feminine mean a2 over in-vocabulary pairs.

    A pair contributes only when both members are present, keeping the two
    means based on the same pairs. Raises CoverageError with no usable pair.
    """
    pair_vectors = usable_pair_vectors(space, targets)
    if not pair_vectors:
        raise CoverageError("no target pair has both members in vocabulary")
    a1 = mean_vector([m for m, _ in pair_vectors])
    a2 = mean_vector([f for _, f in pair_vectors])
    return a1, a2


def _require_kind(category: AttributeCategory, kind: str) -> None:
    if category.kind != kind:
        raise ValueError(
            f"category {category.name!r} has kind {category.kind!r}, expected {kind!r}"
        )


def _check_floor(category: AttributeCategory, n_used: int, floor: float) -> None:
    if not 0.0 <= floor <= 1.0:
        raise ValueError(f"coverage floor must be in [0, 1], got {floor}")
    total = len(category.words)
    if total and n_used / total < floor:
        raise CoverageError(
            f"category {category.name!r}: coverage {n_used}/{total} below floor {floor}"
        )


def _usable_words(space: EmbeddingSpace, category: AttributeCategory):
    words, vectors = [], []
    for w in category.words:
        v = space.lookup(w)
        if v is not None:
            words.append(w)
            vectors.append(v)
    return words, vectors


def _usable_word_pairs(space: EmbeddingSpace, category: AttributeCategory):
    pairs, masc_vecs, fem_vecs = [], [], []
    for masc, fem in category.words:
        mv = space.lookup(masc)
        fv = space.lookup(fem)
        if mv is not None and fv is not None:
            pairs.append((masc, fem))
            masc_vecs.append(mv)
            fem_vecs.append(fv)
    return pairs, masc_vecs, fem_vecs


def ect_neutral(
    space: EmbeddingSpace,
    targets: TargetPairSet,
    category: AttributeCategory,
    *,
    coverage_floor: float = DEFAULT_COVERAGE_FLOOR,
    means: Optional[TargetMeans] = None,
) -> BiasScores:
    """Rank coherence of neutral attribute words against the two target means.

    Needs at least 2 in-vocabulary attribute words. ``means`` overrides the
    (a1, a2) computed from this space, for baseline-mean comparisons.
    """
    _require_kind(category, KIND_NEUTRAL)
    a1, a2 = means if means is not None else target_means(space, targets)
    words, vectors = _usable_words(space, category)
    _check_floor(category, len(words), coverage_floor)
    if len(words) < 2:
        raise CoverageError(
            f"category {category.name!r}: rank correlation needs >= 2 usable words, "
            f"got {len(words)}"
        )
    s1 = [cosine(v, a1) for v in vectors]
    s2 = [cosine(v, a2) for v in vectors]
    value = spearman(s1, s2)
    per_word = tuple((w, x - y) for w, x, y in zip(words, s1, s2))
    return BiasScores(
        metric=ECT_N,
        category=category.name,
        value=value,
        per_word=per_word,
        n_used=len(words),
        n_skipped=len(category.words) - len(words),
    )


def rnd_neutral(
    space: EmbeddingSpace,
    targets: TargetPairSet,
    category: AttributeCategory,
    *,
    coverage_floor: float = DEFAULT_COVERAGE_FLOOR,
    means: Optional[TargetMeans] = None,
) -> BiasScores:
    """Signed sum of relative norm distances for neutral attribute words.

    Per word p the contribution is |avg(M) - p| - |avg(F) - p|; positive
    means p sits closer to the feminine mean.
    """
    _require_kind(category, KIND_NEUTRAL)
    avg_m, avg_f = means if means is not None else target_means(space, targets)
    words, vectors = _usable_words(space, category)
    _check_floor(category, len(words), coverage_floor)
    if not words:
        raise CoverageError(f"category {category.name!r}: no usable words")
    contributions = [
        float(np.linalg.norm(avg_m - v) - np.linalg.norm(avg_f - v)) for v in vectors
    ]
    return BiasScores(
        metric=RND_N,
        category=category.name,
        value=float(sum(contributions)),
        per_word=tuple(zip(words, contributions)),
        n_used=len(words),
        n_skipped=len(category.words) - len(words),
    )


def ect_gendered(
    space: EmbeddingSpace,
    targets: TargetPairSet,
    category: AttributeCategory,
    *,
    coverage_floor: float = DEFAULT_COVERAGE_FLOOR,
    means: Optional[TargetMeans] = None,
) -> BiasScores:
    """Rank coherence for gendered attribute pairs.

    Masculine members are ranked by similarity to a1, feminine members by
    similarity to a2; an unbiased space ranks the two lists coherently.
    Needs at least 2 fully in-vocabulary pairs.
    """
    _require_kind(category, KIND_GENDERED)
    a1, a2 = means if means is not None else target_means(space, targets)
    pairs, masc_vecs, fem_vecs = _usable_word_pairs(space, category)
    _check_floor(category, len(pairs), coverage_floor)
    if len(pairs) < 2:
        raise CoverageError(
            f"category {category.name!r}: rank correlation needs >= 2 usable pairs, "
            f"got {len(pairs)}"
        )
    s1 = [cosine(v, a1) for v in masc_vecs]
    s2 = [cosine(v, a2) for v in fem_vecs]
    value = spearman(s1, s2)
    per_word = tuple((p, x - y) for p, x, y in zip(pairs, s1, s2))
    return BiasScores(
        metric=ECT_G,
        category=category.name,
        value=value,
        per_word=per_word,
        n_used=len(pairs),
        n_skipped=len(category.words) - len(pairs),
    )


def rnd_gendered(
    space: EmbeddingSpace,
    targets: TargetPairSet,
    category: AttributeCategory,
    *,
    coverage_floor: float = DEFAULT_COVERAGE_FLOOR,
    means: Optional[TargetMeans] = None,
) -> BiasScores:
    """Signed sum of relative norm distances for gendered attribute pairs.

    Per pair (p1 masculine, p2 feminine) the contribution is
    |avg(M) - p1| - |avg(F) - p2|.
    """
    _require_kind(category, KIND_GENDERED)
    avg_m, avg_f = means if means is not None else target_means(space, targets)
    pairs, masc_vecs, fem_vecs = _usable_word_pairs(space, category)
    _check_floor(category, len(pairs), coverage_floor)
    if not pairs:
        raise CoverageError(f"category {category.name!r}: no usable pairs")
    contributions = [
        float(np.linalg.norm(avg_m - mv) - np.linalg.norm(avg_f - fv))
        for mv, fv in zip(masc_vecs, fem_vecs)
    ]
    return BiasScores(
        metric=RND_G,
        category=category.name,
        value=float(sum(contributions)),
        per_word=tuple(zip(pairs, contributions)),
        n_used=len(pairs),
        n_skipped=len(category.words) - len(pairs),
    )


METRIC_FUNCTIONS = {
    ECT_N: ect_neutral,
    RND_N: rnd_neutral,
    ECT_G: ect_gendered,
    RND_G: rnd_gendered,
}


def metrics_for_kind(kind: str) -> tuple[str, ...]:
    """Which metrics apply to a category of the given kind."""
    return NEUTRAL_METRICS if kind == KIND_NEUTRAL else GENDERED_METRICS
