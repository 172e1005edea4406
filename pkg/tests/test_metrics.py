import math

import numpy as np
import pytest

from genbias.embedding_store import normalize
from genbias.errors import CoverageError
from genbias.lexicon import (
    KIND_GENDERED,
    KIND_NEUTRAL,
    AttributeCategory,
    TargetPairSet,
)
from genbias.metrics import (
    BiasScores,
    ECT_G,
    ECT_N,
    RND_G,
    RND_N,
    ect_gendered,
    ect_neutral,
    rnd_gendered,
    rnd_neutral,
    target_means,
)

from .conftest import build_space, random_space, random_targets


def pair_set(*pairs):
    return TargetPairSet(pairs=tuple(pairs), language="t")


def neutral(*words, name="attrs"):
    return AttributeCategory(name=name, kind=KIND_NEUTRAL, words=tuple(words))


def gendered(*pairs, name="attr_pairs"):
    return AttributeCategory(name=name, kind=KIND_GENDERED, words=tuple(pairs))


def on_circle(angle_degrees):
    rad = math.radians(angle_degrees)
    return [math.cos(rad), math.sin(rad)]


# single usable target pair at (1,0) / (0,1); second pair out of vocabulary
AXIS_TARGETS = pair_set(("tm", "tf"), ("tm_oov", "tf_oov"))


def axis_space(extra):
    return build_space({"tm": [1.0, 0.0], "tf": [0.0, 1.0], **extra})


class TestTargetMeans:
    def test_means_over_usable_pairs(self):
        space = build_space(
            {"m1": [1, 0], "f1": [0, 1], "m2": [3, 0], "f2": [0, 3]}
        )
        a1, a2 = target_means(space, pair_set(("m1", "f1"), ("m2", "f2")))
        np.testing.assert_allclose(a1, [2.0, 0.0])
        np.testing.assert_allclose(a2, [0.0, 2.0])

    def test_pairs_skipped_as_a_unit(self):
        # m2 present but f2 missing: the pair must not count toward either mean
        space = build_space({"m1": [1, 0], "f1": [0, 1], "m2": [9, 9]})
        a1, a2 = target_means(space, pair_set(("m1", "f1"), ("m2", "f2")))
        np.testing.assert_allclose(a1, [1.0, 0.0])
        np.testing.assert_allclose(a2, [0.0, 1.0])

    def test_no_usable_pairs(self):
        space = build_space({"x": [1.0, 0.0]})
        with pytest.raises(CoverageError):
            target_means(space, pair_set(("m1", "f1"), ("m2", "f2")))


class TestEctNeutral:
    def test_identical_target_members_give_one(self):
        space = build_space(
            {
                "m1": [1.0, 2.0], "f1": [1.0, 2.0],
                "m2": [0.5, -1.0], "f2": [0.5, -1.0],
                "p1": [1.0, 0.1], "p2": [0.3, 0.9], "p3": [-0.7, 0.4],
            }
        )
        scores = ect_neutral(
            space, pair_set(("m1", "f1"), ("m2", "f2")), neutral("p1", "p2", "p3")
        )
        assert scores.value == 1.0
        assert scores.metric == ECT_N
        assert scores.n_used == 3

    def test_reversed_ranks_give_minus_one(self):
        space = axis_space(
            {"p1": on_circle(10), "p2": on_circle(45), "p3": on_circle(80)}
        )
        scores = ect_neutral(space, AXIS_TARGETS, neutral("p1", "p2", "p3"))
        assert scores.value == -1.0

    def test_per_word_is_similarity_gap(self):
        space = axis_space({"p1": on_circle(10), "p2": on_circle(80)})
        scores = ect_neutral(space, AXIS_TARGETS, neutral("p1", "p2"))
        gaps = dict(scores.per_word)
        assert gaps["p1"] == pytest.approx(
            math.cos(math.radians(10)) - math.sin(math.radians(10)), abs=1e-12
        )

    def test_needs_two_usable_words(self):
        space = axis_space({"p1": [1.0, 0.5]})
        with pytest.raises(CoverageError):
            ect_neutral(space, AXIS_TARGETS, neutral("p1", "gone"), coverage_floor=0.0)

    def test_kind_mismatch_rejected(self):
        space = axis_space({"p1": [1.0, 0.5]})
        with pytest.raises(ValueError):
            ect_neutral(space, AXIS_TARGETS, gendered(("a", "b")))


class TestRndNeutral:
    def test_equal_group_means_give_zero(self):
        # crossed pairs make the two target means identical
        space = build_space(
            {
                "m1": [1.0, 0.0], "f1": [0.0, 1.0],
                "m2": [0.0, 1.0], "f2": [1.0, 0.0],
                "p1": [0.3, 0.8], "p2": [-0.5, 0.2],
            }
        )
        scores = rnd_neutral(
            space, pair_set(("m1", "f1"), ("m2", "f2")), neutral("p1", "p2")
        )
        assert scores.value == 0.0
        assert all(c == 0.0 for _, c in scores.per_word)

    def test_equidistant_word_contributes_zero(self):
        space = axis_space({"p1": [0.5, 0.5]})
        scores = rnd_neutral(space, AXIS_TARGETS, neutral("p1"), coverage_floor=0.0)
        assert scores.value == pytest.approx(0.0, abs=1e-12)

    def test_hand_geometry(self):
        # distance 0 to the masculine mean, sqrt(2) to the feminine mean
        space = axis_space({"p1": [1.0, 0.0]})
        scores = rnd_neutral(space, AXIS_TARGETS, neutral("p1"))
        assert scores.value == pytest.approx(-1.41421356, abs=1e-9)

    def test_value_is_sum_of_contributions(self):
        rng = np.random.default_rng(3)
        space = random_space(rng, 20, 6)
        targets = random_targets(rng, space, 4)
        words = [w for w in sorted(space.words())[:8]]
        scores = rnd_neutral(space, targets, neutral(*words))
        assert scores.value == pytest.approx(
            sum(c for _, c in scores.per_word), abs=1e-9
        )
        assert scores.metric == RND_N


class TestEctGendered:
    def test_full_symmetry_gives_one(self):
        space = build_space(
            {
                "m1": [1.0, 2.0], "f1": [1.0, 2.0],
                "m2": [-1.0, 0.5], "f2": [-1.0, 0.5],
                "am": [0.9, 0.1], "af": [0.9, 0.1],
                "bm": [0.2, 0.8], "bf": [0.2, 0.8],
                "cm": [-0.4, 0.6], "cf": [-0.4, 0.6],
            }
        )
        scores = ect_gendered(
            space,
            pair_set(("m1", "f1"), ("m2", "f2")),
            gendered(("am", "af"), ("bm", "bf"), ("cm", "cf")),
        )
        assert scores.value == 1.0
        assert scores.metric == ECT_G

    def test_reversed_ranks_give_minus_one(self):
        # masculine members rank a>b>c against (1,0); the feminine members
        # at the same angles rank c>b>a against (0,1)
        space = axis_space(
            {
                "am": on_circle(10), "af": on_circle(10),
                "bm": on_circle(45), "bf": on_circle(45),
                "cm": on_circle(80), "cf": on_circle(80),
            }
        )
        scores = ect_gendered(
            space, AXIS_TARGETS, gendered(("am", "af"), ("bm", "bf"), ("cm", "cf"))
        )
        assert scores.value == -1.0

    def test_needs_two_usable_pairs(self):
        space = axis_space({"am": [1.0, 0.2], "af": [0.3, 1.0]})
        with pytest.raises(CoverageError):
            ect_gendered(
                space, AXIS_TARGETS, gendered(("am", "af"), ("bm", "bf")),
                coverage_floor=0.0,
            )

    def test_half_oov_pair_skipped(self):
        space = axis_space(
            {
                "am": on_circle(20), "af": on_circle(30),
                "bm": on_circle(50), "bf": on_circle(60),
                "cm": on_circle(70),  # cf missing
            }
        )
        scores = ect_gendered(
            space,
            AXIS_TARGETS,
            gendered(("am", "af"), ("bm", "bf"), ("cm", "cf")),
            coverage_floor=0.0,
        )
        assert scores.n_used == 2
        assert scores.n_skipped == 1


class TestRndGendered:
    def test_full_symmetry_gives_zero(self):
        space = build_space(
            {
                "m1": [1.0, 0.0], "f1": [0.0, 1.0],
                "m2": [0.0, 1.0], "f2": [1.0, 0.0],
                "am": [0.4, 0.7], "af": [0.4, 0.7],
                "bm": [-0.3, 0.1], "bf": [-0.3, 0.1],
            }
        )
        scores = rnd_gendered(
            space,
            pair_set(("m1", "f1"), ("m2", "f2")),
            gendered(("am", "af"), ("bm", "bf")),
        )
        assert scores.value == 0.0

    def test_equidistant_pair_contributes_zero(self):
        # |avg(M) - p1| = |(1,0)-(0,0.5)| = |(0,1)-(0.5,0)| = |avg(F) - p2|
        space = axis_space({"am": [0.0, 0.5], "af": [0.5, 0.0]})
        scores = rnd_gendered(
            space, AXIS_TARGETS, gendered(("am", "af")), coverage_floor=0.0
        )
        assert scores.value == pytest.approx(0.0, abs=1e-12)
        assert scores.metric == RND_G

    def test_value_is_sum_of_contributions(self):
        rng = np.random.default_rng(8)
        space = random_space(rng, 24, 5)
        targets = random_targets(rng, space, 4)
        rest = [w for w in sorted(space.words()) if w not in targets.masculine + targets.feminine]
        pairs = [(rest[i], rest[i + 1]) for i in range(0, 8, 2)]
        scores = rnd_gendered(space, targets, gendered(*pairs))
        assert scores.value == pytest.approx(
            sum(c for _, c in scores.per_word), abs=1e-9
        )


class TestCoverageFloor:
    def space_with_sparse_category(self):
        space = axis_space({"p1": [0.4, 0.9]})
        category = neutral("p1", "gone1", "gone2", "gone3")
        return space, category

    def test_below_floor_raises(self):
        space, category = self.space_with_sparse_category()
        with pytest.raises(CoverageError):
            rnd_neutral(space, AXIS_TARGETS, category, coverage_floor=0.5)

    def test_floor_zero_allows_sparse(self):
        space, category = self.space_with_sparse_category()
        scores = rnd_neutral(space, AXIS_TARGETS, category, coverage_floor=0.2)
        assert scores.n_used == 1
        assert scores.n_skipped == 3

    def test_invalid_floor_rejected(self):
        space, category = self.space_with_sparse_category()
        with pytest.raises(ValueError):
            rnd_neutral(space, AXIS_TARGETS, category, coverage_floor=1.5)


class TestSymmetryProperties:
    def random_setup(self, seed, n_pairs=5, n_attr=7, dim=6):
        rng = np.random.default_rng(seed)
        space = random_space(rng, 2 * n_pairs + 2 * n_attr + 4, dim)
        words = sorted(space.words())
        targets = pair_set(
            *[(words[2 * i], words[2 * i + 1]) for i in range(n_pairs)]
        )
        rest = words[2 * n_pairs :]
        attr_words = rest[:n_attr]
        attr_pairs = [(rest[n_attr + 2 * i], rest[n_attr + 2 * i + 1]) for i in range(n_attr // 2)]
        return space, targets, neutral(*attr_words), gendered(*attr_pairs)

    @pytest.mark.parametrize("seed", range(5))
    def test_ect_invariant_under_role_swap(self, seed):
        space, targets, category, _ = self.random_setup(seed)
        forward = ect_neutral(space, targets, category)
        swapped = ect_neutral(space, targets.swapped(), category)
        assert swapped.value == pytest.approx(forward.value, abs=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_rnd_neutral_negates_under_role_swap(self, seed):
        space, targets, category, _ = self.random_setup(seed)
        forward = rnd_neutral(space, targets, category)
        swapped = rnd_neutral(space, targets.swapped(), category)
        assert swapped.value == pytest.approx(-forward.value, abs=1e-9)

    @pytest.mark.parametrize("seed", range(5))
    def test_rnd_gendered_negates_under_double_swap(self, seed):
        space, targets, _, attr_pairs = self.random_setup(seed)
        swapped_pairs = gendered(*[(f, m) for m, f in attr_pairs.words])
        forward = rnd_gendered(space, targets, attr_pairs)
        swapped = rnd_gendered(space, targets.swapped(), swapped_pairs)
        assert swapped.value == pytest.approx(-forward.value, abs=1e-9)

    @pytest.mark.parametrize("alpha", [2.0, 3.7, 0.25])
    def test_ect_invariant_under_global_scaling(self, alpha):
        space, targets, category, attr_pairs = self.random_setup(99)
        scaled = build_space({w: alpha * space.lookup(w) for w in space.words()})
        assert ect_neutral(scaled, targets, category).value == pytest.approx(
            ect_neutral(space, targets, category).value, abs=1e-9
        )
        assert ect_gendered(scaled, targets, attr_pairs).value == pytest.approx(
            ect_gendered(space, targets, attr_pairs).value, abs=1e-9
        )

    @pytest.mark.parametrize("seed", range(3))
    def test_rnd_contributions_bounded_on_unit_sphere(self, seed):
        space, targets, category, attr_pairs = self.random_setup(seed, dim=8)
        unit = normalize(space)
        for scores in (
            rnd_neutral(unit, targets, category),
            rnd_gendered(unit, targets, attr_pairs),
        ):
            for _, contribution in scores.per_word:
                assert abs(contribution) <= 2.0 + 1e-9


class TestBiasScoresType:
    def test_rejects_unknown_metric(self):
        with pytest.raises(ValueError):
            BiasScores(
                metric="bogus", category="c", value=0.0, per_word=(), n_used=1, n_skipped=0
            )

    def test_rejects_out_of_range_correlation(self):
        with pytest.raises(ValueError):
            BiasScores(
                metric=ECT_N, category="c", value=1.5, per_word=(), n_used=2, n_skipped=0
            )

    def test_rejects_zero_words(self):
        with pytest.raises(ValueError):
            BiasScores(
                metric=RND_N, category="c", value=0.0, per_word=(), n_used=0, n_skipped=3
            )
