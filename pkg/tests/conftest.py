import json

import numpy as np
import pytest

from genbias.embedding_store import EmbeddingSpace
from genbias.lexicon import (
    KIND_GENDERED,
    KIND_NEUTRAL,
    AttributeCategory,
    TargetPairSet,
)


def build_space(vectors: dict, normalized: bool = False) -> EmbeddingSpace:
    """EmbeddingSpace from {word: sequence-of-floats}."""
    entries = {w: np.asarray(v, dtype=np.float64) for w, v in vectors.items()}
    dim = len(next(iter(entries.values())))
    return EmbeddingSpace(dim=dim, entries=entries, normalized=normalized)


def random_space(rng, n_words: int, dim: int, prefix: str = "w") -> EmbeddingSpace:
    entries = {f"{prefix}{i}": rng.normal(size=dim) for i in range(n_words)}
    return EmbeddingSpace(dim=dim, entries=entries)


def random_targets(rng, space: EmbeddingSpace, n_pairs: int) -> TargetPairSet:
    """Pick 2*n_pairs distinct words from the space as target pairs."""
    words = sorted(space.words())
    chosen = rng.choice(len(words), size=2 * n_pairs, replace=False)
    pairs = tuple(
        (words[chosen[2 * i]], words[chosen[2 * i + 1]]) for i in range(n_pairs)
    )
    return TargetPairSet(pairs=pairs, language="test")


def planted_fixture(n_pairs=5, n_neutral=8, dim=8, seed=3):
    """Space with a bias axis planted along the first coordinate.

    Target pairs are b_i -/+ e1 with b_i orthogonal to e1, so the gender
    direction is exactly e1 and projecting it out makes each pair's two
    members identical. Neutral words carry alternating-sign components
    along e1, which correlates their similarity ranks with gender at
    baseline.
    """
    rng = np.random.default_rng(seed)
    e1 = np.zeros(dim)
    e1[0] = 1.0
    entries = {}
    pairs = []
    for i in range(n_pairs):
        b = np.zeros(dim)
        b[1:] = rng.normal(size=dim - 1)
        entries[f"m{i}"] = b - e1
        entries[f"f{i}"] = b + e1
        pairs.append((f"m{i}", f"f{i}"))
    words = []
    for j in range(n_neutral):
        q = np.zeros(dim)
        q[1:] = rng.normal(size=dim - 1)
        c = (0.3 + 0.5 * rng.random()) * (1.0 if j % 2 == 0 else -1.0)
        entries[f"p{j}"] = q + c * e1
        words.append(f"p{j}")
    space = EmbeddingSpace(dim=dim, entries=entries)
    targets = TargetPairSet(pairs=tuple(pairs), language="synthetic")
    category = AttributeCategory(
        name="planted_neutral", kind=KIND_NEUTRAL, words=tuple(words)
    )
    return space, targets, category


def write_lexicon(path, *, language="test", target_pairs, categories):
    doc = {"language": language, "target_pairs": target_pairs, "categories": categories}
    path.write_text(json.dumps(doc, ensure_ascii=False, indent=1), encoding="utf-8")
    return path


def neutral_category(name, words):
    return {"name": name, "kind": KIND_NEUTRAL, "words": list(words)}


def gendered_category(name, pairs):
    return {"name": name, "kind": KIND_GENDERED, "words": [list(p) for p in pairs]}


@pytest.fixture
def planted_files(tmp_path):
    """The planted fixture written out as .vec + lexicon files."""
    from genbias.embedding_store import save_vec

    space, targets, category = planted_fixture()
    vec_path = tmp_path / "planted.vec"
    save_vec(space, vec_path)
    lex_path = write_lexicon(
        tmp_path / "planted_lexicon.json",
        language="synthetic",
        target_pairs=[list(p) for p in targets.pairs],
        categories=[neutral_category(category.name, category.words)],
    )
    return vec_path, lex_path


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    severity = {"FAIL": 0, "SKIP": 1, "PASS": 2}
    rows = {}

    def note(nodeid, marker):
        name = nodeid.split("::")[-1]
        if name not in rows or severity[marker] < severity[rows[name]]:
            rows[name] = marker

    for outcome, marker in (
        ("failed", "FAIL"),
        ("error", "FAIL"),
        ("skipped", "SKIP"),
        ("passed", "PASS"),
    ):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            if outcome == "passed" and getattr(report, "when", "call") != "call":
                continue
            note(nodeid, marker)

    if rows:
        terminalreporter.section("acceptance criteria")
        for name in sorted(rows):
            terminalreporter.write_line(f"{rows[name]}  {name}")
