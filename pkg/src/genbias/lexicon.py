"""Target gender pairs and attribute categories: the word lists behind every metric.

On-disk format is a JSON document (UTF-8):

    {
      "language": "hi",
      "target_pairs": [["raja", "rani"], ["purush", "mahila"]],
      "categories": [
        {"name": "anger", "kind": "neutral", "words": ["krodh", "rosh"]},
        {"name": "occupations_gendered", "kind": "gendered_pairs",
         "words": [["abhineta", "abhinetri"]]}
      ]
    }

Target pairs and gendered attribute pairs are stored masculine-first;
every downstream sign convention keys off that order. Word order in the
file is preserved and is the evaluation order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from .embedding_store import EmbeddingSpace
from .errors import LexiconError

KIND_NEUTRAL = "neutral"
KIND_GENDERED = "gendered_pairs"
KINDS = (KIND_NEUTRAL, KIND_GENDERED)

# A coverage report entry keys either a plain word or a (masc, fem) pair.
Entry = Union[str, tuple[str, str]]


@dataclass(frozen=True)
class TargetPairSet:
    """Ordered (masculine, feminine) seed pairs defining the gender concept."""

    pairs: tuple[tuple[str, str], ...]
    language: str

    def __post_init__(self):
        if len(self.pairs) < 2:
            raise LexiconError("target set needs at least 2 pairs")
        seen = set()
        for pair in self.pairs:
            if len(pair) != 2 or not pair[0] or not pair[1]:
                raise LexiconError(f"malformed target pair {pair!r}")
            if pair in seen:
                raise LexiconError(f"duplicate target pair {pair!r}")
            seen.add(pair)

    @property
    def masculine(self) -> tuple[str, ...]:
        return tuple(m for m, _ in self.pairs)

    @property
    def feminine(self) -> tuple[str, ...]:
        return tuple(f for _, f in self.pairs)

    def swapped(self) -> "TargetPairSet":
        """Roles exchanged: feminine words become the first pair member."""
        return TargetPairSet(
            pairs=tuple((f, m) for m, f in self.pairs), language=self.language
        )


@dataclass(frozen=True)
class AttributeCategory:
    """One named attribute list, either plain words or masc/fem pairs."""

    name: str
    kind: str
    words: tuple

    def __post_init__(self):
        if not self.name:
            raise LexiconError("category name must be non-empty")
        if self.kind not in KINDS:
            raise LexiconError(f"category {self.name!r}: unknown kind {self.kind!r}")
        if len(self.words) == 0:
            raise LexiconError(f"category {self.name!r}: empty word list")
        if self.kind == KIND_NEUTRAL:
            for w in self.words:
                if not isinstance(w, str) or not w:
                    raise LexiconError(
                        f"category {self.name!r}: neutral entries must be non-empty words, got {w!r}"
                    )
        else:
            seen = set()
            for pair in self.words:
                if not isinstance(pair, tuple) or len(pair) != 2 or not pair[0] or not pair[1]:
                    raise LexiconError(
                        f"category {self.name!r}: gendered entries must be [masculine, feminine] pairs, got {pair!r}"
                    )
                if pair in seen:
                    raise LexiconError(f"category {self.name!r}: duplicate pair {pair!r}")
                seen.add(pair)

    def __len__(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class Lexicon:
    """A full lexicon document: target pairs plus attribute categories."""

    targets: TargetPairSet
    categories: tuple[AttributeCategory, ...]

    def all_words(self) -> set[str]:
        """Every distinct word mentioned anywhere in the lexicon."""
        words = set(self.targets.masculine) | set(self.targets.feminine)
        for cat in self.categories:
            if cat.kind == KIND_NEUTRAL:
                words.update(cat.words)
            else:
                for m, f in cat.words:
                    words.add(m)
                    words.add(f)
        return words

    def category(self, name: str) -> AttributeCategory:
        for cat in self.categories:
            if cat.name == name:
                return cat
        raise KeyError(name)


@dataclass(frozen=True)
class CategoryCoverage:
    """In-vocabulary counts for one category (or the target pair set)."""

    name: str
    kind: str
    total: int
    found: int
    oov: tuple[Entry, ...]

    @property
    def ratio(self) -> float:
        return self.found / self.total if self.total else 1.0


@dataclass(frozen=True)
class CoverageReport:
    """Per-category coverage plus an overall ratio over all entries."""

    categories: tuple[CategoryCoverage, ...]

    @property
    def overall_ratio(self) -> float:
        total = sum(c.total for c in self.categories)
        found = sum(c.found for c in self.categories)
        return found / total if total else 1.0

    def by_name(self, name: str) -> CategoryCoverage:
        for c in self.categories:
            if c.name == name:
                return c
        raise KeyError(name)


TARGET_COVERAGE_NAME = "target_pairs"

_TOP_KEYS = {"language", "target_pairs", "categories"}
_CATEGORY_KEYS = {"name", "kind", "words"}


def _as_pair(raw, context: str) -> tuple[str, str]:
    if (
        not isinstance(raw, list)
        or len(raw) != 2
        or not all(isinstance(w, str) and w for w in raw)
    ):
        raise LexiconError(f"{context}: expected a [masculine, feminine] pair, got {raw!r}")
    return (raw[0], raw[1])


def load_lexicon(path) -> Lexicon:
    """Parse and validate a lexicon JSON document.

    Raises LexiconError on any schema violation: wrong types, unknown
    keys or kind tags, empty or duplicate entries.
    """
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise LexiconError(f"{path}: not valid JSON: {exc}") from None

    if not isinstance(doc, dict):
        raise LexiconError(f"{path}: top level must be an object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise LexiconError(f"{path}: unknown top-level keys {sorted(unknown)}")
    missing = _TOP_KEYS - set(doc)
    if missing:
        raise LexiconError(f"{path}: missing top-level keys {sorted(missing)}")
    if not isinstance(doc["language"], str):
        raise LexiconError(f"{path}: 'language' must be a string")
    if not isinstance(doc["target_pairs"], list) or not doc["target_pairs"]:
        raise LexiconError(f"{path}: 'target_pairs' must be a non-empty list")

    pairs = tuple(
        _as_pair(raw, f"{path}: target_pairs[{i}]")
        for i, raw in enumerate(doc["target_pairs"])
    )
    targets = TargetPairSet(pairs=pairs, language=doc["language"])

    if not isinstance(doc["categories"], list):
        raise LexiconError(f"{path}: 'categories' must be a list")
    categories = []
    names = set()
    for i, raw_cat in enumerate(doc["categories"]):
        context = f"{path}: categories[{i}]"
        if not isinstance(raw_cat, dict):
            raise LexiconError(f"{context}: expected an object")
        unknown = set(raw_cat) - _CATEGORY_KEYS
        if unknown:
            raise LexiconError(f"{context}: unknown keys {sorted(unknown)}")
        missing = _CATEGORY_KEYS - set(raw_cat)
        if missing:
            raise LexiconError(f"{context}: missing keys {sorted(missing)}")
        name, kind, words = raw_cat["name"], raw_cat["kind"], raw_cat["words"]
        if not isinstance(name, str) or not name:
            raise LexiconError(f"{context}: 'name' must be a non-empty string")
        if name in names:
            raise LexiconError(f"{context}: duplicate category name {name!r}")
        names.add(name)
        if kind not in KINDS:
            raise LexiconError(f"{context}: unknown kind {kind!r}, expected one of {KINDS}")
        if not isinstance(words, list) or not words:
            raise LexiconError(f"{context}: 'words' must be a non-empty list")
        if kind == KIND_NEUTRAL:
            for w in words:
                if not isinstance(w, str) or not w:
                    raise LexiconError(f"{context}: neutral entry {w!r} is not a word")
            entries = tuple(words)
        else:
            entries = tuple(
                _as_pair(raw, f"{context}: words[{j}]") for j, raw in enumerate(words)
            )
        categories.append(AttributeCategory(name=name, kind=kind, words=entries))

    return Lexicon(targets=targets, categories=tuple(categories))


def _pair_coverage(pairs, space: EmbeddingSpace):
    found = 0
    oov = []
    for pair in pairs:
        if pair[0] in space and pair[1] in space:
            found += 1
        else:
            oov.append(pair)
    return found, tuple(oov)


def validate_coverage(lexicon: Lexicon, space: EmbeddingSpace) -> CoverageReport:
    """Check every lexicon entry against the space via exact lookup.

    A gendered pair counts as found only when both members are
    in-vocabulary. The target pair set appears as a pseudo-category named
    ``target_pairs``. Neither input is mutated.
    """
    rows = []
    found, oov = _pair_coverage(lexicon.targets.pairs, space)
    rows.append(
        CategoryCoverage(
            name=TARGET_COVERAGE_NAME,
            kind=KIND_GENDERED,
            total=len(lexicon.targets.pairs),
            found=found,
            oov=oov,
        )
    )
    for cat in lexicon.categories:
        if cat.kind == KIND_NEUTRAL:
            cat_oov = tuple(w for w in cat.words if w not in space)
            cat_found = len(cat.words) - len(cat_oov)
        else:
            cat_found, cat_oov = _pair_coverage(cat.words, space)
        rows.append(
            CategoryCoverage(
                name=cat.name,
                kind=cat.kind,
                total=len(cat.words),
                found=cat_found,
                oov=cat_oov,
            )
        )
    return CoverageReport(categories=tuple(rows))
