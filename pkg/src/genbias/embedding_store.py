"""Load, normalize, filter and persist static word-embedding spaces.

On-disk format is the standard text ``.vec`` layout: a header line
``<count> <dim>`` followed by one ``<word> <f1> ... <f_dim>`` line per
word, single-space separated, UTF-8, trailing newline optional. A line
with the wrong number of space-separated fields is a hard error.

Loading streams the file, so with a ``filter_words`` set the memory
footprint is proportional to the filter, not the vocabulary. Components
of filtered-out lines are never parsed; only their field count is
validated.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import DegenerateInputError, VecFormatError

logger = logging.getLogger(__name__)

# A vector flagged as normalized must have unit norm within this bound.
NORM_TOLERANCE = 1e-6


@dataclass(frozen=True)
class EmbeddingSpace:
    """Immutable word -> float64 vector map with fixed dimensionality.

    Vectors are read-only numpy arrays of exactly ``dim`` finite
    components; words are unique non-empty strings. ``normalized`` records
    whether every vector has unit Euclidean norm.
    """

    dim: int
    entries: dict[str, np.ndarray] = field(repr=False)
    normalized: bool = False

    def __post_init__(self):
        if self.dim <= 0:
            raise ValueError(f"dimensionality must be positive, got {self.dim}")
        frozen = {}
        for word, vec in self.entries.items():
            if not isinstance(word, str) or not word:
                raise ValueError("words must be non-empty strings")
            v = np.asarray(vec, dtype=np.float64)
            if v.shape != (self.dim,):
                raise ValueError(
                    f"vector for {word!r} has shape {v.shape}, expected ({self.dim},)"
                )
            if not np.isfinite(v).all():
                raise ValueError(f"vector for {word!r} has non-finite components")
            if self.normalized and abs(float(np.linalg.norm(v)) - 1.0) > NORM_TOLERANCE:
                raise ValueError(f"vector for {word!r} is not unit-norm")
            v.setflags(write=False)
            frozen[word] = v
        object.__setattr__(self, "entries", frozen)

    def lookup(self, word: str) -> Optional[np.ndarray]:
        """Exact-match lookup; returns None for out-of-vocabulary words."""
        return self.entries.get(word)

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def words(self):
        return self.entries.keys()


def lookup(space: EmbeddingSpace, word: str) -> Optional[np.ndarray]:
    """Module-level alias for :meth:`EmbeddingSpace.lookup`."""
    return space.lookup(word)


def normalize(space: EmbeddingSpace) -> EmbeddingSpace:
    """Return a copy of the space with every vector scaled to unit norm.

    The input space is left untouched. Raises DegenerateInputError if any
    vector has zero norm.
    """
    entries = {}
    for word, vec in space.entries.items():
        n = float(np.linalg.norm(vec))
        if n == 0.0:
            raise DegenerateInputError(f"zero vector for {word!r} cannot be normalized")
        entries[word] = vec / n
    return EmbeddingSpace(dim=space.dim, entries=entries, normalized=True)


def load_vec(
    path,
    filter_words: Optional[Iterable[str]] = None,
    *,
    unit_normalize: bool = True,
) -> EmbeddingSpace:
    """Parse a text .vec file into an EmbeddingSpace.

    ``filter_words`` restricts the result to the given words while still
    streaming the whole file once. Duplicate words keep their first
    occurrence; later ones are logged as warnings. By default vectors are
    unit-normalized after loading (pass ``unit_normalize=False`` for raw
    file values).

    Raises VecFormatError on a malformed header, a line with the wrong
    field count, a non-numeric or non-finite component of a retained word,
    an empty word, or when zero words are retained.
    """
    wanted = set(filter_words) if filter_words is not None else None
    entries: dict[str, np.ndarray] = {}
    with open(path, encoding="utf-8", newline="\n") as fh:
        header = fh.readline()
        if not header:
            raise VecFormatError(f"{path}: empty file, missing 'count dim' header")
        head_fields = header.rstrip("\n").split(" ")
        if len(head_fields) != 2:
            raise VecFormatError(
                f"{path}: header must be two space-separated integers, got {header.rstrip()!r}"
            )
        try:
            declared_count = int(head_fields[0])
            dim = int(head_fields[1])
        except ValueError:
            raise VecFormatError(
                f"{path}: non-integer header fields {header.rstrip()!r}"
            ) from None
        if declared_count < 0 or dim <= 0:
            raise VecFormatError(f"{path}: invalid header values {header.rstrip()!r}")

        for lineno, raw in enumerate(fh, start=2):
            fields = raw.rstrip("\n").split(" ")
            if len(fields) != dim + 1:
                raise VecFormatError(
                    f"{path}:{lineno}: expected {dim + 1} space-separated fields, "
                    f"got {len(fields)}"
                )
            word = fields[0]
            if not word:
                raise VecFormatError(f"{path}:{lineno}: empty word")
            if wanted is not None and word not in wanted:
                continue
            if word in entries:
                logger.warning(
                    "duplicate word %r at %s:%d ignored, first occurrence kept",
                    word, path, lineno,
                )
                continue
            try:
                vec = np.array(fields[1:], dtype=np.float64)
            except ValueError:
                raise VecFormatError(
                    f"{path}:{lineno}: non-numeric component for word {word!r}"
                ) from None
            if not np.isfinite(vec).all():
                raise VecFormatError(
                    f"{path}:{lineno}: non-finite component for word {word!r}"
                )
            entries[word] = vec

    if not entries:
        raise VecFormatError(f"{path}: zero words retained")
    space = EmbeddingSpace(dim=dim, entries=entries, normalized=False)
    if unit_normalize:
        space = normalize(space)
    return space


def save_vec(space: EmbeddingSpace, path) -> None:
    """Write the space in the text .vec format accepted by load_vec.

    Words are emitted in lexicographic order for reproducible diffs.
    Components use shortest round-trip decimal representation, so a
    save/load cycle reproduces vectors exactly (well inside the 1e-6
    contract).
    """
    if len(space) == 0:
        raise ValueError("refusing to write an empty embedding space")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{len(space)} {space.dim}\n")
        for word in sorted(space.entries):
            vec = space.entries[word]
            fh.write(word + " " + " ".join(repr(float(x)) for x in vec) + "\n")
