"""Exception types shared across the toolkit.

Everything deriving from GenbiasError is a data-level problem (bad file,
too many OOV words, degenerate geometry) that the CLI maps to exit code 2.
Plain ValueError is reserved for caller mistakes (wrong shapes, bad enum
values) that indicate a bug rather than bad input data.
"""


class GenbiasError(Exception):
    """Base class for data-level errors raised by this package."""


class VecFormatError(GenbiasError):
    """A word-vector file violates the text .vec format."""


class LexiconError(GenbiasError):
    """A lexicon document violates the schema."""


class CoverageError(GenbiasError):
    """Too few lexicon words are in-vocabulary for a meaningful result."""


class DegenerateInputError(GenbiasError):
    """Input admits no answer: zero vectors, all-zero difference rows, etc."""


class ConvergenceError(GenbiasError):
    """An iterative solver exhausted its iteration budget."""
