"""Gender-bias audit and debiasing toolkit for static word embeddings.

Quantifies gender bias over occupation and emotion lexicons in languages
with grammatical gender, using rank-coherence (ECT) and relative-norm
(RND) scores in neutral and gendered-pair variants, extracts a gender
direction from seed word pairs, and mitigates bias via projection and
partial projection. See the ``cli`` module or the ``genbias`` command for
the end-to-end audit workflow.
"""

from .audit import AuditConfig, BiasReport, ReportCell, render_report, run_audit
from .debias import (
    DebiasConfig,
    MuVector,
    apply_debias,
    compute_mu,
    partial_project,
    project_out,
)
from .embedding_store import EmbeddingSpace, load_vec, lookup, normalize, save_vec
from .errors import (
    ConvergenceError,
    CoverageError,
    DegenerateInputError,
    GenbiasError,
    LexiconError,
    VecFormatError,
)
from .lexicon import (
    AttributeCategory,
    CoverageReport,
    Lexicon,
    TargetPairSet,
    load_lexicon,
    validate_coverage,
)
from .metrics import (
    BiasScores,
    ect_gendered,
    ect_neutral,
    rnd_gendered,
    rnd_neutral,
)
from .numerics import cosine, first_principal_component, mean_vector, spearman
from .subspace import GenderDirection, pca_direction, ripa_direction

__version__ = "0.1.0"

__all__ = [
    "AttributeCategory",
    "AuditConfig",
    "BiasReport",
    "BiasScores",
    "ConvergenceError",
    "CoverageError",
    "CoverageReport",
    "DebiasConfig",
    "DegenerateInputError",
    "EmbeddingSpace",
    "GenbiasError",
    "GenderDirection",
    "Lexicon",
    "LexiconError",
    "MuVector",
    "ReportCell",
    "TargetPairSet",
    "VecFormatError",
    "apply_debias",
    "compute_mu",
    "cosine",
    "ect_gendered",
    "ect_neutral",
    "first_principal_component",
    "load_lexicon",
    "load_vec",
    "lookup",
    "mean_vector",
    "normalize",
    "partial_project",
    "pca_direction",
    "project_out",
    "render_report",
    "ripa_direction",
    "rnd_gendered",
    "rnd_neutral",
    "run_audit",
    "save_vec",
    "spearman",
    "validate_coverage",
]
