"""Full audit grid: baseline plus two debias methods times two subspaces.

``run_audit`` loads everything, extracts both gender directions from the
original space, produces the four transformed spaces, and evaluates every
applicable metric on every category under each condition. The result
carries a provenance block (content hashes, config echo, coverage,
direction diagnostics) so reports are comparable across machines and
runs: identical inputs give identical reports, modulo the timestamp.

Directions and the mu constant always come from the ORIGINAL space.
Target means are recomputed from the transformed target vectors by
default (``reuse_baseline_means`` selects the alternative and provenance
records which was used).
"""
from __future__ import annotations

import datetime
import hashlib
import json
from dataclasses import asdict, dataclass
from typing import Optional

from . import metrics as metrics_mod
from .debias import (
    DebiasConfig,
    METHOD_PARTIAL,
    METHOD_PROJECTION,
    MU_FULL_VECTOR,
    MU_MODES,
    apply_debias,
)
from .embedding_store import EmbeddingSpace, load_vec, normalize
from .errors import CoverageError, DegenerateInputError
from .lexicon import Lexicon, load_lexicon, validate_coverage
from .metrics import BiasScores, DEFAULT_COVERAGE_FLOOR, metrics_for_kind, target_means
from .subspace import METHOD_PCA, METHOD_RIPA, build_direction

SCHEMA_VERSION = 1

CONDITION_BASELINE = "baseline"
CONDITIONS = (
    CONDITION_BASELINE,
    "projection_pca",
    "projection_ripa",
    "partial_pca",
    "partial_ripa",
)
OUTPUT_FORMATS = ("text", "csv", "json")

# condition tag -> (debias method, subspace method)
_CONDITION_RECIPES = {
    "projection_pca": (METHOD_PROJECTION, METHOD_PCA),
    "projection_ripa": (METHOD_PROJECTION, METHOD_RIPA),
    "partial_pca": (METHOD_PARTIAL, METHOD_PCA),
    "partial_ripa": (METHOD_PARTIAL, METHOD_RIPA),
}

_CONDITION_LABELS = {
    CONDITION_BASELINE: "baseline",
    "projection_pca": "proj/pca",
    "projection_ripa": "proj/ripa",
    "partial_pca": "partial/pca",
    "partial_ripa": "partial/ripa",
}

_METRIC_LABELS = {
    metrics_mod.ECT_N: "ECT-n",
    metrics_mod.RND_N: "RND-n",
    metrics_mod.ECT_G: "ECT-g",
    metrics_mod.RND_G: "RND-g",
}

# RND over gendered pairs is displayed unscaled even in percent mode.
PERCENT_EXEMPT = (metrics_mod.RND_G,)


@dataclass(frozen=True)
class AuditConfig:
    embeddings_path: str
    lexicon_path: str
    unit_normalize: bool = True
    coverage_floor: float = DEFAULT_COVERAGE_FLOOR
    mu_mode: str = MU_FULL_VECTOR
    exclude_targets: bool = False
    output_format: str = "text"
    metrics_as_percent: bool = False
    renormalize_debiased: bool = False
    reuse_baseline_means: bool = False

    def __post_init__(self):
        if not self.embeddings_path or not self.lexicon_path:
            raise ValueError("embeddings and lexicon paths must be non-empty")
        if not 0.0 <= self.coverage_floor <= 1.0:
            raise ValueError(f"coverage floor must be in [0, 1], got {self.coverage_floor}")
        if self.mu_mode not in MU_MODES:
            raise ValueError(f"unknown mu mode {self.mu_mode!r}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"unknown output format {self.output_format!r}")


@dataclass(frozen=True)
class ReportCell:
    """One (condition, metric, category) slot: scores or an explicit skip."""

    condition: str
    metric: str
    category: str
    scores: Optional[BiasScores] = None
    skip_reason: Optional[str] = None

    def __post_init__(self):
        if (self.scores is None) == (self.skip_reason is None):
            raise ValueError("a cell holds either scores or a skip reason")


@dataclass(frozen=True)
class BiasReport:
    """The audit grid plus its provenance block."""

    cells: tuple[ReportCell, ...]
    provenance: dict
    config: AuditConfig

    def cell(self, condition: str, metric: str, category: str) -> ReportCell:
        for c in self.cells:
            if (c.condition, c.metric, c.category) == (condition, metric, category):
                return c
        raise KeyError((condition, metric, category))


def space_content_hash(space: EmbeddingSpace) -> str:
    """sha256 over the retained (word, float64 vector) entries, word-sorted."""
    h = hashlib.sha256()
    for word in sorted(space.entries):
        h.update(word.encode("utf-8"))
        h.update(b"\x00")
        h.update(space.entries[word].astype("<f8").tobytes())
        h.update(b"\x00")
    return h.hexdigest()


def _file_sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _oov_entry(entry):
    return list(entry) if isinstance(entry, tuple) else entry


def check_coverage_floor(lexicon: Lexicon, coverage, floor: float) -> None:
    """Fail hard when any attribute category is below the floor.

    The error message carries a per-category OOV summary. The target pair
    set is exempt (direction construction enforces its own minimum).
    """
    offenders = []
    for cat in lexicon.categories:
        cov = coverage.by_name(cat.name)
        if cov.ratio < floor:
            oov = ", ".join(
                "/".join(e) if isinstance(e, tuple) else e for e in cov.oov
            )
            offenders.append(
                f"  {cat.name}: {cov.found}/{cov.total} in vocabulary (OOV: {oov})"
            )
    if offenders:
        raise CoverageError(
            f"coverage below floor {floor} in {len(offenders)} categories:\n"
            + "\n".join(offenders)
        )


def run_audit(config: AuditConfig) -> BiasReport:
    """Evaluate the full condition x metric x category grid.

    Raises on load failures, coverage-floor violations and a degenerate
    gender subspace; cells degenerate for other reasons (for example a
    category left with a single usable word) are reported as skipped.
    """
    lexicon = load_lexicon(config.lexicon_path)
    space = load_vec(
        config.embeddings_path,
        filter_words=lexicon.all_words(),
        unit_normalize=config.unit_normalize,
    )
    coverage = validate_coverage(lexicon, space)
    check_coverage_floor(lexicon, coverage, config.coverage_floor)

    directions = {
        METHOD_PCA: build_direction(space, lexicon.targets, METHOD_PCA),
        METHOD_RIPA: build_direction(space, lexicon.targets, METHOD_RIPA),
    }

    spaces = {CONDITION_BASELINE: space}
    for condition, (method, subspace_method) in _CONDITION_RECIPES.items():
        debias_config = DebiasConfig(
            method=method,
            mu_mode=config.mu_mode,
            exclude_targets=config.exclude_targets,
        )
        transformed = apply_debias(
            space, directions[subspace_method], lexicon.targets, debias_config
        )
        if config.renormalize_debiased:
            transformed = normalize(transformed)
        spaces[condition] = transformed

    baseline_means = (
        target_means(space, lexicon.targets) if config.reuse_baseline_means else None
    )

    cells = []
    for condition in CONDITIONS:
        cond_space = spaces[condition]
        for category in lexicon.categories:
            for metric in metrics_for_kind(category.kind):
                fn = metrics_mod.METRIC_FUNCTIONS[metric]
                try:
                    scores = fn(
                        cond_space,
                        lexicon.targets,
                        category,
                        coverage_floor=config.coverage_floor,
                        means=baseline_means,
                    )
                    cells.append(
                        ReportCell(
                            condition=condition,
                            metric=metric,
                            category=category.name,
                            scores=scores,
                        )
                    )
                except (CoverageError, DegenerateInputError) as exc:
                    cells.append(
                        ReportCell(
                            condition=condition,
                            metric=metric,
                            category=category.name,
                            skip_reason=str(exc),
                        )
                    )

    provenance = {
        "schema_version": SCHEMA_VERSION,
        "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "embeddings": {
            "path": str(config.embeddings_path),
            "dim": space.dim,
            "n_words_retained": len(space),
            "content_hash": space_content_hash(space),
            "unit_normalized": config.unit_normalize,
        },
        "lexicon": {
            "path": str(config.lexicon_path),
            "sha256": _file_sha256(config.lexicon_path),
            "language": lexicon.targets.language,
            "n_target_pairs": len(lexicon.targets.pairs),
            "categories": [
                {"name": c.name, "kind": c.kind, "size": len(c.words)}
                for c in lexicon.categories
            ],
        },
        "config": asdict(config),
        "coverage": [
            {
                "name": c.name,
                "kind": c.kind,
                "total": c.total,
                "found": c.found,
                "ratio": c.ratio,
                "oov": [_oov_entry(e) for e in c.oov],
            }
            for c in coverage.categories
        ],
        "directions": {
            method: {
                "n_pairs_used": d.n_pairs_used,
                "orientation_check": d.orientation_check,
            }
            for method, d in directions.items()
        },
        "target_means": "baseline" if config.reuse_baseline_means else "recomputed",
    }
    return BiasReport(cells=tuple(cells), provenance=provenance, config=config)


def _format_value(cell: ReportCell, percent: bool) -> str:
    if cell.scores is None:
        return "skipped"
    value = cell.scores.value
    if percent and cell.metric not in PERCENT_EXEMPT:
        return f"{value * 100.0:.1f}"
    if cell.metric in PERCENT_EXEMPT:
        return f"{value:.2f}" if percent else f"{value:.4f}"
    return f"{value:.4f}"


def _render_text(report: BiasReport) -> str:
    percent = report.config.metrics_as_percent
    prov = report.provenance
    lines = [
        "bias audit: language={} embeddings={} ({} words, dim {}, normalized={})".format(
            prov["lexicon"]["language"],
            prov["embeddings"]["path"],
            prov["embeddings"]["n_words_retained"],
            prov["embeddings"]["dim"],
            prov["embeddings"]["unit_normalized"],
        ),
        "directions: "
        + "; ".join(
            "{} pairs={} orientation={:.6f}".format(
                m, d["n_pairs_used"], d["orientation_check"]
            )
            for m, d in sorted(prov["directions"].items())
        ),
        "values {}; target means {}".format(
            "x100 (RND-g exempt)" if percent else "raw", prov["target_means"]
        ),
    ]
    categories = [c["name"] for c in prov["lexicon"]["categories"]]
    kind_of = {c["name"]: c["kind"] for c in prov["lexicon"]["categories"]}

    col_width = 14
    for category in categories:
        lines.append("")
        lines.append(f"== {category} ({kind_of[category]}) ==")
        header = "metric".ljust(8) + "".join(
            _CONDITION_LABELS[c].rjust(col_width) for c in CONDITIONS
        )
        lines.append(header)
        footnotes = []
        for metric in metrics_for_kind(kind_of[category]):
            row = _METRIC_LABELS[metric].ljust(8)
            for condition in CONDITIONS:
                cell = report.cell(condition, metric, category)
                row += _format_value(cell, percent).rjust(col_width)
                if cell.skip_reason is not None:
                    footnotes.append(
                        f"  [{_CONDITION_LABELS[condition]} {_METRIC_LABELS[metric]}] {cell.skip_reason}"
                    )
            lines.append(row)
        lines.extend(footnotes)
    return "\n".join(lines) + "\n"


def _render_csv(report: BiasReport) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["condition", "metric", "category", "value", "n_used", "n_skipped", "skip_reason"]
    )
    for cell in report.cells:
        if cell.scores is None:
            writer.writerow(
                [cell.condition, cell.metric, cell.category, "", "", "", cell.skip_reason]
            )
        else:
            writer.writerow(
                [
                    cell.condition,
                    cell.metric,
                    cell.category,
                    repr(cell.scores.value),
                    cell.scores.n_used,
                    cell.scores.n_skipped,
                    "",
                ]
            )
    return buf.getvalue()


def _cell_to_json(cell: ReportCell) -> dict:
    base = {
        "condition": cell.condition,
        "metric": cell.metric,
        "category": cell.category,
    }
    if cell.scores is None:
        base["skipped"] = cell.skip_reason
        return base
    base.update(
        {
            "value": cell.scores.value,
            "n_used": cell.scores.n_used,
            "n_skipped": cell.scores.n_skipped,
            "per_word": [
                [list(key) if isinstance(key, tuple) else key, contribution]
                for key, contribution in cell.scores.per_word
            ],
        }
    )
    return base


def _render_json(report: BiasReport) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "provenance": report.provenance,
        "cells": [_cell_to_json(c) for c in report.cells],
    }
    return json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def render_report(report: BiasReport, output_format: str) -> str:
    """Render to 'text' (per-category tables), 'csv' (long form) or 'json'.

    The percent flag scales text-table values by 100 (RND over gendered
    pairs exempt); csv and json always carry raw values.
    """
    if output_format == "text":
        return _render_text(report)
    if output_format == "csv":
        return _render_csv(report)
    if output_format == "json":
        return _render_json(report)
    raise ValueError(f"unknown output format {output_format!r}")
