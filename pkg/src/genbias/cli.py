"""Command-line front end: audit, debias, coverage, dump-direction.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable or
malformed files, coverage floor violations, degenerate subspace).
Warnings (skipped OOV pairs, duplicate embedding lines) go to stderr;
stdout carries only the requested artifact.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .audit import AuditConfig, OUTPUT_FORMATS, render_report, run_audit
from .debias import (
    DebiasConfig,
    METHOD_PARTIAL,
    METHOD_PROJECTION,
    MU_ALONG_DIRECTION,
    MU_FULL_VECTOR,
    apply_debias,
)
from .embedding_store import load_vec, save_vec
from .errors import GenbiasError
from .lexicon import load_lexicon, validate_coverage
from .subspace import METHODS as SUBSPACE_METHODS, build_direction

_MU_MODES = {"full": MU_FULL_VECTOR, "along": MU_ALONG_DIRECTION}
_DEBIAS_METHODS = {"projection": METHOD_PROJECTION, "partial": METHOD_PARTIAL}


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this tool reserves 2 for data errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _ratio(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in [0, 1]: {text}")
    return value


def _add_input_args(parser, with_floor=False):
    parser.add_argument("--embeddings", required=True, help="word-vector .vec file")
    parser.add_argument("--lexicon", required=True, help="lexicon JSON document")
    parser.add_argument(
        "--no-normalize",
        action="store_true",
        help="keep raw vector magnitudes instead of unit-normalizing at load",
    )
    if with_floor:
        parser.add_argument(
            "--coverage-floor",
            type=_ratio,
            default=0.5,
            metavar="F",
            help="minimum in-vocabulary fraction per category (default 0.5)",
        )


def _build_parser() -> _Parser:
    parser = _Parser(prog="genbias", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_audit = sub.add_parser("audit", help="run the full bias audit grid")
    _add_input_args(p_audit, with_floor=True)
    p_audit.add_argument(
        "--mu-mode", choices=sorted(_MU_MODES), default="full",
        help="partial projection constant: full mu vector or its along-direction part",
    )
    p_audit.add_argument(
        "--exclude-targets", action="store_true",
        help="leave target-set words untouched when debiasing",
    )
    p_audit.add_argument(
        "--reuse-baseline-means", action="store_true",
        help="evaluate debiased spaces against the baseline target means",
    )
    p_audit.add_argument(
        "--renormalize-debiased", action="store_true",
        help="unit-normalize debiased spaces before computing metrics",
    )
    p_audit.add_argument("--format", choices=OUTPUT_FORMATS, default="text")
    p_audit.add_argument(
        "--percent", action="store_true",
        help="scale text-table values by 100 (RND-g exempt)",
    )
    p_audit.add_argument("--out", help="write the report here instead of stdout")
    p_audit.set_defaults(handler=_cmd_audit)

    p_debias = sub.add_parser("debias", help="write a debiased .vec file")
    _add_input_args(p_debias)
    p_debias.add_argument("--method", choices=sorted(_DEBIAS_METHODS), required=True)
    p_debias.add_argument("--subspace", choices=sorted(SUBSPACE_METHODS), required=True)
    p_debias.add_argument("--mu-mode", choices=sorted(_MU_MODES), default="full")
    p_debias.add_argument("--exclude-targets", action="store_true")
    p_debias.add_argument("--out", required=True, help="output .vec path")
    p_debias.set_defaults(handler=_cmd_debias)

    p_cov = sub.add_parser("coverage", help="report lexicon coverage against a space")
    _add_input_args(p_cov)
    p_cov.set_defaults(handler=_cmd_coverage)

    p_dump = sub.add_parser("dump-direction", help="dump a gender direction as JSON")
    _add_input_args(p_dump)
    p_dump.add_argument("--subspace", choices=sorted(SUBSPACE_METHODS), required=True)
    p_dump.add_argument("--out", help="write JSON here instead of stdout")
    p_dump.set_defaults(handler=_cmd_dump_direction)

    return parser


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_audit(args) -> int:
    config = AuditConfig(
        embeddings_path=args.embeddings,
        lexicon_path=args.lexicon,
        unit_normalize=not args.no_normalize,
        coverage_floor=args.coverage_floor,
        mu_mode=_MU_MODES[args.mu_mode],
        exclude_targets=args.exclude_targets,
        output_format=args.format,
        metrics_as_percent=args.percent,
        renormalize_debiased=args.renormalize_debiased,
        reuse_baseline_means=args.reuse_baseline_means,
    )
    report = run_audit(config)
    _emit(render_report(report, config.output_format), args.out)
    return 0


def _cmd_debias(args) -> int:
    lexicon = load_lexicon(args.lexicon)
    space = load_vec(args.embeddings, unit_normalize=not args.no_normalize)
    direction = build_direction(space, lexicon.targets, args.subspace)
    config = DebiasConfig(
        method=_DEBIAS_METHODS[args.method],
        mu_mode=_MU_MODES[args.mu_mode],
        exclude_targets=args.exclude_targets,
    )
    debiased = apply_debias(space, direction, lexicon.targets, config)
    save_vec(debiased, args.out)
    sys.stdout.write(
        "pairs_used={} orientation_check={!r}\n".format(
            direction.n_pairs_used, direction.orientation_check
        )
    )
    return 0


def _cmd_coverage(args) -> int:
    lexicon = load_lexicon(args.lexicon)
    space = load_vec(
        args.embeddings,
        filter_words=lexicon.all_words(),
        unit_normalize=not args.no_normalize,
    )
    report = validate_coverage(lexicon, space)
    lines = [f"{'category':24}{'kind':16}{'found':>6}{'total':>7}{'ratio':>8}"]
    for cov in report.categories:
        lines.append(
            f"{cov.name:24}{cov.kind:16}{cov.found:>6}{cov.total:>7}{cov.ratio:>8.3f}"
        )
        for entry in cov.oov:
            shown = " / ".join(entry) if isinstance(entry, tuple) else entry
            lines.append(f"  OOV: {shown}")
    total = sum(c.total for c in report.categories)
    found = sum(c.found for c in report.categories)
    lines.append(f"overall: {found}/{total} ({report.overall_ratio:.3f})")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _cmd_dump_direction(args) -> int:
    lexicon = load_lexicon(args.lexicon)
    space = load_vec(
        args.embeddings,
        filter_words=lexicon.all_words(),
        unit_normalize=not args.no_normalize,
    )
    direction = build_direction(space, lexicon.targets, args.subspace)
    doc = {
        "method": direction.method,
        "n_pairs_used": direction.n_pairs_used,
        "orientation_check": direction.orientation_check,
        "dim": int(direction.vector.shape[0]),
        "vector": [float(x) for x in direction.vector],
    }
    _emit(json.dumps(doc, ensure_ascii=False, indent=2) + "\n", args.out)
    return 0


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s: %(message)s")
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.handler(args)
    except (GenbiasError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
