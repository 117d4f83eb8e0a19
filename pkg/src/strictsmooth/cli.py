"""Command-line surface.

Commands: analyze (full pipeline), charts (blow-up chart dump), sod
(derived-category ledger only), oracle (chart route only), selftest
(fixture corpus plus seeded property suites).  The report goes to stdout,
a short human summary to stderr unless --quiet.

Exit codes: 0 analysis completed (whatever the verdict), 2 input or
validation error (including the --max-degree guardrail), 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import sys

from .errors import (
    DegreeLimitError,
    InternalCheckError,
    ParseError,
    SceneError,
    StrictSmoothError,
)
from .geometry import analyze
from .groebner import degree_limit
from .report import build_report, render_plain, render_structured, summary_line
from .scene_io import load_scene
from .selftest import run_selftest


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strictsmooth",
        description=(
            "Decide smoothness of the strict transform of a hypersurface blown "
            "up along coordinate-subspace centers, and report the divisor and "
            "derived-category ledgers."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("structured", "plain"),
        default="structured",
        help="report format on stdout (default: structured JSON)",
    )
    common.add_argument(
        "--quiet", action="store_true", help="suppress the summary on stderr"
    )
    common.add_argument(
        "--max-degree",
        type=int,
        default=None,
        metavar="D",
        help="abort Groebner runs that exceed this total degree (exit 2)",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("analyze", "full pipeline: both smoothness routes, ledgers, SOD"),
        ("charts", "dump the blow-up charts and strict transforms"),
        ("sod", "derived-category block ledger only"),
        ("oracle", "chart-wise Jacobian oracle only"),
    ):
        cmd = sub.add_parser(name, parents=[common], help=help_text)
        cmd.add_argument("scene", help="scene file (YAML)")
    selftest = sub.add_parser(
        "selftest", parents=[common], help="run the built-in fixture corpus"
    )
    selftest.add_argument(
        "--seed", type=int, default=0, help="seed for the randomized corpora"
    )
    return parser


def _run_scene_command(args) -> int:
    scene = load_scene(args.scene)
    with degree_limit(args.max_degree):
        analysis = analyze(scene)
    report = build_report(analysis, command=args.command)
    if args.format == "structured":
        sys.stdout.write(render_structured(report))
    else:
        sys.stdout.write(render_plain(report))
    if not args.quiet:
        sys.stderr.write(summary_line(analysis) + "\n")
    if not analysis.consistent:
        sys.stderr.write(
            "internal invariant violation: the smoothness routes disagree\n"
        )
        return 3
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "selftest":
            with degree_limit(args.max_degree):
                passed, failed = run_selftest(seed=args.seed, stream=sys.stdout)
            if not args.quiet:
                sys.stderr.write(f"selftest: {passed} passed, {failed} failed\n")
            return 0 if failed == 0 else 3
        return _run_scene_command(args)
    except (SceneError, ParseError, DegreeLimitError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except InternalCheckError as exc:
        sys.stderr.write(f"internal invariant violation: {exc}\n")
        return 3
    except StrictSmoothError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
