"""
Command-line entry point: ``essnorm <subcommand> [options]``.
"""
import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from cli.commands import HANDLERS, OPERATOR_KINDS
from cli.domain import (
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_STRICT_FAILURE,
    OUTPUT_FORMATS,
    CommandOutput,
    RunConfig,
    UsageError,
)
from cli.specs import build_run_config
from config import ConfigError, get_logging_config, load_config
from schatten.conditions import CONDITIONS
from shiftops import DOMAIN_KINDS
from utils.errors import EssnormError, SpecError
from utils.logger import get_logger, setup_logging
from weights import BUILTIN_FAMILIES


class _Parser(argparse.ArgumentParser):
    """Argument errors are input errors (exit 1), not argparse's exit 2."""

    def error(self, message):
        raise UsageError(message)


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", default="drury_arveson", choices=BUILTIN_FAMILIES)
    parser.add_argument("--m", type=int, help="Number of variables")
    parser.add_argument("--k", type=int, help="Multiplicity for vector generators")
    parser.add_argument("--weights-file", help="JSON weight spec")
    parser.add_argument("--submodule-file", help="JSON submodule spec")
    parser.add_argument("--generators", help='Exponents as JSON, e.g. "[[2,3],[3,3]]"')
    parser.add_argument("--format", default="json", choices=OUTPUT_FORMATS)
    parser.add_argument("--out", help="Write output here instead of stdout")
    parser.add_argument("--strict", action="store_true", help="Exit 2 on diverged or violated verdicts")
    parser.add_argument("--seed", type=int, help="Seed for randomized sweeps")


def _verdict_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-degree", type=int)
    parser.add_argument("--margin", type=float)
    parser.add_argument("--window", help="Fit window lo:hi")
    parser.add_argument("--threads", type=int)


def _operator_options(parser: argparse.ArgumentParser, default_kind: str) -> None:
    parser.add_argument("--kind", default=default_kind, choices=OPERATOR_KINDS)
    parser.add_argument("--i", type=int, default=1, help="First axis (1-based)")
    parser.add_argument("--j", type=int, default=1, help="Second axis (1-based)")
    parser.add_argument("--domain", default="ambient", choices=DOMAIN_KINDS)
    parser.add_argument("--level", type=int, help="Slice level for --kind edge")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="essnorm", description="Weighted shifts, monomial submodules and Schatten diagnostics")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("weights-check", help="Contractive and spherical inequalities")
    _common(p)
    _verdict_options(p)
    p.add_argument("--condition", action="append", choices=CONDITIONS)
    p.add_argument("--p", type=float, action="append")

    p = sub.add_parser("commutator", help="Print operator blocks shell by shell")
    _common(p)
    _operator_options(p, "cross")
    p.add_argument("--max-degree", type=int)

    p = sub.add_parser("schatten", help="Shell sums and verdicts")
    _common(p)
    _operator_options(p, "self")
    _verdict_options(p)
    p.add_argument("--p", type=float, action="append")

    p = sub.add_parser("decompose", help="Block decomposition of a submodule")
    _common(p)
    p.add_argument("--axis", type=int, help="Single reduction step along this axis (1-based)")
    p.add_argument("--corner", action="store_true", help="Corner reduction (m = 2)")

    p = sub.add_parser("audit", help="Decomposition plus per-block verdicts")
    _common(p)
    _verdict_options(p)
    p.add_argument("--p", type=float, action="append")

    p = sub.add_parser("generators", help="Minimal generators, corner and cofinite difference")
    _common(p)

    p = sub.add_parser("dimension", help="Hilbert-Samuel dimension of the quotient")
    _common(p)

    p = sub.add_parser("zeroset", help="Common zero set of generating monomials")
    _common(p)

    p = sub.add_parser("oracle-compare", help="Closed form against a dense truncation")
    _common(p)
    _operator_options(p, "self")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--random", type=int, help="Compare on this many seeded random submodules")
    p.add_argument("--random-k", type=int, help="Multiplicity of random submodules")

    p = sub.add_parser("report", help="All diagnostics in one JSON document")
    _common(p)
    _verdict_options(p)
    p.add_argument("--p", type=float, action="append")
    p.add_argument("--q", type=float, action="append", help="Quotient orders for the q > d check")
    return parser


def render(output: CommandOutput, output_format: str, command: str) -> str:
    """Turn a CommandOutput into the requested text format."""
    if output_format == "csv":
        if output.csv_text is not None:
            return output.csv_text
        if output.csv_rows is None:
            raise UsageError(f"{command} has no CSV output")
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        for row in output.csv_rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
        return buffer.getvalue()
    if output_format == "text" and output.text is not None:
        return output.text
    return json.dumps(output.data, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand.

    Args:
        argv: Arguments without the program name (defaults to ``sys.argv[1:]``)

    Returns:
        0 on success, 1 on input errors, 2 on a failed ``--strict`` verdict
    """
    args_list: List[str] = list(sys.argv[1:] if argv is None else argv)
    try:
        config = load_config()
        setup_logging(**get_logging_config(config))
    except ConfigError as e:
        print(f"essnorm: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    logger = get_logger(__name__)

    try:
        args = build_parser().parse_args(args_list)
        run_config: RunConfig = build_run_config(args, config.seed)
        logger.info(f"running {run_config.command}: {run_config.to_json()}")
        output = HANDLERS[run_config.command](run_config, config)
        _emit(render(output, run_config.output_format, run_config.command), run_config.out)
    except SystemExit as e:
        # --help and --version
        return int(e.code or 0)
    except SpecError as e:
        print(f"essnorm: invalid input: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (EssnormError, ValueError, OSError) as e:
        print(f"essnorm: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    if run_config.strict and output.strict_failure:
        logger.warning(f"{run_config.command}: strict check failed")
        return EXIT_STRICT_FAILURE
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
