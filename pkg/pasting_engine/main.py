"""Command-line entry point for the pasting engine."""
import argparse
import logging
import random
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from dotenv import load_dotenv

from pasting_engine import __version__
from pasting_engine.config.settings import DEFAULT_SUITES, MAX_ENUMERATION_FACES, SUITE_NAMES, Settings, load_settings
from pasting_engine.errors import PastingEngineError
from pasting_engine.evaluation.diagram import compose
from pasting_engine.format.document import render_document
from pasting_engine.format.loader import LoadedDocument, load_diagram, load_document, model_for, select_block
from pasting_engine.format.parser import parse_document
from pasting_engine.format.reports import (
    check_report,
    eval_report,
    extend_report,
    make_report,
    render_check,
    render_eval,
    render_extend,
    render_schemes,
    render_verify,
    schemes_report,
    to_json,
    verify_report,
)
from pasting_engine.graphs.anchored import validate_anchored
from pasting_engine.graphs.bracketed import verify_extension
from pasting_engine.graphs.presentation import (
    PastingSchemePresentation,
    enumerate_presentations,
    find_presentation,
)
from pasting_engine.orchestration.certificates import STRATEGIES, alternate_certificate
from pasting_engine.orchestration.runner import results_frame, run_verification, summary_frame
from pasting_engine.types import GeneratorConfig, ValidationReport
from pasting_engine.utils.file_operations import generate_output_filename, read_text_file, save_results_to_csv
from pasting_engine.utils.logging_config import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVALID = 2
EXIT_VERIFY_FAILED = 3
EXIT_INTERRUPTED = 130


class Colors:
    """ANSI color codes for diagnostics."""
    RESET = '\033[0m'
    RED = '\033[31m'
    BOLD = '\033[1m'


def _paint(text: str, color: str, stream) -> str:
    if hasattr(stream, 'isatty') and stream.isatty():
        return color + Colors.BOLD + text + Colors.RESET
    return text


def print_error(text: str) -> None:
    """Print a diagnostic on the error stream."""
    print(_paint("error: ", Colors.RED, sys.stderr) + text, file=sys.stderr)


def emit(args: argparse.Namespace, report: dict, text: str) -> None:
    print(to_json(report) if args.json else text)


class _NotPresentable(Exception):
    """The diagram is invalid or not a pasting scheme; carries the exit code 2 report."""

    def __init__(self, report: dict):
        super().__init__(report.get("reason", "invalid diagram"))
        self.report = report


def _load(path: str) -> LoadedDocument:
    return load_document(read_text_file(path))


def _recognize(loaded: LoadedDocument) -> Tuple[ValidationReport, Optional[PastingSchemePresentation], dict]:
    validation = validate_anchored(loaded.graph.anchored)
    recognition = find_presentation(loaded.graph.anchored) if validation.ok else None
    report = check_report(loaded.document.name, validation, recognition)
    presentation = recognition if isinstance(recognition, PastingSchemePresentation) else None
    return validation, presentation, report


def _require_presentation(loaded: LoadedDocument) -> PastingSchemePresentation:
    _, presentation, report = _recognize(loaded)
    if presentation is None:
        raise _NotPresentable(report)
    return presentation


# Commands


def cmd_check(args: argparse.Namespace, settings: Settings) -> int:
    loaded = _load(args.file)
    _, _, report = _recognize(loaded)
    emit(args, report, render_check(report))
    return EXIT_OK if report["ok"] else EXIT_INVALID


def cmd_schemes(args: argparse.Namespace, settings: Settings) -> int:
    loaded = _load(args.file)
    presentation = _require_presentation(loaded)
    if args.all:
        presentations = enumerate_presentations(loaded.graph.anchored)
    else:
        presentations = [presentation]
    report = schemes_report(loaded.document.name, presentations, args.all)
    emit(args, report, render_schemes(report))
    return EXIT_OK


def cmd_extend(args: argparse.Namespace, settings: Settings) -> int:
    loaded = _load(args.file)
    presentation = _require_presentation(loaded)
    seed = settings.seed if args.seed is None else args.seed
    cert = alternate_certificate(loaded.graph, presentation, args.strategy, random.Random(seed))
    verified = verify_extension(cert, loaded.graph)
    report = extend_report(loaded.document.name, cert, verified)
    emit(args, report, render_extend(report))
    return EXIT_OK if verified else EXIT_VERIFY_FAILED


def cmd_eval(args: argparse.Namespace, settings: Settings) -> int:
    loaded = _load(args.file)
    presentation = _require_presentation(loaded)
    assignments = read_text_file(args.assignments) if args.assignments else None
    block = select_block(loaded.document, args.model, assignments)
    model = model_for(args.model)
    diagram = load_diagram(loaded.graph, block, model)
    seed = settings.seed if args.seed is None else args.seed
    cert = alternate_certificate(loaded.graph, presentation, args.strategy, random.Random(seed))
    result = compose(diagram, cert)
    report = eval_report(loaded.document.name, model, result)
    emit(args, report, render_eval(report, model, result))
    return EXIT_OK


def _parse_suites(text: str) -> List[str]:
    names = [name.strip() for name in text.split(",") if name.strip()]
    if "all" in names:
        return list(SUITE_NAMES)
    unknown = [name for name in names if name not in SUITE_NAMES]
    if unknown or not names:
        raise argparse.ArgumentTypeError(
            f"unknown suite(s) {', '.join(unknown) or '(none)'}; choose from {', '.join(SUITE_NAMES)} or all"
        )
    return names


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    cfg = GeneratorConfig(
        seed=settings.seed if args.seed is None else args.seed,
        max_faces=args.max_faces or settings.max_faces,
        max_path_len=args.max_path_len or settings.max_path_len,
        max_object_size=args.max_object_size or settings.max_object_size,
        trials=args.trials or settings.trials,
    )
    suites = args.suite or list(DEFAULT_SUITES)
    logger.info("=" * 60)
    logger.info(f"Verification | suites {', '.join(suites)} | model {args.model}")
    logger.info(f"Seed: {cfg.seed} | Trials: {cfg.trials} | Max faces: {cfg.max_faces}")
    logger.info("=" * 60)

    summaries = run_verification(suites, cfg, args.model, args.workers, settings)
    report = verify_report(summaries, cfg, args.model)
    emit(args, report, render_verify(report, summary_frame(summaries).to_string(index=False)))

    if args.output_csv is not None:
        filename = args.output_csv or generate_output_filename("-".join(suites))
        save_results_to_csv(results_frame(summaries), filename, settings.output_dir)
    return EXIT_OK if report["ok"] else EXIT_VERIFY_FAILED


def cmd_fmt(args: argparse.Namespace, settings: Settings) -> int:
    doc = parse_document(read_text_file(args.file))
    text = render_document(doc)
    if args.json:
        print(to_json(make_report("fmt", True, diagram=doc.name, text=text)))
    else:
        sys.stdout.write(text)
    return EXIT_OK


# Parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--json',
        action='store_true',
        help='Emit a machine-readable report on stdout'
    )
    common.add_argument(
        '--log-level',
        type=str,
        default='WARNING',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
        help='Logging level (default: WARNING)'
    )
    common.add_argument(
        '--log-file',
        type=str,
        default=None,
        help='Optional log file path'
    )

    parser = argparse.ArgumentParser(
        prog="pasting-engine",
        description="Validate, extend and evaluate pasting diagrams in bicategories",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  pasting-engine check samples/running.paste
  pasting-engine extend samples/running.paste --strategy redundant-pair
  pasting-engine eval samples/running.paste --model span --assignments samples/running_span.paste
  pasting-engine verify --trials 10 --seed 42 --model matrix
        """
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser('check', parents=[common], help='Validate a diagram and recognize a pasting scheme')
    check.add_argument('file', help='Path to a .paste document')
    check.set_defaults(handler=cmd_check)

    schemes = commands.add_parser('schemes', parents=[common], help='Show pasting scheme presentations')
    schemes.add_argument('file', help='Path to a .paste document')
    schemes.add_argument(
        '--all',
        action='store_true',
        help=f'Enumerate every presentation (at most {MAX_ENUMERATION_FACES} faces)'
    )
    schemes.set_defaults(handler=cmd_schemes)

    for name, handler, help_text in (
        ('extend', cmd_extend, 'Build a composition scheme extension'),
        ('eval', cmd_eval, 'Evaluate the composite 2-cell in a model'),
    ):
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.add_argument('file', help='Path to a .paste document')
        sub.add_argument(
            '--strategy',
            type=str,
            default='canonical',
            choices=list(STRATEGIES),
            help='How the extension is built (default: canonical)'
        )
        sub.add_argument(
            '--seed',
            type=int,
            default=None,
            help='Seed for the redundant-pair strategy (or set PASTING_SEED)'
        )
        sub.set_defaults(handler=handler)
        if name == 'eval':
            sub.add_argument(
                '--model',
                type=str,
                default='span',
                choices=['span', 'matrix'],
                help='Bicategory model (default: span)'
            )
            sub.add_argument(
                '--assignments',
                type=str,
                default=None,
                help='File of model blocks (default: the blocks embedded in FILE)'
            )

    verify = commands.add_parser('verify', parents=[common], help='Run the randomized verification suites')
    verify.add_argument('--trials', type=int, default=None, help='Trials per suite (or set PASTING_TRIALS)')
    verify.add_argument('--seed', type=int, default=None, help='Base seed (or set PASTING_SEED)')
    verify.add_argument(
        '--model',
        type=str,
        default='span',
        choices=['span', 'matrix'],
        help='Model for the uniqueness and Mac Lane suites (default: span)'
    )
    verify.add_argument('--max-faces', type=int, default=None, help='Faces per generated diagram')
    verify.add_argument('--max-path-len', type=int, default=None, help='Edges per generated path')
    verify.add_argument('--max-object-size', type=int, default=None, help='Elements per span object')
    verify.add_argument(
        '--suite',
        type=_parse_suites,
        default=None,
        help=f'Comma-separated suites from {", ".join(SUITE_NAMES)}, or all (default: {",".join(DEFAULT_SUITES)})'
    )
    verify.add_argument('--workers', type=int, default=None, help='Parallel trials (or set PASTING_MAX_WORKERS)')
    verify.add_argument(
        '--output-csv',
        type=str,
        nargs='?',
        const='',
        default=None,
        help='Save per-trial results to CSV (default name: auto-generated in ./outputs/)'
    )
    verify.set_defaults(handler=cmd_verify)

    fmt = commands.add_parser('fmt', parents=[common], help='Print the normalized document')
    fmt.add_argument('file', help='Path to a .paste document')
    fmt.set_defaults(handler=cmd_fmt)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code."""
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)

    log_file = Path(args.log_file) if args.log_file else None
    setup_logging(log_level=args.log_level, log_file=log_file)
    settings = load_settings()

    try:
        return args.handler(args, settings)
    except _NotPresentable as e:
        e.report["command"] = args.command
        emit(args, e.report, render_check(e.report))
        return EXIT_INVALID
    except (FileNotFoundError, PastingEngineError, ValueError) as e:
        print_error(str(e))
        logger.debug(f"{args.command} failed", exc_info=True)
        return EXIT_INPUT
    except KeyboardInterrupt:
        print_error("interrupted by user")
        return EXIT_INTERRUPTED


if __name__ == '__main__':
    sys.exit(main())
