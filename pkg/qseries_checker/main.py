"""
main.py - Command-line front end: list identities and run verification campaigns
"""

import argparse
import logging
import sys
from typing import List, Optional

from .catalog import CATALOG
from .config import MODES, RunConfig
from .errors import ConfigurationError, QSeriesError
from .file_handler import FileHandler
from .identity import IdentityCase
from .identity_manager import IdentityManager, build_plan
from .reports import ReportGenerator
from .scalar import set_float_precision

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def cmd_list() -> str:
    """Catalog listing: id, equation tag, dims, mode, constraint (or 'none') and formula"""
    text = ReportGenerator().generate_catalog_listing(CATALOG)
    print(text)
    return text


def cmd_verify(config: RunConfig) -> int:
    """Sample and verify every planned trial, write the JSON report, return the exit code"""
    if config.mode == "float":
        set_float_precision(config.precision)

    manager = IdentityManager(retry_budget=config.retry_budget, bound=config.bound,
                              float_mode=config.mode == "float")
    generator = ReportGenerator()

    plan = build_plan(config.identities, config.N_values, config.order, config.dims)
    logger.info("running %d trial groups x %d trials", len(plan), config.trials)
    cases, failures = manager.sample_trials(plan, config.qbase, config.trials, config.seed)
    reports = manager.verify_all(cases, workers=config.workers)

    document = generator.generate_document(config.to_dict(), reports, failures,
                                           include_timing=config.timings)
    saved = FileHandler(config.out).save_report(document)

    # The JSON goes to stdout when no path is given, so the summary moves to stderr
    stream = sys.stdout if config.out else sys.stderr
    summary = document["summary"]
    context = f"q={config.q}  mode={config.mode}  seed={config.seed}"
    print(generator.generate_summary_text(reports, summary, context), file=stream)

    if not saved:
        return EXIT_FAILED
    if summary["failed"] or summary["sampling_failures"]:
        return EXIT_FAILED
    return EXIT_OK


def cmd_replay(path: str, workers: int = 1) -> int:
    """Re-verify the cases stored in an exact-mode report; 1 if any fails or changes outcome"""
    document = FileHandler().load_report(path)
    if not document:
        raise ConfigurationError(f"no readable report at {path}")
    if document.get("config", {}).get("mode", "exact") != "exact":
        raise ConfigurationError("only exact-mode reports can be replayed")

    trials = document.get("trials", [])
    try:
        cases = [IdentityCase.from_dict(trial["case"]) for trial in trials]
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigurationError(f"malformed trial in {path}: {e}")
    unknown = sorted({case.identity for case in cases} - set(CATALOG))
    if unknown:
        raise ConfigurationError(f"unknown identities in {path}: {', '.join(unknown)}")

    generator = ReportGenerator()
    reports = IdentityManager().verify_all(cases, workers=workers)
    summary = generator.generate_summary(reports)
    print(generator.generate_summary_text(reports, summary, f"replay of {path}"))

    changed = [report for report, trial in zip(reports, trials) if report.passed != trial.get("passed")]
    for report in changed:
        print(f"⚠️  {report.case} now {'passes' if report.passed else 'fails'}")
    return EXIT_FAILED if summary["failed"] or changed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qseries-checker",
        description="Exact verification of q-series transformation identities",
    )
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command")

    sub.add_parser("list", help="print the identity catalog")

    verify = sub.add_parser("verify", help="sample and verify identities")
    verify.add_argument("identity_ids", nargs="*", help="identity ids (same as --identity)")
    verify.add_argument("--identity", action="append",
                        help="identity id, comma list or 'all' (repeatable)")
    verify.add_argument("--q", default="1/2", help="base q as num/den (default 1/2)")
    verify.add_argument("--N", default="2", help="N or range a..b (default 2)")
    verify.add_argument("--order", type=int, default=6, help="truncation order of formal identities")
    verify.add_argument("--trials", type=int, default=10)
    verify.add_argument("--seed", type=int, default=1)
    verify.add_argument("--mode", choices=MODES, default="exact")
    verify.add_argument("--out", help="JSON report path (stdout when omitted)")
    verify.add_argument("--dims", action="append", help="dimension signature such as 2,1,2,2 (repeatable)")
    verify.add_argument("--workers", type=int, default=1)
    verify.add_argument("--precision", type=int, default=50, help="decimal digits in float mode")
    verify.add_argument("--bound", type=int, default=20, help="bound on sampled numerators and denominators")
    verify.add_argument("--timings", action="store_true", help="include timings in the report")
    verify.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS, help="debug logging")

    replay = sub.add_parser("replay", help="re-verify the cases stored in a report")
    replay.add_argument("report", help="JSON report written by verify --out")
    replay.add_argument("--workers", type=int, default=1)
    replay.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS, help="debug logging")
    return parser


def configure_logging(verbose: bool):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(getattr(args, "verbose", False))

    if args.command == "list":
        cmd_list()
        return EXIT_OK
    if args.command not in ("verify", "replay"):
        parser.print_help()
        return EXIT_CONFIG

    try:
        if args.command == "replay":
            if args.workers < 1:
                raise ConfigurationError("workers must be at least 1")
            return cmd_replay(args.report, workers=args.workers)
        args.identity = (args.identity or []) + args.identity_ids
        config = RunConfig.from_args(args)
        return cmd_verify(config)
    except ConfigurationError as e:
        print(f"✗ Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except QSeriesError as e:
        print(f"✗ {e}", file=sys.stderr)
        return EXIT_FAILED
    except (ArithmeticError, TypeError) as e:
        logger.debug("evaluation failed", exc_info=True)
        print(f"✗ Evaluation error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except KeyboardInterrupt:
        print("\n\n⚠️  Interrupted by user.", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
