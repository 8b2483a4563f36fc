"""
Command line interface.

    feynman-silt run CONFIG [--output DIR] [--workers N]
    feynman-silt report MANIFEST [MANIFEST ...] [--data-dir DIR]
    feynman-silt selftest [--output DIR]

Exit status: 0 success, 1 oracle comparison failed, 2 usage, configuration or input error, 3 numerical failure.
"""
import argparse
import logging
import sys
from typing import List, Optional

from feynman_silt import __version__, experiment_class
from feynman_silt.errors import InputError, QuadratureError, SiltError, UnsupportedCaseError
from feynman_silt.experiments.common.config import load_config
from feynman_silt.experiments.report import report
from feynman_silt.experiments.selftest import selftest

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ORACLE_FAILURE = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="feynman-silt",
                                     description="Self-intersection local times and the Feynman integrand.")
    parser.add_argument("--version", action="version", version="%(prog)s {}".format(__version__))
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logs")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run an experiment from a configuration file or a manifest")
    run.add_argument("config", help="INI configuration, or a manifest.json to rerun")
    run.add_argument("--output", help="output directory, overriding the configuration")
    run.add_argument("--workers", type=int, help="number of worker processes")

    summary = commands.add_parser("report", help="summarize run manifests")
    summary.add_argument("manifests", nargs="+", help="manifest files or run directories")
    summary.add_argument("--data-dir", help="directory for gnuplot data files")

    check = commands.add_parser("selftest", help="run the oracle suite on reduced configurations")
    check.add_argument("--output", help="keep the runs in this directory")
    check.add_argument("--workers", type=int, help="number of worker processes")
    return parser.parse_args(argv)


def _run(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    if args.workers is not None:
        config.workers = args.workers
    experiment = experiment_class(config.kind).from_config(config)
    manifest = experiment.run(args.output)
    print("{}: {} ({})".format(config.kind, "pass" if manifest.passed else "FAIL", manifest.path))
    return EXIT_OK if manifest.passed else EXIT_ORACLE_FAILURE


def _report(args: argparse.Namespace) -> int:
    sys.stdout.write(report(args.manifests, args.data_dir))
    return EXIT_OK


def _selftest(args: argparse.Namespace) -> int:
    manifests = selftest(args.output, args.workers)
    for manifest in manifests:
        print("{:<20} {}".format(manifest.kind, "pass" if manifest.passed else "FAIL"))
        for comparison in manifest.failures:
            print("    {}".format(comparison))
    return EXIT_OK if all(manifest.passed for manifest in manifests) else EXIT_ORACLE_FAILURE


COMMANDS = {"run": _run, "report": _report, "selftest": _selftest}


def main(argv: Optional[List[str]] = None) -> int:
    args = _parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (InputError, UnsupportedCaseError) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except (QuadratureError, ArithmeticError) as e:
        logger.error("Numerical failure: {}".format(e))
        return EXIT_NUMERIC
    except SiltError as e:
        logger.error(str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
