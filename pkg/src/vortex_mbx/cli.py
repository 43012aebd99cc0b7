"""Command-line entry point: ``vortex-mbx <subcommand> [options]``.

Exit codes: 0 success, 1 configuration or physics error, 2 usage error,
3 oracle mismatch (``validate`` only).
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace

from . import report, validation
from .config import FORMATS, ConfigError, load_config
from .oracle import OracleError
from .params import ParameterError

log = logging.getLogger("vortex_mbx")

EXIT_OK, EXIT_PHYSICS, EXIT_USAGE, EXIT_ORACLE = 0, 1, 2, 3


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON run configuration")
    common.add_argument("--out", metavar="DIR", help="output directory (overrides output.directory)")
    common.add_argument(
        "--set", metavar="KEY=VALUE", action="append", default=[], dest="assignments",
        help="dotted override, e.g. medium.concentration=15 (repeatable)",
    )
    common.add_argument("--format", choices=FORMATS, help="map output: csv, pgm rasters, or both")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="vortex-mbx", description="Er:YAG vortex transfer toolkit")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    sub.add_parser("efficiency", parents=[common], help="conversion efficiency vs Z and vs detuning")
    sub.add_parser("spectra", parents=[common], help="absorption/dispersion spectra and regimes")
    sub.add_parser("fieldmap", parents=[common], help="transverse maps, rasters and vortex diagnostics")
    sub.add_parser("validate", parents=[common], help="closed forms against numerical oracles")
    sub.add_parser("table", parents=[common], help="print the built-in concentration table")
    return parser


def _config(args):
    config = load_config(args.config, args.assignments)
    if args.out or args.format:
        output = config.output
        if args.out:
            output = replace(output, directory=args.out)
        if args.format:
            output = replace(output, format=args.format)
        config = replace(config, output=output)
    return config


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")

    try:
        if args.command == "table":
            print("\n".join(report.table_lines()))
            return EXIT_OK
        config = _config(args)
        if args.command == "validate":
            results = validation.run_all()
            for result in results:
                print(result.line())
            failed = [r for r in results if not r.passed]
            print(f"{len(results) - len(failed)}/{len(results)} checks passed")
            return EXIT_ORACLE if failed else EXIT_OK
        writer = {
            "efficiency": report.efficiency_report,
            "spectra": report.spectra_report,
            "fieldmap": report.fieldmap_report,
        }[args.command]
        for line in writer(config):
            print(line)
        log.info("outputs written to %s", config.output.directory)
        return EXIT_OK
    except (ConfigError, ParameterError, OracleError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS


if __name__ == "__main__":
    sys.exit(main())
