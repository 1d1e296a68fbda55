"""Command-line interface.

Subcommands: ``sweep-dims``, ``sweep-time``, ``snapshot``, ``oracle``.
Each takes a configuration file as its first positional argument and
writes CSV (sweeps) or JSON (snapshot, oracle) to ``--out``, the config's
``output`` path, or stdout.

Exit codes: 0 success, 2 configuration error, 3 guard violation,
4 success with numerical wrap flags (outputs are still written).
"""

from __future__ import annotations

import argparse
import sys

from .config import RunConfig, load_config
from .errors import ConfigError, GuardError
from .sweeps import (dimension_sweep, oracle_report, render_json,
                     render_sweep_csv, snapshot_report, time_sweep,
                     write_json, write_sweep_csv)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_GUARD = 3
EXIT_NUMERICAL_FLAG = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hapsris",
        description="Cascade-channel metrics and phase design for a "
                    "reflecting surface on a circling platform")
    subparsers = parser.add_subparsers(dest="command", required=True)
    commands = {
        "sweep-dims": "metrics versus panel length at one time instant",
        "sweep-time": "metrics versus time for each configured length",
        "snapshot": "full metrics report at one time instant",
        "oracle": "exhaustive lattice phase search on a small panel",
    }
    for name, help_text in commands.items():
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("config", help="configuration file (JSON)")
        sub.add_argument("--out", help="output path (overrides config)")
        sub.add_argument("--strategy",
                         choices=("proposed", "reversed", "both"),
                         help="strategy selection (overrides config)")
        sub.add_argument("--ref", metavar="P,Q",
                         help="1-based anchor element (overrides config)")
        sub.add_argument("--threads", type=int, default=1,
                         help="worker threads for sweep points")
        sub.add_argument("--dump-elements", action="store_true",
                         help="include per-element data (snapshot only)")
    return parser


def _apply_overrides(config: RunConfig, args) -> RunConfig:
    if args.strategy:
        config.strategy = args.strategy
    if args.ref:
        parts = args.ref.split(",")
        try:
            p, q = (int(v) for v in parts)
        except ValueError:
            raise ConfigError(f"--ref expects 'P,Q' integers, got "
                              f"{args.ref!r}") from None
        if len(parts) != 2 or p < 1 or q < 1:
            raise ConfigError(f"--ref expects two 1-based indices, got "
                              f"{args.ref!r}")
        config.reference_element = (p, q)
    if args.out:
        config.output = args.out
    if args.threads < 1:
        raise ConfigError("--threads must be at least 1")
    return config


def _emit(text: str, path: str | None, writer):
    if path is None:
        sys.stdout.write(text)
    else:
        writer(path)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _apply_overrides(load_config(args.config), args)
        if args.dump_elements and args.command != "snapshot":
            raise ConfigError("--dump-elements is only supported by the "
                              "snapshot subcommand")
        flagged = 0
        if args.command in ("sweep-dims", "sweep-time"):
            run = dimension_sweep if args.command == "sweep-dims" \
                else time_sweep
            rows = run(config, threads=args.threads)
            flagged = sum(row.flagged_elements for row in rows)
            _emit(render_sweep_csv(rows, config.config_sha256),
                  config.output,
                  lambda path: write_sweep_csv(rows, path,
                                               config.config_sha256))
        elif args.command == "snapshot":
            report = snapshot_report(config,
                                     dump_elements=args.dump_elements)
            flagged = sum(entry["flagged_elements"]
                          for entry in report["reports"])
            _emit(render_json(report), config.output,
                  lambda path: write_json(report, path))
        else:
            report = oracle_report(config)
            _emit(render_json(report), config.output,
                  lambda path: write_json(report, path))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except GuardError as exc:
        print(f"guard violation: {exc}", file=sys.stderr)
        return EXIT_GUARD
    if flagged:
        print(f"warning: {flagged} wrap-window flag(s); affected elements "
              f"were excluded from spread extrema", file=sys.stderr)
        return EXIT_NUMERICAL_FLAG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
