"""Command-line campaign runner.

Subcommands: sweep, dynamics, otoc, spinboson, ansatz.  Exit codes are a
stable contract: 0 success, 2 configuration error, 3 numerical error at one
or more sweep points (the remaining points are still completed and written).
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .campaign import load_config, run_campaign
from .errors import ConfigError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quenchlab",
        description="Exact-diagonalization campaigns for correlated-quench "
        "thermalization diagnostics",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("sweep", "run the size sweep and write sweep.csv + summary.json"),
        ("dynamics", "additionally write dynamics_<N>.csv time series"),
        ("otoc", "additionally write otoc_<N>.csv time series"),
        ("spinboson", "spin-boson sweep with closed-form comparisons"),
        ("ansatz", "write ansatz_<N>.json and profile_<N>.csv diagnostics"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="path to the key=value config file")
        cmd.add_argument("--out", default=None, help="output directory (overrides config)")
        cmd.add_argument("--workers", type=int, default=None, help="worker count (overrides config)")
        cmd.add_argument("--seed", type=int, default=None, help="RNG seed (overrides config)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        overrides = {}
        if args.out is not None:
            overrides["out"] = args.out
        if args.workers is not None:
            overrides["workers"] = args.workers
        if args.seed is not None:
            overrides["seed"] = args.seed
        if overrides:
            config = dataclasses.replace(config, **overrides)
        summary = run_campaign(config, mode=args.command)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if summary["errors"]:
        for entry in summary["errors"]:
            print(
                f"numerical error at N={entry['n_sites']} init={entry['init']}: "
                f"{entry['error']}",
                file=sys.stderr,
            )
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
