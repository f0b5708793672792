"""Command-line front end.

    spinbeam reflect-sweep     --config sweep.json --out reflect.csv
    spinbeam concurrence-sweep --config concurrence.json --threads 4
    spinbeam interfere         --out interference.csv
    spinbeam transform-check   --config ybeam.json --format json
    spinbeam evolve-dump       --config packet.json --out traj.csv

Exit codes: 0 success, 2 config error, 3 numerical error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .experiments import (
    DEFAULTS,
    ConfigError,
    NumericalError,
    build_network,
    format_csv,
    format_json,
    load_config,
    parse_config,
    run,
)
from .hamiltonian import dump_triplets, single_excitation_hamiltonian

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_IO = 0, 2, 3, 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinbeam", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in DEFAULTS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON experiment config (defaults reproduce the figure setups)")
        p.add_argument("--out", help="output path (default: output.path from config, else stdout)")
        p.add_argument("--format", choices=("csv", "json"), help="output format (default: csv)")
        p.add_argument("--threads", type=int, default=1, help="worker threads for sweeps")
        p.add_argument("--dump-hamiltonian", metavar="PATH", help="also write H as row,col,value CSV")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = load_config(args.config) if args.config else {}
        cfg = parse_config(args.command, raw)
        if args.format:
            cfg.output["format"] = args.format
        if args.threads < 1:
            raise ConfigError("--threads: must be ≥ 1")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        columns, rows = run(cfg, threads=args.threads)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    fmt = cfg.output.get("format", "csv")
    text = (format_json if fmt == "json" else format_csv)(cfg.resolved(), columns, rows)
    path = args.out or cfg.output.get("path")
    try:
        if path:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        if args.dump_hamiltonian:
            dump_triplets(single_excitation_hamiltonian(build_network(cfg.topology)), args.dump_hamiltonian)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
