"""``paralight verify`` command line."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, load_config, parse_checks
from .pipeline import run_verification
from .report import emit_report

EXIT_CONFIG = 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="paralight",
                                description="Exact verification of paracontact structures and their lightlike hypersurfaces.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run the verification pipeline on a JSON config")
    v.add_argument("--input", required=True, help="config file (UTF-8 JSON)")
    v.add_argument("--report", help="write the report here instead of stdout")
    v.add_argument("--format", choices=("human", "machine"), default="human")
    v.add_argument("--checks", help="comma-separated stages or 'all' (overrides the config)")
    v.add_argument("--numeric-samples", type=int, help="finite-difference sample count")
    v.add_argument("--seed", type=int, help="seed for witness search and numeric samples")
    v.add_argument("--timing", action="store_true", help="record per-check milliseconds")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.input)
        cfg = cfg.with_overrides(checks=parse_checks(args.checks) if args.checks else None,
                                 samples=args.numeric_samples, seed=args.seed)
        if cfg.samples < 0:
            raise ConfigError("--numeric-samples must be non-negative")
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    report = run_verification(cfg, timing=args.timing)
    text, status = emit_report(report, args.format)
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
