"""Command line entry point ``gevrey-pdo``."""
from __future__ import annotations

import argparse
import logging
import sys

from .config import SUITES, ConfigError, default_config, load_config
from .report import emit_report, summary_text
from .suites import SUITE_DESCRIPTIONS, run_suite

log = logging.getLogger("gevrey_pdo")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gevrey-pdo", description="Run numerical verification suites.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one suite and write its report")
    run.add_argument("--suite", required=True, choices=SUITES)
    run.add_argument("--config", help="YAML config; suite defaults when omitted")
    run.add_argument("--out", help="output directory (overrides the config)")
    run.add_argument("--seed", type=int, help="override the config seed")
    run.add_argument("--format", choices=("csv", "json"), default="csv")
    run.add_argument("--workers", type=int, default=1, help="worker processes")

    sub.add_parser("list-suites", help="list available suites")

    val = sub.add_parser("validate-config", help="check a config file")
    val.add_argument("path")
    return ap


def _cmd_run(args) -> int:
    cfg = load_config(args.config, args.suite) if args.config else default_config(args.suite)
    if args.seed is not None:
        if not 0 <= args.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        cfg.seed = args.seed
    out = args.out or cfg.out
    if out is None:
        raise ConfigError("no output directory: pass --out or set 'out' in the config")
    records = run_suite(cfg, workers=max(1, args.workers))
    paths = emit_report(cfg.suite, records, out, args.format)
    sys.stdout.write(summary_text(cfg.suite, records))
    log.info("wrote %s", ", ".join(map(str, paths)))
    return 1 if any(not r.passed for r in records) else 0


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "list-suites":
            for name in SUITES:
                print(f"{name:14s} {SUITE_DESCRIPTIONS[name]}")
            return 0
        if args.command == "validate-config":
            cfg = load_config(args.path)
            print(f"ok: suite {cfg.suite}, seed {cfg.seed}")
            return 0
        return _cmd_run(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
