"""Command line entry point.

    maxmul SCENARIO [--config FILE] [--set key=value ...] [--out CSV] [--plot DIR]

Scenarios: norm, decay-fit, range-table, dyadic-l2, domination, maximal-ratio,
verify.  Output is CSV (stdout by default), byte-identical across repeated
runs of the same configuration.  Exit codes: 0 success, 2 configuration
error, 3 invariant failure (verify).
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

from .scenarios import SCENARIOS, ConfigError, parse_config_text, run_scenario

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxmul",
        description="Desk-scale experiments with dilation-maximal multiplier "
        "operators on variable-exponent spaces.",
    )
    parser.add_argument("scenario", choices=sorted(SCENARIOS), help="experiment to run")
    parser.add_argument("--config", help="flat key=value configuration file")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a single configuration key (repeatable)",
    )
    parser.add_argument("--out", help="write CSV here instead of stdout")
    parser.add_argument("--plot", metavar="DIR", help="also render the scenario figure into DIR")
    return parser


def _gather_config(args) -> dict:
    cfg = {}
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                cfg.update(parse_config_text(fh.read()))
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config!r}: {exc}") from exc
    for item in args.overrides:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        cfg[key.strip()] = value.strip()
    return cfg


def _to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _gather_config(args)
        header, rows, plotdata = run_scenario(args.scenario, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # module preconditions rejecting configured values (grid sizes,
        # dilation ranges, band indices, ...) are configuration mistakes too
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    text = _to_csv(header, rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    if args.plot:
        from .plotting import render

        path = render(args.scenario, plotdata, args.plot)
        print(f"figure written to {path}", file=sys.stderr)

    if args.scenario == "verify":
        passed = all(row[-1] == "true" for row in rows)
        if not passed:
            failing = [row[1] for row in rows if row[-1] != "true"]
            print(f"invariant failures: {', '.join(failing)}", file=sys.stderr)
            return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
