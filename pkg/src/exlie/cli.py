"""Command-line front end: ``exlie-verify <suite> [options]``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .suites import BACKENDS, SUITES, Config, run_suite


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="exlie-verify",
                                description="Run a verification suite and print a report.")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--seed", type=int, default=42, help="root seed (default 42)")
    p.add_argument("--samples", type=int, default=50, help="random samples per check (default 50)")
    p.add_argument("--sphere-samples", type=int, default=100, help="random points per sphere (default 100)")
    p.add_argument("--tol", type=float, default=1e-9, help="membership and closed-form tolerance (default 1e-9)")
    p.add_argument("--backend", choices=BACKENDS, default="auto",
                   help="exact or float rank route for dimension checks (auto = exact)")
    p.add_argument("--format", choices=("json", "md"), default="md")
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="checks run concurrently (default 1)")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed < 0 or args.seed >= 2 ** 64:
        parser.error("--seed must be an unsigned 64-bit integer")
    try:
        config = Config(args.seed, args.samples, args.sphere_samples, args.tol, args.backend, args.jobs)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        report = run_suite(args.suite, config)
    except RuntimeError as exc:  # calibration found no consistent conventions at this tolerance
        print(f"exlie-verify: error: {exc}", file=sys.stderr)
        return 1
    text = report.to_json() if args.format == "json" else report.to_markdown()
    if args.out:
        args.out.write_text(text + ("\n" if not text.endswith("\n") else ""))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return 0 if report.passed else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
