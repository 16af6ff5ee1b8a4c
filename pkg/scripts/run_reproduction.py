#!/usr/bin/env python3
"""Run all three golden-table reproductions against the bundled fixture.

Writes per-check reports into an output directory and prints one summary
line per table.  Exit status is the number of tables with mismatches.
"""
import argparse
import pathlib
import sys

from cnifkit.cli import main as cli_main


def run(out_dir: pathlib.Path, fixture: str | None) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    failures = 0
    for name in ("reproduce-table1", "reproduce-table3", "reproduce-table4"):
        report = out_dir / f"{name}.csv"
        argv = [name, "--out", str(report)]
        if fixture:
            argv += ["--fixture", fixture]
        code = cli_main(argv)
        status = "ok" if code == 0 else "MISMATCH (see report)"
        print(f"{name}: {status} -> {report}")
        failures += 1 if code else 0
    return failures


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="reproduction-out")
    parser.add_argument("--fixture", help="alternative category fixture CSV")
    args = parser.parse_args()
    sys.exit(run(pathlib.Path(args.out_dir), args.fixture))
