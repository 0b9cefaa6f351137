#!/usr/bin/env python3
"""Run every suite with timings and print a one-line summary per suite.

    python scripts/run_experiments.py [--config configs/default.json] [--out reports]
"""

import argparse
import time
from pathlib import Path

from bergcauchy.cli import write_reports
from bergcauchy.config import load_config
from bergcauchy.suites import RUNNERS, SUITES


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config")
    ap.add_argument("--out", default="reports")
    args = ap.parse_args()
    cfg = load_config(args.config)
    out = Path(args.out)
    print("suite,records,passed,seconds")
    failed = 0
    for name in SUITES:
        t0 = time.perf_counter()
        result = RUNNERS[name](cfg)
        dt = time.perf_counter() - t0
        write_reports(result, out, cfg.to_dict())
        print(f"{name},{len(result.rows)},{str(result.passed).lower()},{dt:.2f}")
        failed += not result.passed
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
