"""Command line experiment runner.

    bergcauchy <suite> [--config PATH] [--out DIR] [--seed N] [--levels N] [--samples M] [--quiet]

Writes ``<suite>.csv`` and ``<suite>.json`` per suite.  Exit status is 0 when
every check passes, 1 on the first failing record, 2 on usage or config
errors.  ``BERGCAUCHY_OUT`` overrides the default output directory.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from .config import ConfigError, load_config
from .suites import RUNNERS, SUITES, SuiteResult

log = logging.getLogger("bergcauchy")

OUT_ENV = "BERGCAUCHY_OUT"


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def render_csv(result: SuiteResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json_safe(obj):
    if isinstance(obj, float) and obj != obj:
        return None
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def render_json(result: SuiteResult, config: dict) -> str:
    doc = {
        "suite": result.name,
        "passed": result.passed,
        "first_failure": result.first_failure,
        "columns": result.columns,
        "rows": [dict(zip(result.columns, r)) for r in result.rows],
        "reports": result.reports,
        "config": config,
    }
    return json.dumps(_json_safe(doc), indent=2, sort_keys=True) + "\n"


def write_reports(result: SuiteResult, out: Path, config: dict) -> None:
    out.mkdir(parents=True, exist_ok=True)
    _atomic_write(out / f"{result.name}.csv", render_csv(result))
    _atomic_write(out / f"{result.name}.json", render_json(result, config))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file (defaults built in)")
    common.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./reports)")
    common.add_argument("--seed", type=int, help="seed for random polynomial generation")
    common.add_argument("--levels", type=int, help="exhaustion levels N")
    common.add_argument("--samples", type=int, help="boundary samples M")
    common.add_argument("--quiet", action="store_true")
    parser = argparse.ArgumentParser(prog="bergcauchy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="suite", required=True, metavar="SUITE")
    for name in (*SUITES, "all"):
        sub.add_parser(name, parents=[common], help="run every suite" if name == "all" else f"run {name}")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(message)s")
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"{parser.prog}: error: config {args.config}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"{parser.prog}: error: cannot read config: {exc}", file=sys.stderr)
        return 2
    cfg = cfg.replace(seed=args.seed, levels=args.levels, samples=args.samples)
    out = Path(args.out or os.environ.get(OUT_ENV) or "reports")
    names = SUITES if args.suite == "all" else (args.suite,)
    status = 0
    for name in names:
        try:
            result = RUNNERS[name](cfg)
        except (KeyError, ValueError) as exc:
            print(f"{parser.prog}: error: {name}: {exc}", file=sys.stderr)
            return 2
        write_reports(result, out, cfg.to_dict())
        if result.passed:
            log.info("PASS %-22s %4d records -> %s", name, len(result.rows), out / f"{name}.csv")
        else:
            log.error("FAIL %s: %s", name, result.first_failure)
            status = status or 1
    return status


if __name__ == "__main__":
    sys.exit(main())
