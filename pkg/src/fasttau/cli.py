"""Command line interface: ``fasttau {cor,test,matrix,bench}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
import time

from fasttau import __version__, bench, oracle
from fasttau.core import kendall_tau
from fasttau.errors import (
    EXIT_CODES,
    EXIT_OK,
    EXIT_USAGE,
    DegenerateInput,
    ExactNotApplicable,
    InputError,
    OracleMismatch,
    TauError,
    UsageError,
)
from fasttau.inference import kendall_test_from_result
from fasttau.ingest import STDIN, ColumnSpec, load_columns, load_numeric_columns
from fasttau.matrix import tau_matrix
from fasttau.records import OutputRecord, format_number, render_json, render_text

ORACLE_CHECK_MAX_N = 5000
ORACLE_TOLERANCE = 1e-12

log = logging.getLogger("fasttau")


def _exit_code_help():
    lines = ["exit codes:"]
    lines += [f"  {code}  {text}" for code, text in EXIT_CODES.items()]
    return "\n".join(lines)


def _add_input_args(p, pair=True):
    p.add_argument("--input", "-i", default=STDIN, help="delimited text file, '-' for stdin (default)")
    if pair:
        p.add_argument("--x", required=True, help="x column: header name or 1-based number")
        p.add_argument("--y", required=True, help="y column: header name or 1-based number")
    p.add_argument("--delimiter", "-d", default=",", help="field delimiter (default ',')")
    p.add_argument("--no-header", action="store_true", help="first line is data, select columns by number")
    p.add_argument(
        "--drop-missing",
        action="store_true",
        help="drop rows with missing or unparseable cells instead of failing",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fasttau",
        description="Kendall's tau-b in O(n log n), significance tests and benchmarks.",
        epilog=_exit_code_help(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    common = dict(epilog=_exit_code_help(), formatter_class=argparse.RawDescriptionHelpFormatter)

    p = sub.add_parser("cor", help="Kendall's tau of two columns", **common)
    _add_input_args(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--timing", action="store_true", help="report elapsed computation time")
    p.add_argument(
        "--check-oracle",
        action="store_true",
        help=f"also run the O(n^2) reference and fail on any difference (n <= {ORACLE_CHECK_MAX_N})",
    )

    p = sub.add_parser("test", help="significance test of tau against 0", **common)
    _add_input_args(p)
    p.add_argument("--alternative", choices=("two-sided", "less", "greater"), default="two-sided")
    p.add_argument("--method", choices=("auto", "exact", "normal"), default="auto")
    p.add_argument("--continuity", action="store_true", help="continuity correction (normal method only)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--timing", action="store_true", help="report elapsed computation time")

    p = sub.add_parser("matrix", help="pairwise tau matrix of many columns", **common)
    _add_input_args(p, pair=False)
    p.add_argument("--columns", help="comma-separated column names or numbers (default: all numeric)")
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    p.add_argument("--workers", type=int, default=1, help="worker threads for matrix cells")

    p = sub.add_parser("bench", help="time the fast and naive paths across sizes", **common)
    p.add_argument(
        "--sizes",
        default=",".join(map(str, bench.DEFAULT_SIZES)),
        help="comma-separated sample sizes",
    )
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--naive-cutoff", type=int, default=bench.NAIVE_CUTOFF)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    return parser


def _spec(args):
    return ColumnSpec(
        source=args.input,
        x_selector=args.x,
        y_selector=args.y,
        delimiter=args.delimiter,
        has_header=not args.no_header,
    )


def _compute(args):
    spec = _spec(args)
    sample = load_columns(spec, drop_missing=args.drop_missing)
    t0 = time.perf_counter_ns()
    try:
        result = kendall_tau(sample)
    except DegenerateInput as exc:
        if exc.vector in ("x", "y"):
            column = spec.x_selector if exc.vector == "x" else spec.y_selector
            what = f"column {column} is constant"
        else:
            what = f"columns {spec.x_selector} and {spec.y_selector} are constant"
        raise DegenerateInput(f"tau is undefined: {what}", exc.vector) from None
    return sample, result, t0


def _emit(record, fmt, out):
    out.write(render_json(record) if fmt == "json" else render_text(record))


def run_cor_command(args, out=sys.stdout):
    sample, result, t0 = _compute(args)
    elapsed = time.perf_counter_ns() - t0
    if args.check_oracle:
        if sample.n > ORACLE_CHECK_MAX_N:
            raise UsageError(f"--check-oracle is limited to n <= {ORACLE_CHECK_MAX_N}, got {sample.n}")
        reference = oracle.brute_force_tau(sample)
        if not abs(reference - result.tau) <= ORACLE_TOLERANCE:
            raise OracleMismatch(f"fast tau {result.tau!r} differs from reference {reference!r}")
    record = OutputRecord(tau=result.tau, n=result.n, timings=elapsed if args.timing else None)
    _emit(record, args.format, out)
    return EXIT_OK


def run_test_command(args, out=sys.stdout):
    _, result, t0 = _compute(args)
    try:
        test = kendall_test_from_result(result, args.alternative, args.method, args.continuity)
    except ExactNotApplicable:
        raise ExactNotApplicable(
            "exact test requires data without ties; rerun with --method normal"
        ) from None
    elapsed = time.perf_counter_ns() - t0
    record = OutputRecord(
        tau=test.statistic,
        n=test.n,
        p_value=test.p_value,
        alternative=test.alternative.value,
        method=test.method.value,
        timings=elapsed if args.timing else None,
    )
    _emit(record, args.format, out)
    return EXIT_OK


def _matrix_value(v, fmt):
    if math.isnan(v):
        return "NA"
    return format_number(v) if fmt == "text" else repr(float(v))


def run_matrix_command(args, out=sys.stdout):
    columns = [c.strip() for c in args.columns.split(",")] if args.columns else None
    names, arrays = load_numeric_columns(
        args.input,
        columns,
        delimiter=args.delimiter,
        has_header=not args.no_header,
        drop_missing=args.drop_missing,
    )
    mat, _ = tau_matrix(arrays, names, workers=args.workers)
    if args.format == "json":
        rows = [[None if math.isnan(v) else float(v) for v in row] for row in mat]
        out.write(json.dumps({"columns": names, "tau": rows}) + "\n")
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["", *names])
        for name, row in zip(names, mat):
            writer.writerow([name, *(_matrix_value(v, args.format) for v in row)])
        out.write(buf.getvalue())
    return EXIT_OK


def run_bench_command(args, out=sys.stdout):
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"--sizes must be comma-separated integers, got {args.sizes!r}") from None
    if any(n < 2 for n in sizes):
        raise UsageError("every size must be at least 2")
    report = bench.scaling_report(sizes, reps=args.reps, seed=args.seed, naive_cutoff=args.naive_cutoff)
    text = report.to_json() + "\n" if args.format == "json" else report.to_csv()
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {args.output}: {exc}") from None
    else:
        out.write(text)
    return EXIT_OK


COMMANDS = {
    "cor": run_cor_command,
    "test": run_test_command,
    "matrix": run_matrix_command,
    "bench": run_bench_command,
}


class _Formatter(logging.Formatter):
    def format(self, record):
        return f"fasttau: {record.levelname.lower()}: {record.getMessage()}"


def _configure_logging():
    if any(getattr(h, "_fasttau", False) for h in log.handlers):
        return
    handler = logging.StreamHandler()
    handler.setFormatter(_Formatter())
    handler._fasttau = True
    log.addHandler(handler)
    log.setLevel(logging.WARNING)
    log.propagate = False


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging()
    # stderr may have been swapped (tests, redirection) since the handler was made
    for h in log.handlers:
        if getattr(h, "_fasttau", False):
            h.setStream(sys.stderr)
    try:
        return COMMANDS[args.command](args, out=sys.stdout)
    except (ValueError, TauError) as exc:
        print(f"fasttau: error: {exc}", file=sys.stderr)
        return getattr(exc, "exit_code", EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
