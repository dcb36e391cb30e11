"""Command-line front end.

Exit codes: 0 success, 1 runtime/data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys

from .config import RunConfig, apply_assignments, load_config
from .errors import ForecastError, MissingFile, UnknownColumn, UnparseableValue
from .metrics import evaluate
from .partitioning import format_partition_table
from .pipeline import (
    emit_plot_data,
    resolve_partition,
    run_forecast,
    save_model,
    write_report,
)
from .series_io import BUILTIN_DATASETS, builtin_series, load_csv


def _add_series_options(parser):
    parser.add_argument("--input", help="CSV file with one observation per row")
    parser.add_argument("--builtin", help="name of a bundled dataset (see `datasets`)")
    parser.add_argument("--value-column",
                        help="value column name or 0-based index (default: last column)")
    parser.add_argument("--config", help="flat key = value configuration file")
    parser.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="KEY=VALUE",
                        help="override one config key (repeatable, applied after --config)")


def _resolve_series(args, parser):
    if bool(args.input) == bool(args.builtin):
        parser.error("exactly one of --input or --builtin is required")
    if args.builtin:
        return builtin_series(args.builtin)
    column = args.value_column
    if column is not None:
        try:
            column = int(column)
        except ValueError:
            pass
    return load_csv(args.input, column)


def _resolve_config(args) -> RunConfig:
    config = load_config(args.config) if args.config else RunConfig()
    return apply_assignments(config, args.overrides)


def cmd_forecast(args, parser) -> int:
    series = _resolve_series(args, parser)
    config = _resolve_config(args)
    report = run_forecast(series, config)
    outdir = args.output
    os.makedirs(outdir, exist_ok=True)
    write_report(report, os.path.join(outdir, "report.txt"))
    emit_plot_data(report, os.path.join(outdir, "plot.csv"))
    save_model(report.model, os.path.join(outdir, "model.txt"))
    tr, te = report.metrics_train, report.metrics_test
    print(f"train rmse={tr.rmse:.2f} smape={tr.smape_percent:.2f} n={tr.n}")
    print(f"test rmse={te.rmse:.2f} smape={te.smape_percent:.2f} n={te.n}")
    print(f"next {report.next_step_label} forecast={report.next_step_forecast:.2f}")
    print(f"wrote report.txt plot.csv model.txt to {outdir}")
    return 0


def cmd_inspect_partition(args, parser) -> int:
    series = _resolve_series(args, parser)
    config = _resolve_config(args)
    count, clusters, partition = resolve_partition(series, config)
    print(f"clusters = {count}")
    print("centers = " + ", ".join(repr(v) for v in clusters.centers))
    print("boundaries = " + ", ".join(repr(v) for v in partition.boundaries))
    print(format_partition_table(partition))
    return 0


def _load_prediction_csv(path, actual_column, predicted_column):
    if not os.path.isfile(path):
        raise MissingFile(str(path))
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh) if row and not row[0].startswith("#")]
    if not rows:
        raise UnparseableValue(1, "<empty file>")
    header = [c.strip() for c in rows[0]]
    for name in (actual_column, predicted_column):
        if name not in header:
            raise UnknownColumn(f"no column named {name!r} in {header}")
    a_idx, p_idx = header.index(actual_column), header.index(predicted_column)
    actual, predicted = [], []
    for fileno, cells in enumerate(rows[1:], start=2):
        for idx, bucket in ((a_idx, actual), (p_idx, predicted)):
            cell = cells[idx].strip() if idx < len(cells) else ""
            if not cell:
                continue
            try:
                value = float(cell)
            except ValueError:
                raise UnparseableValue(fileno, cell) from None
            if not math.isfinite(value):
                raise UnparseableValue(fileno, cell)
            bucket.append(value)
    return actual, predicted


def cmd_evaluate(args, parser) -> int:
    actual, predicted = _load_prediction_csv(
        args.input, args.actual_column, args.predicted_column)
    result = evaluate(actual, predicted)
    print(f"rmse={result.rmse:.2f} smape={result.smape_percent:.2f} n={result.n}")
    return 0


def cmd_datasets(args, parser) -> int:
    for name in sorted(BUILTIN_DATASETS):
        series = BUILTIN_DATASETS[name]()
        print(f"{name}  n={len(series)}  {series.labels[0]}..{series.labels[-1]}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ftsf",
        description="Fuzzy time series forecasting with interval-index features.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    forecast = sub.add_parser("forecast", help="run the full pipeline and write artifacts")
    _add_series_options(forecast)
    forecast.add_argument("--output", default=".",
                          help="directory for report.txt, plot.csv, model.txt")
    forecast.set_defaults(func=cmd_forecast, parser=forecast)

    inspect = sub.add_parser("inspect-partition",
                             help="print cluster centers and the interval table")
    _add_series_options(inspect)
    inspect.set_defaults(func=cmd_inspect_partition, parser=inspect)

    ev = sub.add_parser("evaluate", help="RMSE/SMAPE of a predictions CSV")
    ev.add_argument("--input", required=True, help="CSV with actual and predicted columns")
    ev.add_argument("--actual-column", default="actual")
    ev.add_argument("--predicted-column", default="predicted")
    ev.set_defaults(func=cmd_evaluate, parser=ev)

    ds = sub.add_parser("datasets", help="list bundled datasets")
    ds.set_defaults(func=cmd_datasets, parser=ds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, args.parser)
    except SystemExit as exc:
        return int(exc.code or 0)
    except ForecastError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
