"""End-to-end forecast orchestration with persistence.

Runs: universe definition -> cluster-count choice -> fuzzy c-means ->
interval construction -> pattern building -> regressor training on the
training rows only -> prediction over every row plus one out-of-sample
step -> denormalization -> split-wise metrics.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass

from . import mlp as mlp_mod
from . import svr as svr_mod
from .config import RunConfig, config_items
from .errors import (
    ForecastError,
    IoFailure,
    MissingFile,
    PipelineError,
    TooFewDistinctValues,
    UnknownFormat,
)
from .fuzzify import (
    FuzzyFeature,
    MinMaxScaler,
    PatternSet,
    build_patterns,
    denormalize,
    fuzzify_value,
    normalize,
)
from .metrics import EvalResult, evaluate
from .mlp import MlpModel, mlp_init, mlp_predict, mlp_train
from .partitioning import (
    IntervalPartition,
    build_intervals,
    define_uod,
    fcm_fit,
    format_partition_table,
    suggest_cluster_count,
)
from .series_io import TimeSeries
from .svr import KernelSpec, SvrModel, auto_gamma, svr_predict, svr_train


@dataclass(frozen=True)
class ReportRow:
    label: str
    actual: float
    predicted: float
    split: str


@dataclass(frozen=True, eq=False)
class ForecastReport:
    """Per-pattern outcomes plus the run's partition, metrics, and config echo."""

    rows: tuple[ReportRow, ...]
    next_step_label: str
    next_step_forecast: float
    next_step_feature: FuzzyFeature
    metrics_train: EvalResult
    metrics_test: EvalResult
    partition: IntervalPartition
    scaler: MinMaxScaler
    config: RunConfig
    model: SvrModel | MlpModel
    patterns: PatternSet


@contextmanager
def _stage(name: str):
    try:
        yield
    except PipelineError:
        raise
    except ForecastError as exc:
        raise PipelineError(name, exc) from exc


def resolve_partition(series: TimeSeries, config: RunConfig):
    """Stages shared by forecasting and partition inspection.

    Returns (cluster_count, cluster_model, partition).
    """
    if len(set(series.values)) < 2:
        raise PipelineError(
            "uod", TooFewDistinctValues("constant series: need at least 2 distinct values"))
    with _stage("uod"):
        uod = define_uod(series, config.margin_d)
    with _stage("cluster-count"):
        count = config.clusters or suggest_cluster_count(series.y_min, series.y_max)
    with _stage("fcm"):
        clusters = fcm_fit(series.values, count, config.fuzziness_p,
                           config.fcm_tol, config.fcm_max_iter, config.seed)
    with _stage("intervals"):
        partition = build_intervals(uod, clusters.centers)
    return count, clusters, partition


def train_relation_model(patterns: PatternSet, config: RunConfig):
    """Fit the configured regressor on the training rows only."""
    rows = patterns.training_rows()
    inputs = [row.feature.as_input() for row in rows]
    targets = [row.target for row in rows]
    if config.regressor == "svr":
        gamma = config.svr_gamma
        if gamma is None and config.svr_kernel != "linear":
            gamma = auto_gamma(inputs)
        kernel = KernelSpec(
            kind=config.svr_kernel,
            degree=config.svr_degree,
            gamma=gamma if gamma is not None else 1.0,
            coef0=config.svr_coef0,
        )
        return svr_train(
            inputs, targets, cost_C=config.svr_C, epsilon=config.svr_epsilon,
            kernel=kernel, kkt_tol=config.svr_kkt_tol,
            max_passes=config.svr_max_passes, seed=config.seed,
        )
    model = mlp_init(len(inputs[0]), config.mlp_hidden, config.seed,
                     config.mlp_activation)
    return mlp_train(model, inputs, targets, config.mlp_lr, config.mlp_epochs)


def regressor_predict(model, x) -> float:
    if isinstance(model, SvrModel):
        return svr_predict(model, x)
    return mlp_predict(model, x)


def run_forecast(series: TimeSeries, config: RunConfig | None = None) -> ForecastReport:
    """Execute the whole method on one series. Deterministic for a fixed config."""
    config = config if config is not None else RunConfig()
    _, _, partition = resolve_partition(series, config)
    with _stage("patterns"):
        patterns = build_patterns(series, partition, config.train_fraction)
        _, scaler = normalize(series)
    with _stage("train"):
        model = train_relation_model(patterns, config)
    with _stage("predict"):
        predicted = [
            denormalize(regressor_predict(model, row.feature.as_input()), scaler)
            for row in patterns.rows
        ]
        next_feature = fuzzify_value(partition, series.values[-1])
        next_value = denormalize(
            regressor_predict(model, next_feature.as_input()), scaler)
    with _stage("metrics"):
        rows = tuple(
            ReportRow(
                label=row.forecast_label,
                actual=series.values[i + 1],
                predicted=predicted[i],
                split=patterns.split_tag(i),
            )
            for i, row in enumerate(patterns.rows)
        )
        train_rows = rows[: patterns.train_count]
        test_rows = rows[patterns.train_count:]
        metrics_train = evaluate([r.actual for r in train_rows],
                                 [r.predicted for r in train_rows])
        metrics_test = evaluate([r.actual for r in test_rows],
                                [r.predicted for r in test_rows])
    return ForecastReport(
        rows=rows,
        next_step_label=f"{series.labels[-1]}+1",
        next_step_forecast=next_value,
        next_step_feature=next_feature,
        metrics_train=metrics_train,
        metrics_test=metrics_test,
        partition=partition,
        scaler=scaler,
        config=config,
        model=model,
        patterns=patterns,
    )


def render_report(report: ForecastReport) -> str:
    """Structured text: key-value sections plus the per-pattern row table.

    Byte-identical across reruns of the same (series, config).
    """
    lines = [
        "forecast report",
        f"rows = {len(report.rows)}",
        f"train_rows = {report.metrics_train.n}",
        f"test_rows = {report.metrics_test.n}",
        "",
        "[config]",
    ]
    lines += [f"{key} = {value}" for key, value in config_items(report.config)]
    lines.append("")
    lines.append("[overrides]")
    lines += list(report.config.overrides)
    lines.append("")
    lines.append("[partition]")
    lines.append(format_partition_table(report.partition))
    lines.append("")
    lines.append("[patterns]")
    lines.append("label, actual, predicted, split")
    for row in report.rows:
        lines.append(f"{row.label}, {row.actual!r}, {row.predicted!r}, {row.split}")
    lines += [
        "",
        "[next_step]",
        f"label = {report.next_step_label}",
        f"forecast = {report.next_step_forecast!r}",
        f"interval_index = {report.next_step_feature.interval_index}",
        f"membership = {report.next_step_feature.membership!r}",
        "",
        "[metrics]",
        f"train.rmse = {report.metrics_train.rmse!r}",
        f"train.smape = {report.metrics_train.smape_percent!r}",
        f"train.n = {report.metrics_train.n}",
        f"test.rmse = {report.metrics_test.rmse!r}",
        f"test.smape = {report.metrics_test.smape_percent!r}",
        f"test.n = {report.metrics_test.n}",
    ]
    return "\n".join(lines) + "\n"


def write_report(report: ForecastReport, path) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(render_report(report))
    except OSError as exc:
        raise IoFailure(f"cannot write report {path}: {exc}") from exc


def emit_plot_data(report: ForecastReport, path) -> None:
    """Chronological `label,actual,predicted,split` rows plus the out-of-sample
    forecast row (empty actual). The header comment records the index of the
    first test row, the figures' train/test divider.
    """
    lines = [
        f"# train_test_boundary = {report.metrics_train.n}",
        "label,actual,predicted,split",
    ]
    for row in report.rows:
        lines.append(f"{row.label},{row.actual!r},{row.predicted!r},{row.split}")
    lines.append(f"{report.next_step_label},,{report.next_step_forecast!r},forecast")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoFailure(f"cannot write plot data {path}: {exc}") from exc


def save_model(model, path) -> None:
    """Serialize a trained regressor to its flat text format."""
    if isinstance(model, SvrModel):
        text = svr_mod.model_to_text(model)
    elif isinstance(model, MlpModel):
        text = mlp_mod.model_to_text(model)
    else:
        raise UnknownFormat(f"cannot serialize {type(model).__name__}")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailure(f"cannot write model {path}: {exc}") from exc


def load_model(path):
    """Load a model saved by save_model, dispatching on the header line."""
    if not os.path.isfile(path):
        raise MissingFile(str(path))
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    header = text.splitlines()[0].strip() if text.strip() else ""
    if header == "svr v1":
        return svr_mod.model_from_text(text)
    if header == "mlp v1":
        return mlp_mod.model_from_text(text)
    raise UnknownFormat(f"unrecognized model header {header!r}")
