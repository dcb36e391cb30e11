"""Crisp observations to (interval index, membership) features and back.

Also owns min-max normalization of the series and the first-order
input-output pattern construction: features of step t-1 predict the
normalized value at step t.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from .errors import ConstantSeries, DegenerateInterval, OutOfUniverse
from .partitioning import IntervalPartition
from .series_io import TimeSeries, chronological_split


@dataclass(frozen=True)
class FuzzyFeature:
    """1-based interval index plus the within-interval min-max position."""

    interval_index: int
    membership: float

    def as_input(self) -> tuple[float, float]:
        """Feature tuple fed to a regressor: the index as a real, unscaled."""
        return (float(self.interval_index), self.membership)


@dataclass(frozen=True)
class MinMaxScaler:
    """Raw-series extremes used to map values to [0, 1] and back."""

    y_min: float
    y_max: float

    def __post_init__(self):
        if not self.y_min < self.y_max:
            raise ConstantSeries(f"need y_min < y_max, got [{self.y_min}, {self.y_max}]")


def locate_interval(partition: IntervalPartition, y: float) -> int:
    """1-based index of the interval containing y.

    A value on a shared boundary belongs to the higher-indexed interval;
    the universe's upper bound belongs to the last interval.
    """
    if y < partition.uod.lower or y > partition.uod.upper:
        raise OutOfUniverse(
            f"{y} outside universe [{partition.uod.lower}, {partition.uod.upper}]"
        )
    k = bisect_right(partition.boundaries, y)
    return min(k, partition.n_intervals)


def interval_membership(interval_lower: float, interval_upper: float, y: float) -> float:
    """Min-max position of y inside [interval_lower, interval_upper]."""
    if not interval_lower < interval_upper:
        raise DegenerateInterval(
            f"empty interval [{interval_lower}, {interval_upper}]"
        )
    return (y - interval_lower) / (interval_upper - interval_lower)


def fuzzify_value(partition: IntervalPartition, y: float) -> FuzzyFeature:
    """Locate y's interval and compute its membership there."""
    k = locate_interval(partition, y)
    lo, hi = partition.interval(k)
    return FuzzyFeature(interval_index=k, membership=interval_membership(lo, hi, y))


def normalize(series: TimeSeries) -> tuple[tuple[float, ...], MinMaxScaler]:
    """Min-max normalize the series over its own extremes."""
    scaler = MinMaxScaler(series.y_min, series.y_max)
    span = scaler.y_max - scaler.y_min
    return tuple((v - scaler.y_min) / span for v in series.values), scaler


def denormalize(value: float, scaler: MinMaxScaler) -> float:
    """Inverse of normalize. Never clamps: out-of-range predictions pass through."""
    return value * (scaler.y_max - scaler.y_min) + scaler.y_min


@dataclass(frozen=True)
class PatternRow:
    """One supervised pattern: features at t-1, normalized target at t.

    `forecast_label` is the label of the target observation.
    """

    forecast_label: str
    feature: FuzzyFeature
    target: float


@dataclass(frozen=True)
class PatternSet:
    """Chronological pattern rows with the first train_count used for training."""

    rows: tuple[PatternRow, ...]
    train_count: int

    @property
    def test_count(self) -> int:
        return len(self.rows) - self.train_count

    def split_tag(self, index: int) -> str:
        return "train" if index < self.train_count else "test"

    def training_rows(self) -> tuple[PatternRow, ...]:
        return self.rows[: self.train_count]

    def testing_rows(self) -> tuple[PatternRow, ...]:
        return self.rows[self.train_count:]


def build_patterns(series: TimeSeries, partition: IntervalPartition,
                   train_fraction: float = 0.8) -> PatternSet:
    """First-order patterns for the whole series: n-1 rows in file order."""
    normalized, _ = normalize(series)
    rows = []
    for t in range(1, len(series)):
        rows.append(PatternRow(
            forecast_label=series.labels[t],
            feature=fuzzify_value(partition, series.values[t - 1]),
            target=normalized[t],
        ))
    train_count, _ = chronological_split(len(rows), train_fraction)
    return PatternSet(rows=tuple(rows), train_count=train_count)


def pattern_csv(patterns: PatternSet) -> str:
    """Pattern dump mirroring the worked-example table layout."""
    lines = ["forecast_label,interval_index,membership,target_normalized,split"]
    for i, row in enumerate(patterns.rows):
        lines.append(
            f"{row.forecast_label},{row.feature.interval_index},"
            f"{row.feature.membership!r},{row.target!r},{patterns.split_tag(i)}"
        )
    return "\n".join(lines) + "\n"
