"""Load, validate, and chronologically split univariate time series."""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass

from .errors import (
    DegenerateSplit,
    MissingFile,
    TooFewRows,
    UnknownColumn,
    UnknownDataset,
    UnparseableValue,
)

MIN_SERIES_LENGTH = 4

_ENROLLMENT = (
    13055, 13563, 13867, 14696, 15460, 15311, 15603, 15861, 16807, 16919, 16388,
    15433, 15497, 15145, 15163, 15984, 16859, 18150, 18970, 19328, 19337, 18876,
)


@dataclass(frozen=True)
class TimeSeries:
    """Ordered, labeled sequence of real observations.

    Chronology is positional: labels are opaque text and never parsed as
    dates. Instances are immutable and safe to share across threads.
    """

    labels: tuple[str, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(l) for l in self.labels))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.labels) != len(self.values):
            raise ValueError("labels and values must have equal length")
        if len(self.values) < MIN_SERIES_LENGTH:
            raise TooFewRows(
                f"need at least {MIN_SERIES_LENGTH} observations, got {len(self.values)}"
            )
        for v in self.values:
            if not math.isfinite(v):
                raise ValueError(f"non-finite observation {v!r}")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def y_min(self) -> float:
        return min(self.values)

    @property
    def y_max(self) -> float:
        return max(self.values)


def _parse_cell(cells, col):
    v = float(cells[col])
    if not math.isfinite(v):
        raise ValueError(f"non-finite {cells[col]!r}")
    return v


def load_csv(path, value_column=None) -> TimeSeries:
    """Read a univariate series from a comma-separated UTF-8 file.

    One observation per row. The value column defaults to the last column;
    pass an integer index, or a column name when the file has a header. A
    leading header row is detected by its value cell failing numeric parse.
    Labels come from the first non-value column, or the row position when
    the file has a single column.
    """
    if not os.path.isfile(path):
        raise MissingFile(str(path))
    with open(path, newline="", encoding="utf-8") as fh:
        raw = [(n, row) for n, row in enumerate(csv.reader(fh), start=1) if row]
    if not raw:
        raise TooFewRows("empty file")

    if isinstance(value_column, str):
        header = [c.strip() for c in raw[0][1]]
        if value_column not in header:
            raise UnknownColumn(f"no column named {value_column!r}")
        col = header.index(value_column)
        data = raw[1:]
    else:
        col = -1 if value_column is None else int(value_column)
        try:
            _parse_cell(raw[0][1], col)
            data = raw
        except (ValueError, IndexError):
            data = raw[1:]  # first row is a header

    if not data:
        raise TooFewRows("no data rows")
    ncols = len(data[0][1])
    value_idx = col % ncols if -ncols <= col < ncols else col
    label_idx = None
    if ncols > 1:
        label_idx = 0 if value_idx != 0 else 1

    labels, values = [], []
    for fileno, cells in data:
        try:
            values.append(_parse_cell(cells, col))
        except (ValueError, IndexError):
            bad = cells[col] if -len(cells) <= col < len(cells) else ",".join(cells)
            raise UnparseableValue(fileno, bad) from None
        labels.append(cells[label_idx].strip() if label_idx is not None else str(len(values)))

    if len(values) < MIN_SERIES_LENGTH:
        raise TooFewRows(f"need at least {MIN_SERIES_LENGTH} data rows, got {len(values)}")
    return TimeSeries(tuple(labels), tuple(values))


def write_csv(series: TimeSeries, path, headers=("label", "value")) -> None:
    """Write `label,value` rows; reloading the file restores the series exactly."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(headers)
        for label, value in zip(series.labels, series.values):
            writer.writerow([label, repr(value)])


def builtin_enrollment() -> TimeSeries:
    """University of Alabama annual enrollments, 1971-1992 (22 observations)."""
    labels = tuple(str(year) for year in range(1971, 1993))
    return TimeSeries(labels, tuple(float(v) for v in _ENROLLMENT))


BUILTIN_DATASETS = {"enrollment": builtin_enrollment}


def builtin_series(name: str) -> TimeSeries:
    try:
        return BUILTIN_DATASETS[name]()
    except KeyError:
        known = ", ".join(sorted(BUILTIN_DATASETS))
        raise UnknownDataset(f"no built-in dataset {name!r} (available: {known})") from None


def chronological_split(n_patterns: int, train_fraction: float) -> tuple[int, int]:
    """Split a pattern count into (train, test) sizes.

    Training rows are the chronologically first floor(train_fraction * n)
    patterns, clamped so both parts keep at least one row.
    """
    if n_patterns < 2:
        raise DegenerateSplit(f"need at least 2 patterns to split, got {n_patterns}")
    train = int(math.floor(train_fraction * n_patterns))
    train = max(1, min(n_patterns - 1, train))
    return train, n_patterns - train
