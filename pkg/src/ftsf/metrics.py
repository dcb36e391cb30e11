"""Forecast-quality measures."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EmptyInput, LengthMismatch, ZeroDenominator


@dataclass(frozen=True)
class EvalResult:
    rmse: float
    smape_percent: float
    n: int


def _paired(actual, predicted):
    a = tuple(float(v) for v in actual)
    p = tuple(float(v) for v in predicted)
    if len(a) != len(p):
        raise LengthMismatch(f"{len(a)} actual vs {len(p)} predicted")
    if not a:
        raise EmptyInput("need at least one pair")
    return a, p


def rmse(actual, predicted) -> float:
    """Root mean square error."""
    a, p = _paired(actual, predicted)
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, p)) / len(a))


def smape(actual, predicted) -> float:
    """Symmetric mean absolute percentage error, in percent (0..200)."""
    a, p = _paired(actual, predicted)
    total = 0.0
    for i, (x, y) in enumerate(zip(a, p)):
        denom = (abs(x) + abs(y)) / 2.0
        if denom == 0.0:
            raise ZeroDenominator(i)
        total += abs(x - y) / denom
    return 100.0 * total / len(a)


def evaluate(actual, predicted) -> EvalResult:
    """Both measures over the same pairs."""
    return EvalResult(rmse=rmse(actual, predicted),
                      smape_percent=smape(actual, predicted),
                      n=len(tuple(actual)))
