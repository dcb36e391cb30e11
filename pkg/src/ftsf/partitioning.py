"""Universe-of-discourse partitioning.

Covers the cluster-count heuristic, fuzzy c-means over the raw values, and
cutting the universe into unequal intervals at midpoints of adjacent
cluster centers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CenterOutsideUOD,
    DegenerateRange,
    TooFewDistinctValues,
    UnsortedCenters,
)
from .series_io import TimeSeries


@dataclass(frozen=True)
class UniverseOfDiscourse:
    """Closed interval [y_min - d, y_max + d] containing every observation."""

    lower: float
    upper: float
    margin_d: float

    def __post_init__(self):
        if self.margin_d < 0:
            raise ValueError(f"margin must be non-negative, got {self.margin_d}")
        if not self.lower < self.upper:
            raise DegenerateRange(f"empty universe [{self.lower}, {self.upper}]")


def define_uod(series: TimeSeries, margin_d: float) -> UniverseOfDiscourse:
    """Universe of discourse with a symmetric margin around the observed range."""
    return UniverseOfDiscourse(series.y_min - margin_d, series.y_max + margin_d, margin_d)


def suggest_cluster_count(y_min: float, y_max: float) -> int:
    """Cluster count from decimal-decade binning of the observed range.

    The step is the largest power of ten not exceeding the range; the count
    is the number of step-sized bins touched by [y_min, y_max], never below 2.
    """
    if not y_min < y_max:
        raise DegenerateRange(f"need y_min < y_max, got [{y_min}, {y_max}]")
    step = 10.0 ** math.floor(math.log10(y_max - y_min))
    count = int(math.floor(y_max / step) - math.floor(y_min / step)) + 1
    return max(2, count)


@dataclass(frozen=True, eq=False)
class ClusterModel:
    """Converged fuzzy c-means state over scalar values.

    `memberships` is the n x c matrix (rows sum to 1); columns follow the
    ascending order of `centers`. `sse_trace` holds the objective value
    after each center/membership update pair.
    """

    c: int
    fuzziness_p: float
    centers: tuple[float, ...]
    memberships: np.ndarray
    sse: float
    iterations_used: int
    sse_trace: tuple[float, ...] = ()

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.centers, self.centers[1:])):
            raise ValueError("cluster centers must be strictly ascending")
        self.memberships.setflags(write=False)


def _memberships(x: np.ndarray, centers: np.ndarray, p: float) -> np.ndarray:
    """Membership update: u_ij proportional to (1/d_ij)^(1/(p-1)).

    The exponent acts on the plain euclidean distance, not its square; the
    published cluster tables this module reproduces are fixed points of
    exactly this rule. A point coinciding with one or more centers gets its
    whole membership split over the zero-distance centers (the continuous
    limit).
    """
    d = np.abs(x[:, None] - centers[None, :])
    u = np.empty_like(d)
    hit = d == 0.0
    coincident = hit.any(axis=1)
    if coincident.any():
        z = hit[coincident].astype(float)
        u[coincident] = z / z.sum(axis=1, keepdims=True)
    free = ~coincident
    if free.any():
        inv = d[free] ** (-1.0 / (p - 1.0))
        u[free] = inv / inv.sum(axis=1, keepdims=True)
    return u


def _sse(x: np.ndarray, centers: np.ndarray, u: np.ndarray, p: float) -> float:
    d2 = (x[:, None] - centers[None, :]) ** 2
    return float(((u ** p) * d2).sum())


def fcm_fit(values, c: int, p: float = 2.0, tol: float = 1e-5,
            max_iter: int = 300, seed: int = 42) -> ClusterModel:
    """Cluster scalar values with fuzzy c-means.

    Memberships start uniform-random per row from a seeded generator, then
    center and membership updates alternate until the largest center
    displacement drops below `tol`. Hitting `max_iter` is not an error: the
    best-so-far state is returned with iterations_used == max_iter. Centers
    are sorted ascending once after convergence and membership columns are
    permuted to match.
    """
    x = np.asarray(values, dtype=float).ravel()
    if c < 2:
        raise ValueError(f"need at least 2 clusters, got {c}")
    if not p > 1.0:
        raise ValueError(f"fuzziness must exceed 1, got {p}")
    if len(set(x.tolist())) < c:
        raise TooFewDistinctValues(
            f"{c} clusters need {c} distinct values, got {len(set(x.tolist()))}"
        )

    rng = np.random.default_rng(seed)
    u = rng.random((x.size, c))
    u /= u.sum(axis=1, keepdims=True)

    centers = None
    sse_trace = []
    iterations = 0
    for iterations in range(1, max_iter + 1):
        previous = centers
        weights = u ** p
        denom = weights.sum(axis=0)
        centers = (weights * x[:, None]).sum(axis=0)
        dead = denom == 0.0
        if dead.any() and previous is not None:
            centers[dead] = previous[dead] * 1.0
            denom = np.where(dead, 1.0, denom)
        centers /= denom
        u = _memberships(x, centers, p)
        sse_trace.append(_sse(x, centers, u, p))
        if previous is not None and np.abs(centers - previous).max() < tol:
            break

    order = np.argsort(centers)
    return ClusterModel(
        c=c,
        fuzziness_p=float(p),
        centers=tuple(float(v) for v in centers[order]),
        memberships=u[:, order].copy(),
        sse=sse_trace[-1],
        iterations_used=iterations,
        sse_trace=tuple(sse_trace),
    )


@dataclass(frozen=True)
class IntervalPartition:
    """Unequal intervals tiling the universe, cut at midpoints of centers.

    `boundaries` has c+1 ascending entries starting at the universe lower
    bound and ending at the upper bound; sorted center k lies strictly
    inside interval k (1-based).
    """

    uod: UniverseOfDiscourse
    boundaries: tuple[float, ...]
    centers: tuple[float, ...]

    def __post_init__(self):
        b = self.boundaries
        if len(b) != len(self.centers) + 1:
            raise ValueError("need exactly one more boundary than centers")
        if b[0] != self.uod.lower or b[-1] != self.uod.upper:
            raise ValueError("boundaries must span the universe exactly")
        if any(hi <= lo for lo, hi in zip(b, b[1:])):
            raise ValueError("boundaries must be strictly ascending")
        for k, center in enumerate(self.centers):
            if not b[k] < center < b[k + 1]:
                raise ValueError(f"center {center} escapes interval {k + 1}")

    @property
    def n_intervals(self) -> int:
        return len(self.centers)

    def interval(self, k: int) -> tuple[float, float]:
        """Bounds of the 1-based interval k."""
        if not 1 <= k <= self.n_intervals:
            raise IndexError(f"interval index {k} outside 1..{self.n_intervals}")
        return self.boundaries[k - 1], self.boundaries[k]


def build_intervals(uod: UniverseOfDiscourse, centers) -> IntervalPartition:
    """Cut the universe at midpoints of adjacent sorted centers."""
    cs = tuple(float(v) for v in centers)
    if any(b <= a for a, b in zip(cs, cs[1:])):
        raise UnsortedCenters(f"centers must be strictly ascending, got {cs}")
    for v in cs:
        if not uod.lower < v < uod.upper:
            raise CenterOutsideUOD(
                f"center {v} outside ({uod.lower}, {uod.upper})"
            )
    mids = tuple((a + b) / 2.0 for a, b in zip(cs, cs[1:]))
    boundaries = (uod.lower,) + mids + (uod.upper,)
    return IntervalPartition(uod=uod, boundaries=boundaries, centers=cs)


def format_partition_table(partition: IntervalPartition) -> str:
    """One line per interval: `index, lower, upper, center`, with a header."""
    lines = ["index, lower, upper, center"]
    for k, center in enumerate(partition.centers, start=1):
        lo, hi = partition.interval(k)
        lines.append(f"{k}, {lo!r}, {hi!r}, {center!r}")
    return "\n".join(lines)
