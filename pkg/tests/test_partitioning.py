import numpy as np
import pytest

from ftsf import (
    TimeSeries,
    build_intervals,
    define_uod,
    fcm_fit,
    format_partition_table,
    suggest_cluster_count,
)
from ftsf.errors import (
    CenterOutsideUOD,
    DegenerateRange,
    TooFewDistinctValues,
    UnsortedCenters,
)
from ftsf.partitioning import UniverseOfDiscourse, _memberships

from conftest import FCM_SWEEP_SEEDS, TABLE4_BOUNDARIES, TABLE4_CENTERS


class TestDefineUod:
    def test_enrollment_margin_8(self, enrollment):
        uod = define_uod(enrollment, 8.0)
        assert uod.lower == 13047 and uod.upper == 19345

    def test_zero_margin(self, enrollment):
        uod = define_uod(enrollment, 0.0)
        assert uod.lower == 13055 and uod.upper == 19337

    def test_small_series(self):
        series = TimeSeries(("a", "b", "c", "d"), (5.0, 7.0, 9.0, 10.0))
        uod = define_uod(series, 2.0)
        assert uod.lower == 3 and uod.upper == 12

    def test_negative_margin_rejected(self, enrollment):
        with pytest.raises(ValueError):
            define_uod(enrollment, -1.0)


class TestSuggestClusterCount:
    @pytest.mark.parametrize("pair,expected", [
        ((13055, 19337), 7),
        ((3442, 6108), 4),
        ((3846, 6466), 4),
        ((4135, 6146), 3),
        ((0.5, 9.5), 10),
    ])
    def test_known_ranges(self, pair, expected):
        assert suggest_cluster_count(*pair) == expected

    def test_documented_exception_range(self):
        # The published table shows 2 clusters for this range; the heuristic
        # as stated yields 3 and the override config key covers the gap.
        assert suggest_cluster_count(5312, 7038) == 3

    def test_degenerate(self):
        with pytest.raises(DegenerateRange):
            suggest_cluster_count(5.0, 5.0)
        with pytest.raises(DegenerateRange):
            suggest_cluster_count(6.0, 5.0)

    @pytest.mark.parametrize("lo,hi", [
        (13055, 19337), (3442, 6108), (0.5, 9.5), (1.23, 4.56), (77.0, 312.0),
    ])
    def test_scale_covariant_under_times_ten(self, lo, hi):
        base = suggest_cluster_count(lo, hi)
        assert suggest_cluster_count(10 * lo, 10 * hi) == base
        assert suggest_cluster_count(100 * lo, 100 * hi) == base

    def test_at_least_two(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            lo = float(rng.uniform(-50, 50))
            hi = lo + float(rng.uniform(1e-3, 1e4))
            assert suggest_cluster_count(lo, hi) >= 2


class TestFcmFit:
    def test_coincident_pairs(self):
        model = fcm_fit((0.0, 0.0, 10.0, 10.0), 2, tol=1e-9, max_iter=500, seed=1)
        assert abs(model.centers[0] - 0.0) < 1e-6
        assert abs(model.centers[1] - 10.0) < 1e-6
        assert model.memberships[0, 0] >= 0.999

    def test_equidistant_point_gets_half(self):
        model = fcm_fit((0.0, 0.0, 5.0, 10.0, 10.0), 2, tol=1e-10, max_iter=1000, seed=2)
        assert model.memberships[2, 0] == pytest.approx(0.5, abs=1e-6)
        assert model.memberships[2, 1] == pytest.approx(0.5, abs=1e-6)

    def test_enrollment_centers_match_published(self, enrollment):
        model = fcm_fit(enrollment.values, 7)
        for got, want in zip(model.centers, TABLE4_CENTERS):
            assert abs(got - want) / want <= 0.005

    def test_membership_rows_normalized(self, enrollment):
        model = fcm_fit(enrollment.values, 7)
        sums = model.memberships.sum(axis=1)
        assert np.abs(sums - 1.0).max() <= 1e-9
        assert model.memberships.min() >= 0.0
        assert model.memberships.max() <= 1.0

    @pytest.mark.parametrize("seed", FCM_SWEEP_SEEDS + (42,))
    def test_sse_trace_monotone(self, enrollment, seed):
        model = fcm_fit(enrollment.values, 7, seed=seed)
        trace = model.sse_trace
        for before, after in zip(trace, trace[1:]):
            assert after <= before * (1.0 + 1e-9)

    @pytest.mark.parametrize("values,c", [
        ((0.0, 0.0, 10.0, 10.0), 2),
        ((0.0, 0.0, 5.0, 10.0, 10.0), 2),
        ((1.0, 2.0, 3.0, 7.0, 8.0, 9.0), 3),
    ])
    def test_sse_trace_monotone_small_fixtures(self, values, c):
        for seed in range(10):
            trace = fcm_fit(values, c, seed=seed).sse_trace
            for before, after in zip(trace, trace[1:]):
                assert after <= before * (1.0 + 1e-9)

    def test_sse_matches_objective_recomputation(self, enrollment):
        model = fcm_fit(enrollment.values, 7)
        x = np.asarray(enrollment.values)
        centers = np.asarray(model.centers)
        d2 = (x[:, None] - centers[None, :]) ** 2
        sse = float(((model.memberships ** model.fuzziness_p) * d2).sum())
        assert model.sse == pytest.approx(sse, rel=1e-6)

    def test_symmetric_data_symmetric_centers(self):
        values = (1.0, 2.0, 3.0, 7.0, 8.0, 9.0)  # symmetric about 5
        model = fcm_fit(values, 2, tol=1e-9, max_iter=1000, seed=4)
        assert (model.centers[0] + model.centers[1]) / 2 == pytest.approx(5.0, abs=1e-4)

    def test_coincident_point_guard_direct(self):
        x = np.array([1.0, 4.0, 9.0])
        u = _memberships(x, np.array([4.0, 8.0]), 2.0)
        assert u[1, 0] == 1.0 and u[1, 1] == 0.0
        assert np.abs(u.sum(axis=1) - 1.0).max() <= 1e-12

    def test_too_few_distinct(self):
        with pytest.raises(TooFewDistinctValues):
            fcm_fit((1.0, 1.0, 1.0, 2.0), 3)

    def test_determinism(self, enrollment):
        a = fcm_fit(enrollment.values, 7, seed=9)
        b = fcm_fit(enrollment.values, 7, seed=9)
        assert a.centers == b.centers
        assert np.array_equal(a.memberships, b.memberships)
        assert a.iterations_used == b.iterations_used

    def test_non_convergence_returns_best_so_far(self, enrollment):
        model = fcm_fit(enrollment.values, 7, max_iter=2)
        assert model.iterations_used == 2
        assert len(model.centers) == 7

    def test_parameter_validation(self, enrollment):
        with pytest.raises(ValueError):
            fcm_fit(enrollment.values, 1)
        with pytest.raises(ValueError):
            fcm_fit(enrollment.values, 7, p=1.0)


class TestBuildIntervals:
    def test_published_boundaries(self, table4_partition):
        assert table4_partition.boundaries[1] == pytest.approx(14352.045, abs=1e-9)
        assert table4_partition.interval(7) == (18657.795, 19345.0)
        for got, want in zip(table4_partition.boundaries, TABLE4_BOUNDARIES):
            assert got == pytest.approx(want, abs=1e-9)

    def test_single_midpoint(self):
        uod = UniverseOfDiscourse(0.0, 10.0, 0.0)
        part = build_intervals(uod, (4.0, 8.0))
        assert part.boundaries == (0.0, 6.0, 10.0)

    def test_center_outside(self):
        uod = UniverseOfDiscourse(0.0, 10.0, 0.0)
        with pytest.raises(CenterOutsideUOD):
            build_intervals(uod, (4.0, 11.0))
        with pytest.raises(CenterOutsideUOD):
            build_intervals(uod, (0.0, 4.0))

    def test_unsorted(self):
        uod = UniverseOfDiscourse(0.0, 10.0, 0.0)
        with pytest.raises(UnsortedCenters):
            build_intervals(uod, (8.0, 4.0))
        with pytest.raises(UnsortedCenters):
            build_intervals(uod, (4.0, 4.0))

    def test_tiling_exact(self, table4_partition):
        widths = [hi - lo for lo, hi in
                  (table4_partition.interval(k) for k in range(1, 8))]
        span = table4_partition.uod.upper - table4_partition.uod.lower
        assert sum(widths) == pytest.approx(span, rel=1e-12)

    def test_centers_strictly_inside(self, table4_partition):
        for k, center in enumerate(table4_partition.centers, start=1):
            lo, hi = table4_partition.interval(k)
            assert lo < center < hi

    def test_table_format(self, table4_partition):
        lines = format_partition_table(table4_partition).splitlines()
        assert lines[0] == "index, lower, upper, center"
        assert len(lines) == 8
        first = lines[1].split(", ")
        assert first[0] == "1"
        assert float(first[1]) == 13047.0
