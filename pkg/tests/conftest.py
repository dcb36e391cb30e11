"""Shared fixtures: the enrollment worked example's published values."""

import pytest

from ftsf import build_intervals, builtin_enrollment, define_uod

# Published cluster centers and interval boundaries for the enrollment data
# (universe [13047, 19345], 7 clusters).
TABLE4_CENTERS = (
    13573.95, 15130.14, 15448.22, 15885.33, 16825.08, 18190.36, 19125.23,
)
TABLE4_BOUNDARIES = (
    13047.0, 14352.045, 15289.18, 15666.775, 16355.205, 17507.72, 18657.795, 19345.0,
)

# Published (interval index, membership) features of the 21 pattern inputs,
# observations 1971..1991.
TABLE2_FEATURES = (
    (1, 0.00613), (1, 0.39538), (1, 0.62833), (2, 0.36702), (3, 0.45238),
    (3, 0.05778), (3, 0.83110), (4, 0.28212), (5, 0.39200), (5, 0.48918),
    (5, 0.02845), (3, 0.38088), (3, 0.55037), (2, 0.84614), (2, 0.86535),
    (4, 0.46079), (5, 0.43712), (6, 0.55846), (7, 0.45431), (7, 0.97526),
    (7, 0.98835),
)

# Published normalized series, one value per observation 1971..1992.
TABLE2_NORMALIZED = (
    0.0, 0.08086, 0.12925, 0.26122, 0.38283, 0.35912, 0.40560, 0.44667,
    0.59726, 0.61509, 0.53056, 0.37854, 0.38872, 0.33269, 0.33556, 0.46625,
    0.60553, 0.81104, 0.94157, 0.99856, 1.0, 0.92661,
)

# Published test-split rows (forecast years 1988..1992): actual enrollment
# and the reference method's forecasts, with footer RMSE 1211.08 / SMAPE 6.20.
TABLE3_TEST_ACTUAL = (18150.0, 18970.0, 19328.0, 19337.0, 18876.0)
TABLE3_TEST_SVM = (16752.08, 17440.31, 17875.35, 18460.41, 18474.99)

# Seeds whose fuzzy c-means runs converge to the published centers.
FCM_SWEEP_SEEDS = (0, 2, 5, 6, 8)


@pytest.fixture
def enrollment():
    return builtin_enrollment()


@pytest.fixture
def table4_partition(enrollment):
    return build_intervals(define_uod(enrollment, 8.0), TABLE4_CENTERS)
