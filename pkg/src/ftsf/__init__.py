"""Fuzzy time series forecasting with interval-index features and kernel regression.

Pipeline: partition the universe of discourse with fuzzy c-means, represent
each observation as (interval index, within-interval membership), learn the
first-order relation with epsilon-SVR or a small MLP, and evaluate with
RMSE/SMAPE.
"""

__version__ = "0.1.0"

from .config import RunConfig, apply_assignments, load_config
from .errors import ForecastError, PipelineError
from .fuzzify import (
    FuzzyFeature,
    MinMaxScaler,
    PatternRow,
    PatternSet,
    build_patterns,
    denormalize,
    fuzzify_value,
    interval_membership,
    locate_interval,
    normalize,
    pattern_csv,
)
from .metrics import EvalResult, evaluate, rmse, smape
from .mlp import MlpModel, mlp_gradients, mlp_init, mlp_loss, mlp_predict, mlp_train
from .partitioning import (
    ClusterModel,
    IntervalPartition,
    UniverseOfDiscourse,
    build_intervals,
    define_uod,
    fcm_fit,
    format_partition_table,
    suggest_cluster_count,
)
from .pipeline import (
    ForecastReport,
    ReportRow,
    emit_plot_data,
    load_model,
    regressor_predict,
    render_report,
    resolve_partition,
    run_forecast,
    save_model,
    train_relation_model,
    write_report,
)
from .series_io import (
    TimeSeries,
    builtin_enrollment,
    builtin_series,
    chronological_split,
    load_csv,
    write_csv,
)
from .svr import KernelSpec, SvrModel, auto_gamma, kernel_eval, svr_predict, svr_train
