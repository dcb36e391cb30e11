"""Run configuration: defaults, flat key=value files, and override assignments."""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .errors import ConfigError, MissingFile


def _optional_int(text: str):
    if text in ("", "auto", "none"):
        return None
    return int(text)


def _optional_float(text: str):
    if text in ("", "auto", "none"):
        return None
    return float(text)


def _choice(*allowed):
    def parse(text: str):
        if text not in allowed:
            raise ValueError(f"expected one of {allowed}")
        return text
    return parse


@dataclass(frozen=True)
class RunConfig:
    """All knobs of a forecast run. One seed drives clustering and both regressors.

    `overrides` records the raw key=value assignments applied on top of the
    defaults, in application order, for the report's config echo.
    """

    margin_d: float = 0.0
    clusters: int | None = None          # None: use the range heuristic
    train_fraction: float = 0.8
    regressor: str = "svr"
    fuzziness_p: float = 2.0
    fcm_tol: float = 1e-5
    fcm_max_iter: int = 300
    seed: int = 42
    svr_C: float = 1.0
    svr_epsilon: float = 0.1
    svr_kernel: str = "linear"
    svr_degree: int = 3
    svr_gamma: float | None = None       # None: 1 / (n_features * feature variance)
    svr_coef0: float = 0.0
    svr_kkt_tol: float = 1e-3
    svr_max_passes: int = 1000
    mlp_lr: float = 0.3
    mlp_epochs: int = 50000
    mlp_hidden: int | None = None        # None: match the input dimension
    mlp_activation: str = "tanh"
    overrides: tuple[str, ...] = ()

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError(f"train_fraction must be in (0,1), got {self.train_fraction}")
        if self.margin_d < 0:
            raise ConfigError(f"margin_d must be non-negative, got {self.margin_d}")
        if self.regressor not in ("svr", "mlp"):
            raise ConfigError(f"regressor must be svr or mlp, got {self.regressor!r}")
        if not self.fuzziness_p > 1.0:
            raise ConfigError(f"fcm.p must exceed 1, got {self.fuzziness_p}")
        if self.clusters is not None and self.clusters < 2:
            raise ConfigError(f"clusters must be >= 2, got {self.clusters}")
        if not self.svr_C > 0:
            raise ConfigError(f"svr.C must be positive, got {self.svr_C}")
        if self.svr_epsilon < 0:
            raise ConfigError(f"svr.epsilon must be non-negative, got {self.svr_epsilon}")
        if self.svr_kernel not in ("linear", "polynomial", "rbf"):
            raise ConfigError(f"unknown svr.kernel {self.svr_kernel!r}")
        if self.svr_gamma is not None and not self.svr_gamma > 0:
            raise ConfigError(f"svr.gamma must be positive, got {self.svr_gamma}")
        if self.svr_degree < 1:
            raise ConfigError(f"svr.degree must be >= 1, got {self.svr_degree}")
        if not self.mlp_lr > 0:
            raise ConfigError(f"mlp.lr must be positive, got {self.mlp_lr}")
        if self.mlp_epochs < 1:
            raise ConfigError(f"mlp.epochs must be >= 1, got {self.mlp_epochs}")
        if self.mlp_hidden is not None and self.mlp_hidden < 1:
            raise ConfigError(f"mlp.hidden must be >= 1, got {self.mlp_hidden}")
        if self.mlp_activation not in ("tanh", "sigmoid"):
            raise ConfigError(f"mlp.activation must be tanh or sigmoid, got {self.mlp_activation!r}")


CONFIG_KEYS = {
    "margin_d": ("margin_d", float),
    "clusters": ("clusters", _optional_int),
    "train_fraction": ("train_fraction", float),
    "regressor": ("regressor", _choice("svr", "mlp")),
    "fcm.p": ("fuzziness_p", float),
    "fcm.tol": ("fcm_tol", float),
    "fcm.max_iter": ("fcm_max_iter", int),
    "fcm.seed": ("seed", int),
    "svr.C": ("svr_C", float),
    "svr.epsilon": ("svr_epsilon", float),
    "svr.kernel": ("svr_kernel", _choice("linear", "polynomial", "rbf")),
    "svr.degree": ("svr_degree", int),
    "svr.gamma": ("svr_gamma", _optional_float),
    "svr.coef0": ("svr_coef0", float),
    "svr.kkt_tol": ("svr_kkt_tol", float),
    "svr.max_passes": ("svr_max_passes", int),
    "mlp.lr": ("mlp_lr", float),
    "mlp.epochs": ("mlp_epochs", int),
    "mlp.hidden": ("mlp_hidden", _optional_int),
    "mlp.activation": ("mlp_activation", _choice("tanh", "sigmoid")),
}


def apply_assignments(config: RunConfig, assignments) -> RunConfig:
    """New config with `key=value` strings applied in order and recorded."""
    updates = {}
    recorded = list(config.overrides)
    for raw in assignments:
        if "=" not in raw:
            raise ConfigError(f"expected key=value, got {raw!r}")
        key, _, text = raw.partition("=")
        key, text = key.strip(), text.strip()
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        attr, parse = CONFIG_KEYS[key]
        try:
            updates[attr] = parse(text)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {text!r} ({exc})") from exc
        recorded.append(raw.strip())
    return dataclasses.replace(config, overrides=tuple(recorded), **updates)


def load_config(path, base: RunConfig | None = None) -> RunConfig:
    """Read a flat `key = value` file. Blank lines and #-comments are skipped."""
    if not os.path.isfile(path):
        raise MissingFile(str(path))
    assignments = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ConfigError(f"{path}:{lineno}: expected key = value, got {stripped!r}")
            assignments.append(stripped)
    return apply_assignments(base or RunConfig(), assignments)


def _display(value) -> str:
    if value is None:
        return "auto"
    return repr(value) if isinstance(value, float) else str(value)


def config_items(config: RunConfig):
    """(canonical key, display value) pairs in declaration order."""
    for key, (attr, _) in CONFIG_KEYS.items():
        yield key, _display(getattr(config, attr))
