"""Epsilon-support-vector regression, solved from scratch.

The soft-margin dual is folded to one signed coefficient per row,
beta_i = alpha_i - alpha_i* in [-C, C] with sum(beta) = 0:

    maximize  -1/2 sum_ij beta_i beta_j K_ij - eps sum_i |beta_i|
              + sum_i y_i beta_i

Training is sequential pairwise coordinate ascent: two coefficients move
in opposite directions (preserving the equality constraint) and each pair
subproblem is solved exactly, so the dual objective never decreases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CorruptFile,
    DimensionMismatch,
    EmptyTrainingSet,
    LengthMismatch,
    UnknownFormat,
)

SUPPORT_FLOOR = 1e-8
_GAIN_FLOOR = 1e-12

KERNEL_KINDS = ("linear", "polynomial", "rbf")


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family and its parameters. Unused parameters are ignored."""

    kind: str
    degree: int = 3
    gamma: float = 1.0
    coef0: float = 0.0

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ValueError(f"unknown kernel {self.kind!r}, expected one of {KERNEL_KINDS}")
        if self.kind == "polynomial" and self.degree < 1:
            raise ValueError(f"polynomial degree must be >= 1, got {self.degree}")
        if self.kind in ("polynomial", "rbf") and not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")


def kernel_eval(spec: KernelSpec, x1, x2) -> float:
    """Kernel value for two feature tuples of equal dimension."""
    if len(x1) != len(x2):
        raise DimensionMismatch(f"feature dimensions differ: {len(x1)} vs {len(x2)}")
    if spec.kind == "linear":
        return float(sum(a * b for a, b in zip(x1, x2)))
    if spec.kind == "polynomial":
        dot = sum(a * b for a, b in zip(x1, x2))
        return float((spec.gamma * dot + spec.coef0) ** spec.degree)
    d2 = sum((a - b) ** 2 for a, b in zip(x1, x2))
    return float(math.exp(-spec.gamma * d2))


def _gram(spec: KernelSpec, X: np.ndarray) -> np.ndarray:
    dots = X @ X.T
    if spec.kind == "linear":
        return dots
    if spec.kind == "polynomial":
        return (spec.gamma * dots + spec.coef0) ** spec.degree
    sq = (X * X).sum(axis=1)
    d2 = np.maximum(sq[:, None] + sq[None, :] - 2.0 * dots, 0.0)
    return np.exp(-spec.gamma * d2)


def auto_gamma(inputs) -> float:
    """Scale heuristic: 1 / (n_features * variance of all feature entries)."""
    X = np.asarray(inputs, dtype=float)
    var = float(X.var())
    if var <= 0.0:
        return 1.0
    return 1.0 / (X.shape[1] * var)


@dataclass(frozen=True, eq=False)
class SvrModel:
    """Trained regressor: dual expansion over the stored support rows.

    Only rows with |beta| above the numerical floor are kept.
    `objective_trace` records the dual objective after each accepted
    pairwise step (training metadata, not serialized).
    """

    kernel: KernelSpec
    cost_C: float
    epsilon: float
    support_inputs: tuple[tuple[float, ...], ...]
    dual_coefs: tuple[float, ...]
    bias_b: float
    objective_trace: tuple[float, ...] = ()


def svr_predict(model: SvrModel, x) -> float:
    """Dual expansion value sum_i beta_i K(s_i, x) + b."""
    xs = tuple(float(v) for v in x)
    if model.support_inputs and len(xs) != len(model.support_inputs[0]):
        raise DimensionMismatch(
            f"expected {len(model.support_inputs[0])} features, got {len(xs)}"
        )
    acc = model.bias_b
    for beta, sv in zip(model.dual_coefs, model.support_inputs):
        acc += beta * kernel_eval(model.kernel, sv, xs)
    return float(acc)


def _solve_pair(bi, bj, Fi, Fj, Kii, Kjj, Kij, C, eps):
    """Exact maximizer of the dual restricted to (beta_i, beta_j) += (d, -d).

    The restricted objective is concave piecewise-quadratic in d with kinks
    where either coefficient crosses zero, so the maximum sits at a box
    endpoint, a kink, or a per-sign stationary point. Returns (d, gain).
    """
    lo = max(-C - bi, bj - C)
    hi = min(C - bi, bj + C)
    if hi <= lo:
        return 0.0, 0.0
    eta = Kii + Kjj - 2.0 * Kij
    q = Fi - Fj
    candidates = {lo, hi}
    for kink in (-bi, bj):
        if lo < kink < hi:
            candidates.add(kink)
    if eta > 0.0:
        for si in (1.0, -1.0):
            for sj in (1.0, -1.0):
                d = (q - eps * si + eps * sj) / eta
                candidates.add(min(hi, max(lo, d)))
    best_d, best_gain = 0.0, 0.0
    for d in candidates:
        gain = (
            d * q - 0.5 * eta * d * d
            - eps * (abs(bi + d) - abs(bi))
            - eps * (abs(bj - d) - abs(bj))
        )
        if gain > best_gain:
            best_d, best_gain = d, gain
    return best_d, best_gain


def _bias_bounds(beta, F, C, eps):
    """Per-row admissible interval for the bias implied by the KKT conditions."""
    n = beta.size
    low = np.full(n, -np.inf)
    up = np.full(n, np.inf)
    slack = 1e-9 * max(1.0, C)
    for i in range(n):
        b = beta[i]
        if abs(b) <= SUPPORT_FLOOR:
            low[i], up[i] = F[i] - eps, F[i] + eps
        elif b >= C - slack:
            up[i] = F[i] - eps
        elif b <= -C + slack:
            low[i] = F[i] + eps
        elif b > 0:
            low[i] = up[i] = F[i] - eps
        else:
            low[i] = up[i] = F[i] + eps
    return low, up


def _bias_value(beta, F, C, eps) -> float:
    """Average over unbounded support rows, else midpoint of the feasible gap."""
    slack = 1e-9 * max(1.0, C)
    inner = (np.abs(beta) > SUPPORT_FLOOR) & (np.abs(beta) < C - slack)
    if inner.any():
        return float(np.mean(F[inner] - eps * np.sign(beta[inner])))
    low, up = _bias_bounds(beta, F, C, eps)
    lo, hi = float(np.max(low)), float(np.min(up))
    if math.isinf(lo) and math.isinf(hi):
        return 0.0
    if math.isinf(lo):
        return hi
    if math.isinf(hi):
        return lo
    return 0.5 * (lo + hi)


def _violations(beta, F, b, C, eps):
    """KKT violation per row given a bias value. Zero everywhere at optimality."""
    E = b - F
    slack = 1e-9 * max(1.0, C)
    conds = [
        np.abs(beta) <= SUPPORT_FLOOR,
        beta >= C - slack,
        beta <= -C + slack,
        beta > 0,
    ]
    choices = [
        np.maximum(0.0, np.abs(E) - eps),
        np.maximum(0.0, E + eps),
        np.maximum(0.0, eps - E),
        np.abs(E + eps),
    ]
    return np.select(conds, choices, default=np.abs(E - eps))


def svr_train(inputs, targets, cost_C: float = 1.0, epsilon: float = 0.1,
              kernel: KernelSpec | None = None, kkt_tol: float = 1e-3,
              max_passes: int = 1000, seed: int = 42) -> SvrModel:
    """Fit the dual by exact pairwise coordinate ascent.

    Each pass recomputes the KKT state, picks the worst violator, and pairs
    it with the row of largest error spread (falling back to seeded random
    partners when that pair cannot move). Stops when no violation exceeds
    `kkt_tol`, when no pair can improve the dual, or after `max_passes`.
    """
    X = np.asarray(inputs, dtype=float)
    y = np.asarray(targets, dtype=float).ravel()
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.shape[0] != y.size:
        raise LengthMismatch(f"{X.shape[0]} inputs vs {y.size} targets")
    if X.shape[0] < 2:
        raise EmptyTrainingSet(f"need at least 2 training rows, got {X.shape[0]}")
    if not cost_C > 0:
        raise ValueError(f"C must be positive, got {cost_C}")
    if epsilon < 0:
        raise ValueError(f"epsilon must be non-negative, got {epsilon}")
    if kernel is None:
        kernel = KernelSpec(kind="rbf", gamma=auto_gamma(X))

    n = X.shape[0]
    K = _gram(kernel, X)
    rng = np.random.default_rng(seed)
    beta = np.zeros(n)
    objective = 0.0
    trace = [0.0]

    for _ in range(max_passes):
        F = y - K @ beta
        b = _bias_value(beta, F, cost_C, epsilon)
        viol = _violations(beta, F, b, cost_C, epsilon)
        if float(viol.max()) <= kkt_tol:
            break
        i = int(np.argmax(viol))
        spread = np.abs(F - F[i])
        spread[i] = -1.0
        partners = [int(np.argmax(spread))]
        partners += [int(j) for j in rng.permutation(n) if j != i and j != partners[0]]
        floor = _GAIN_FLOOR * max(1.0, abs(objective))
        for j in partners:
            d, gain = _solve_pair(
                beta[i], beta[j], F[i], F[j], K[i, i], K[j, j], K[i, j],
                cost_C, epsilon,
            )
            if gain > floor:
                beta[i] += d
                beta[j] -= d
                objective += gain
                trace.append(objective)
                break
        else:
            break  # pairwise-stationary for the worst violator: best so far

    F = y - K @ beta
    bias = _bias_value(beta, F, cost_C, epsilon)
    keep = np.abs(beta) > SUPPORT_FLOOR
    return SvrModel(
        kernel=kernel,
        cost_C=float(cost_C),
        epsilon=float(epsilon),
        support_inputs=tuple(tuple(float(v) for v in row) for row in X[keep]),
        dual_coefs=tuple(float(v) for v in beta[keep]),
        bias_b=float(bias),
        objective_trace=tuple(trace),
    )


# serialization: flat text, 17 significant digits round-trips doubles exactly

def _g17(x: float) -> str:
    return format(float(x), ".17g")


def model_to_text(model: SvrModel) -> str:
    k = model.kernel
    if k.kind == "linear":
        kernel_line = "kernel linear"
    elif k.kind == "rbf":
        kernel_line = f"kernel rbf {_g17(k.gamma)}"
    else:
        kernel_line = f"kernel polynomial {k.degree} {_g17(k.gamma)} {_g17(k.coef0)}"
    lines = ["svr v1", kernel_line, f"C {_g17(model.cost_C)} epsilon {_g17(model.epsilon)}"]
    for beta, sv in zip(model.dual_coefs, model.support_inputs):
        lines.append(" ".join([_g17(beta)] + [_g17(v) for v in sv]))
    lines.append(f"b {_g17(model.bias_b)}")
    return "\n".join(lines) + "\n"


def model_from_text(text: str) -> SvrModel:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "svr v1":
        raise UnknownFormat(f"not an svr v1 file: {lines[0] if lines else '<empty>'!r}")
    try:
        ktok = lines[1].split()
        if ktok[0] != "kernel":
            raise ValueError("missing kernel line")
        if ktok[1] == "linear":
            kernel = KernelSpec(kind="linear")
        elif ktok[1] == "rbf":
            kernel = KernelSpec(kind="rbf", gamma=float(ktok[2]))
        elif ktok[1] == "polynomial":
            kernel = KernelSpec(
                kind="polynomial", degree=int(ktok[2]),
                gamma=float(ktok[3]), coef0=float(ktok[4]),
            )
        else:
            raise ValueError(f"unknown kernel {ktok[1]!r}")
        ctok = lines[2].split()
        if ctok[0] != "C" or ctok[2] != "epsilon":
            raise ValueError("malformed C/epsilon line")
        cost_C, epsilon = float(ctok[1]), float(ctok[3])
        btok = lines[-1].split()
        if btok[0] != "b":
            raise ValueError("missing bias line")
        bias = float(btok[1])
        coefs, supports = [], []
        for ln in lines[3:-1]:
            vals = [float(t) for t in ln.split()]
            coefs.append(vals[0])
            supports.append(tuple(vals[1:]))
    except (ValueError, IndexError) as exc:
        raise CorruptFile(f"bad svr model file: {exc}") from exc
    return SvrModel(
        kernel=kernel, cost_C=cost_C, epsilon=epsilon,
        support_inputs=tuple(supports), dual_coefs=tuple(coefs), bias_b=bias,
    )
