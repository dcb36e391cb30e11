"""Single-hidden-layer perceptron regressor trained by full-batch gradient descent."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CorruptFile, DimensionMismatch, DivergedLoss, LengthMismatch, UnknownFormat

ACTIVATIONS = ("tanh", "sigmoid")


@dataclass(frozen=True, eq=False)
class MlpModel:
    """Weights of an input -> hidden -> linear-output network.

    `loss_trace` holds the training MSE per epoch plus the final value
    (training metadata, not serialized).
    """

    weights_ih: np.ndarray  # (input_dim, hidden_dim)
    bias_h: np.ndarray      # (hidden_dim,)
    weights_ho: np.ndarray  # (hidden_dim,)
    bias_o: float
    hidden_activation: str = "tanh"
    loss_trace: tuple[float, ...] = ()

    def __post_init__(self):
        if self.hidden_activation not in ACTIVATIONS:
            raise ValueError(f"unknown activation {self.hidden_activation!r}")
        for arr in (self.weights_ih, self.bias_h, self.weights_ho):
            arr.setflags(write=False)

    @property
    def input_dim(self) -> int:
        return self.weights_ih.shape[0]

    @property
    def hidden_dim(self) -> int:
        return self.weights_ih.shape[1]


def mlp_init(input_dim: int, hidden_dim: int | None = None, seed: int = 42,
             activation: str = "tanh") -> MlpModel:
    """Fresh model: weights uniform in +-1/sqrt(fan_in), biases zero."""
    if input_dim < 1:
        raise ValueError(f"input_dim must be >= 1, got {input_dim}")
    hidden = input_dim if hidden_dim is None else hidden_dim
    if hidden < 1:
        raise ValueError(f"hidden_dim must be >= 1, got {hidden}")
    rng = np.random.default_rng(seed)
    bound_ih = 1.0 / math.sqrt(input_dim)
    bound_ho = 1.0 / math.sqrt(hidden)
    return MlpModel(
        weights_ih=rng.uniform(-bound_ih, bound_ih, size=(input_dim, hidden)),
        bias_h=np.zeros(hidden),
        weights_ho=rng.uniform(-bound_ho, bound_ho, size=hidden),
        bias_o=0.0,
        hidden_activation=activation,
    )


def _activate(z: np.ndarray, kind: str) -> np.ndarray:
    if kind == "tanh":
        return np.tanh(z)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _activation_grad(h: np.ndarray, kind: str) -> np.ndarray:
    if kind == "tanh":
        return 1.0 - h * h
    return h * (1.0 - h)


def _forward(W1, b1, w2, b2, kind, X):
    h = _activate(X @ W1 + b1, kind)
    return h, h @ w2 + b2


def _loss_and_grads(W1, b1, w2, b2, kind, X, y):
    n = X.shape[0]
    h, out = _forward(W1, b1, w2, b2, kind, X)
    r = out - y
    loss = float(np.mean(r * r))
    dout = (2.0 / n) * r
    gw2 = h.T @ dout
    gb2 = float(dout.sum())
    dh = dout[:, None] * w2[None, :] * _activation_grad(h, kind)
    gW1 = X.T @ dh
    gb1 = dh.sum(axis=0)
    return loss, gW1, gb1, gw2, gb2


def _check_data(model: MlpModel, inputs, targets):
    X = np.asarray(inputs, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    y = np.asarray(targets, dtype=float).ravel()
    if X.shape[0] != y.size:
        raise LengthMismatch(f"{X.shape[0]} inputs vs {y.size} targets")
    if X.shape[1] != model.input_dim:
        raise DimensionMismatch(f"expected {model.input_dim} features, got {X.shape[1]}")
    return X, y


def mlp_loss(model: MlpModel, inputs, targets) -> float:
    """Mean squared error of the model on the given rows."""
    X, y = _check_data(model, inputs, targets)
    _, out = _forward(model.weights_ih, model.bias_h, model.weights_ho,
                      model.bias_o, model.hidden_activation, X)
    r = out - y
    return float(np.mean(r * r))


def mlp_gradients(model: MlpModel, inputs, targets):
    """Analytic MSE gradients: (d_weights_ih, d_bias_h, d_weights_ho, d_bias_o)."""
    X, y = _check_data(model, inputs, targets)
    _, gW1, gb1, gw2, gb2 = _loss_and_grads(
        model.weights_ih, model.bias_h, model.weights_ho, model.bias_o,
        model.hidden_activation, X, y,
    )
    return gW1, gb1, gw2, gb2


def mlp_train(model: MlpModel, inputs, targets, learning_rate: float = 0.3,
              epochs: int = 50000) -> MlpModel:
    """Full-batch gradient descent on MSE; returns a new trained model.

    The defaults are sized for interval-index features, whose magnitude
    starts the hidden layer saturated: unsaturating takes many epochs.
    Raises DivergedLoss as soon as the loss stops being finite.
    """
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")
    if not learning_rate > 0:
        raise ValueError(f"learning rate must be positive, got {learning_rate}")
    X, y = _check_data(model, inputs, targets)
    W1 = model.weights_ih.copy()
    b1 = model.bias_h.copy()
    w2 = model.weights_ho.copy()
    b2 = model.bias_o
    kind = model.hidden_activation
    losses = []
    with np.errstate(over="ignore", invalid="ignore"):  # divergence is caught below
        for _ in range(epochs):
            loss, gW1, gb1, gw2, gb2 = _loss_and_grads(W1, b1, w2, b2, kind, X, y)
            if not math.isfinite(loss):
                raise DivergedLoss(f"loss became {loss} after {len(losses)} epochs")
            losses.append(loss)
            W1 -= learning_rate * gW1
            b1 -= learning_rate * gb1
            w2 -= learning_rate * gw2
            b2 -= learning_rate * gb2
        final = float(np.mean((_forward(W1, b1, w2, b2, kind, X)[1] - y) ** 2))
    if not math.isfinite(final):
        raise DivergedLoss(f"loss became {final} after {epochs} epochs")
    losses.append(final)
    return MlpModel(
        weights_ih=W1, bias_h=b1, weights_ho=w2, bias_o=float(b2),
        hidden_activation=kind, loss_trace=tuple(losses),
    )


def mlp_predict(model: MlpModel, x) -> float:
    """Network output for one feature tuple."""
    xs = np.asarray(x, dtype=float).ravel()
    if xs.size != model.input_dim:
        raise DimensionMismatch(f"expected {model.input_dim} features, got {xs.size}")
    h = _activate(xs @ model.weights_ih + model.bias_h, model.hidden_activation)
    return float(h @ model.weights_ho + model.bias_o)


def _g17(x: float) -> str:
    return format(float(x), ".17g")


def model_to_text(model: MlpModel) -> str:
    lines = [
        "mlp v1",
        f"dims {model.input_dim} {model.hidden_dim}",
        f"activation {model.hidden_activation}",
        "wih " + " ".join(_g17(v) for v in model.weights_ih.ravel()),
        "bh " + " ".join(_g17(v) for v in model.bias_h),
        "who " + " ".join(_g17(v) for v in model.weights_ho),
        f"bo {_g17(model.bias_o)}",
    ]
    return "\n".join(lines) + "\n"


def model_from_text(text: str) -> MlpModel:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "mlp v1":
        raise UnknownFormat(f"not an mlp v1 file: {lines[0] if lines else '<empty>'!r}")
    try:
        fields = {}
        for ln in lines[1:]:
            key, _, rest = ln.partition(" ")
            fields[key] = rest.split()
        input_dim, hidden_dim = int(fields["dims"][0]), int(fields["dims"][1])
        activation = fields["activation"][0]
        wih = np.array([float(t) for t in fields["wih"]]).reshape(input_dim, hidden_dim)
        bh = np.array([float(t) for t in fields["bh"]])
        who = np.array([float(t) for t in fields["who"]])
        bo = float(fields["bo"][0])
        if bh.size != hidden_dim or who.size != hidden_dim:
            raise ValueError("bias/output sizes disagree with dims")
    except (KeyError, ValueError, IndexError) as exc:
        raise CorruptFile(f"bad mlp model file: {exc}") from exc
    return MlpModel(weights_ih=wih, bias_h=bh, weights_ho=who, bias_o=bo,
                    hidden_activation=activation)
