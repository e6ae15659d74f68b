"""Multi-layer perceptron with a single logistic output unit.

Loss is mean binary cross-entropy plus an L2 penalty on weights (biases
excluded), alpha/(2n) * sum(W^2) per batch of n rows. `loss_and_grads` is
the one backprop path, shared by training and by the finite-difference
gradient tests.

Unspecified training constants are common defaults and are recorded in the
model payload for provenance: batch size 32, base step 0.001, Adam betas
(0.9, 0.999) with eps 1e-8, at most 500 epochs, early stop on epoch-loss
change below 1e-6. The adaptive schedule divides the step by 5 after the
epoch loss fails to improve by 1e-4 for 2 consecutive epochs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..rng import child_rng
from .base import FittedModel, ModelError, check_training_inputs, hp_dict

BATCH_SIZE = 32
BASE_STEP = 1e-3
MAX_EPOCHS = 500
EARLY_STOP_TOL = 1e-6
SCHEDULE_TOL = 1e-4
SCHEDULE_PATIENCE = 2
ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


@dataclass(frozen=True)
class MlpHP:
    hidden_layers: tuple[int, ...] = (18,)
    activation: str = "relu"           # tanh | relu | logistic
    solver: str = "adam"               # sgd | adam (adaptive moment estimation)
    alpha: float = 1e-4
    learning_rate_schedule: str = "constant"   # constant | adaptive

    def __post_init__(self):
        object.__setattr__(self, "hidden_layers", tuple(int(h) for h in self.hidden_layers))
        if not self.hidden_layers or any(h < 1 for h in self.hidden_layers):
            raise ModelError("hidden_layers must be a non-empty tuple of positive sizes")
        if self.activation not in ("tanh", "relu", "logistic"):
            raise ModelError(f"unknown activation: {self.activation!r}")
        if self.solver not in ("sgd", "adam"):
            raise ModelError(f"unknown solver: {self.solver!r}")
        if self.alpha < 0:
            raise ModelError("alpha must be >= 0")
        if self.learning_rate_schedule not in ("constant", "adaptive"):
            raise ModelError(f"unknown schedule: {self.learning_rate_schedule!r}")


def _sigmoid(z):
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500.0, 500.0)))


def _activate(z, kind):
    if kind == "tanh":
        return np.tanh(z)
    if kind == "relu":
        return np.maximum(0.0, z)
    return _sigmoid(z)


def _activate_grad(z, a, kind):
    if kind == "tanh":
        return 1.0 - a * a
    if kind == "relu":
        return (z > 0).astype(np.float64)
    return a * (1.0 - a)


def _forward(weights, biases, X, activation):
    """Returns (pre-activations, activations) per layer; last entry is the output proba."""
    zs, acts = [], [X]
    a = X
    for l, (W, b) in enumerate(zip(weights, biases)):
        z = a @ W + b
        zs.append(z)
        a = _sigmoid(z) if l == len(weights) - 1 else _activate(z, activation)
        acts.append(a)
    return zs, acts


def loss_and_grads(weights, biases, X, y, alpha, activation):
    """Batch loss and analytic gradients for every weight matrix and bias."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64).reshape(-1, 1)
    n = X.shape[0]
    zs, acts = _forward(weights, biases, X, activation)
    p = np.clip(acts[-1], 1e-12, 1.0 - 1e-12)
    bce = float(-np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))
    penalty = 0.5 * alpha / n * sum(float(np.sum(W * W)) for W in weights)

    grad_W = [None] * len(weights)
    grad_b = [None] * len(weights)
    delta = (acts[-1] - y) / n          # d(mean BCE)/dz at the logistic output
    for l in range(len(weights) - 1, -1, -1):
        grad_W[l] = acts[l].T @ delta + alpha / n * weights[l]
        grad_b[l] = delta.sum(axis=0)
        if l > 0:
            delta = (delta @ weights[l].T) * _activate_grad(zs[l - 1], acts[l], activation)
    return bce + penalty, grad_W, grad_b


def init_params(n_features, hidden_layers, seed):
    """Glorot-uniform weights, zero biases, one named stream per layer."""
    sizes = [n_features, *hidden_layers, 1]
    weights, biases = [], []
    for l in range(len(sizes) - 1):
        fan_in, fan_out = sizes[l], sizes[l + 1]
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        rng = child_rng(seed, "mlp", "init", l)
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return weights, biases


def fit_mlp(X, y, hp: MlpHP, seed: int, *, max_epochs: int = MAX_EPOCHS) -> FittedModel:
    X, y = check_training_inputs(X, y)
    n = X.shape[0]
    weights, biases = init_params(X.shape[1], hp.hidden_layers, seed)

    if hp.solver == "adam":
        m_W = [np.zeros_like(W) for W in weights]
        v_W = [np.zeros_like(W) for W in weights]
        m_b = [np.zeros_like(b) for b in biases]
        v_b = [np.zeros_like(b) for b in biases]
        t = 0

    shuffle_rng = child_rng(seed, "mlp", "shuffle")
    step = BASE_STEP
    best_loss = np.inf
    stall = 0
    prev_loss = None
    epochs_run = 0

    for epoch in range(max_epochs):
        order = shuffle_rng.permutation(n)
        batch_losses = []
        for start in range(0, n, BATCH_SIZE):
            rows = order[start:start + BATCH_SIZE]
            loss, gW, gb = loss_and_grads(weights, biases, X[rows], y[rows], hp.alpha, hp.activation)
            batch_losses.append(loss)
            if hp.solver == "sgd":
                for l in range(len(weights)):
                    weights[l] -= step * gW[l]
                    biases[l] -= step * gb[l]
            else:
                t += 1
                correct1 = 1.0 - ADAM_BETA1 ** t
                correct2 = 1.0 - ADAM_BETA2 ** t
                for l in range(len(weights)):
                    m_W[l] = ADAM_BETA1 * m_W[l] + (1 - ADAM_BETA1) * gW[l]
                    v_W[l] = ADAM_BETA2 * v_W[l] + (1 - ADAM_BETA2) * gW[l] ** 2
                    weights[l] -= step * (m_W[l] / correct1) / (np.sqrt(v_W[l] / correct2) + ADAM_EPS)
                    m_b[l] = ADAM_BETA1 * m_b[l] + (1 - ADAM_BETA1) * gb[l]
                    v_b[l] = ADAM_BETA2 * v_b[l] + (1 - ADAM_BETA2) * gb[l] ** 2
                    biases[l] -= step * (m_b[l] / correct1) / (np.sqrt(v_b[l] / correct2) + ADAM_EPS)

        epoch_loss = float(np.mean(batch_losses))
        epochs_run = epoch + 1
        if prev_loss is not None and abs(prev_loss - epoch_loss) < EARLY_STOP_TOL:
            break
        prev_loss = epoch_loss

        if epoch_loss < best_loss - SCHEDULE_TOL:
            best_loss = epoch_loss
            stall = 0
        else:
            stall += 1
            if hp.learning_rate_schedule == "adaptive" and stall >= SCHEDULE_PATIENCE:
                step /= 5.0
                stall = 0
        best_loss = min(best_loss, epoch_loss)

    payload = {
        "weights": [W.tolist() for W in weights],
        "biases": [b.tolist() for b in biases],
        "activation": hp.activation,
        "training": {
            "batch_size": BATCH_SIZE,
            "base_step": BASE_STEP,
            "max_epochs": max_epochs,
            "epochs_run": epochs_run,
            "solver": hp.solver,
            "schedule": hp.learning_rate_schedule,
        },
    }
    return FittedModel(
        family="mlp",
        hyperparams=hp_dict(hp),
        n_features=X.shape[1],
        seed=seed,
        payload=payload,
    )


def proba(payload: dict, X: np.ndarray) -> np.ndarray:
    weights = [np.asarray(W, dtype=np.float64) for W in payload["weights"]]
    biases = [np.asarray(b, dtype=np.float64) for b in payload["biases"]]
    if X.shape[0] == 0:
        return np.empty(0, dtype=np.float64)
    _, acts = _forward(weights, biases, X, payload["activation"])
    return acts[-1].reshape(-1)
