"""Uniform classifier contract shared by the four families.

fit_*(X, y, hp, seed) -> FittedModel; predict/predict_proba dispatch on the
family tag. A model may carry the scaler it was trained behind; predict then
standardizes raw inputs itself, so callers never juggle scalers.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from ..preprocess import Scaler, apply_scaler


class ModelError(ValueError):
    pass


FAMILIES = ("dt", "rf", "gb", "mlp")


@dataclass(frozen=True)
class FittedModel:
    family: str
    hyperparams: dict
    n_features: int
    seed: int
    payload: dict
    scaler: Scaler | None = field(default=None, repr=False)


def with_scaler(model: FittedModel, scaler: Scaler) -> FittedModel:
    if scaler.mean.shape[0] != model.n_features:
        raise ModelError("scaler width does not match model features")
    return replace(model, scaler=scaler)


def check_training_inputs(X, y) -> tuple[np.ndarray, np.ndarray]:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    if X.ndim != 2 or X.shape[0] < 1:
        raise ModelError("X must be a non-empty 2-D matrix")
    if y.shape != (X.shape[0],):
        raise ModelError("y must be 1-D with one label per row")
    if not np.isin(y, (0, 1)).all():
        raise ModelError("labels must be binary 0/1")
    return X, y.astype(np.int64)


def _prepare_inputs(model: FittedModel, X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise ModelError(f"expected (n, {model.n_features}) inputs, got {X.shape}")
    if model.scaler is not None:
        X = apply_scaler(model.scaler, X)
    return X


def predict_proba(model: FittedModel, X) -> np.ndarray:
    """Probability of class 1 ("on") per row, in [0, 1]."""
    from . import boosting, forest, mlp, tree

    X = _prepare_inputs(model, X)
    proba_fn = {
        "dt": tree.proba,
        "rf": forest.proba,
        "gb": boosting.proba,
        "mlp": mlp.proba,
    }.get(model.family)
    if proba_fn is None:
        raise ModelError(f"unknown model family: {model.family}")
    return proba_fn(model.payload, X)


def predict(model: FittedModel, X) -> np.ndarray:
    """Hard labels: 1 iff predict_proba >= 0.5."""
    return (predict_proba(model, X) >= 0.5).astype(np.int64)


def training_accuracy(model: FittedModel, X, y) -> float:
    y = np.asarray(y)
    return float(np.mean(predict(model, X) == y))


def hp_dict(hp: Any) -> dict:
    """Plain-dict view of a hyperparameter dataclass for payload/JSON use."""
    from dataclasses import asdict

    out = asdict(hp)
    for key, value in out.items():
        if isinstance(value, tuple):
            out[key] = list(value)
    return out
