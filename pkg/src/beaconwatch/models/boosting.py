"""Gradient-boosted trees on logistic loss with Newton-step leaves.

Additive model F(x) = F0 + lr * sum(trees). F0 is the training log-odds;
each stage fits a least-squares tree to the residuals y - sigmoid(F) and
replaces leaf means with one Newton step, residual sum over hessian sum.
No row/column subsampling: the tuned surface is estimators, depth and
learning rate only.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from . import _tree
from .base import FittedModel, ModelError, check_training_inputs, hp_dict

_PROB_CLAMP = 1e-6
_HESSIAN_GUARD = 1e-12


@dataclass(frozen=True)
class GradBoostHP:
    n_estimators: int = 100
    max_depth: int = 6
    learning_rate: float = 0.1

    def __post_init__(self):
        if self.n_estimators < 1:
            raise ModelError("n_estimators must be >= 1")
        if self.max_depth < 1:
            raise ModelError("max_depth must be >= 1")
        if self.learning_rate < 0:
            raise ModelError("learning_rate must be >= 0")


def _sigmoid(z):
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500.0, 500.0)))


def fit_gradient_boosting(X, y, hp: GradBoostHP, seed: int) -> FittedModel:
    X, y = check_training_inputs(X, y)
    p_hat = min(max(float(np.mean(y)), _PROB_CLAMP), 1.0 - _PROB_CLAMP)
    f0 = math.log(p_hat / (1.0 - p_hat))

    raw = np.full(X.shape[0], f0, dtype=np.float64)
    trees = []
    for _ in range(hp.n_estimators):
        p = _sigmoid(raw)
        residual = y - p
        hessian = p * (1.0 - p)

        def newton_leaf(idx):
            return float(residual[idx].sum() / (hessian[idx].sum() + _HESSIAN_GUARD))

        tree = _tree.build_regression_tree(X, residual, newton_leaf, max_depth=hp.max_depth)
        trees.append(tree)
        raw += hp.learning_rate * _tree.tree_apply(tree, X)

    return FittedModel(
        family="gb",
        hyperparams=hp_dict(hp),
        n_features=X.shape[1],
        seed=seed,
        payload={"f0": f0, "learning_rate": hp.learning_rate, "trees": trees},
    )


def raw_score(payload: dict, X: np.ndarray, n_stages: int | None = None) -> np.ndarray:
    trees = payload["trees"]
    if n_stages is not None:
        trees = trees[:n_stages]
    raw = np.full(X.shape[0], payload["f0"], dtype=np.float64)
    for tree in trees:
        raw += payload["learning_rate"] * _tree.tree_apply(tree, X)
    return raw


def staged_probas(payload: dict, X: np.ndarray):
    """Yield predict_proba after each boosting stage (stage 0 = F0 alone)."""
    raw = np.full(X.shape[0], payload["f0"], dtype=np.float64)
    yield _sigmoid(raw)
    for tree in payload["trees"]:
        raw = raw + payload["learning_rate"] * _tree.tree_apply(tree, X)
        yield _sigmoid(raw)


def proba(payload: dict, X: np.ndarray) -> np.ndarray:
    return _sigmoid(raw_score(payload, X))
