"""Random forest: bagged CART trees with per-split feature subsampling.

Each tree draws from its own named seed stream, so growing the ensemble
never changes the trees already built. The forest probability is the exact
fraction of trees voting "on".
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..rng import child_rng
from . import _tree
from .base import FittedModel, ModelError, check_training_inputs, hp_dict


@dataclass(frozen=True)
class RandomForestHP:
    max_depth: int = 10
    n_estimators: int = 100

    def __post_init__(self):
        if self.n_estimators < 1:
            raise ModelError("n_estimators must be >= 1")
        if self.max_depth < 1:
            raise ModelError("max_depth must be >= 1")


def fit_random_forest(X, y, hp: RandomForestHP, seed: int, *,
                      _bootstrap: bool = True, _max_features: object = "sqrt") -> FittedModel:
    """Fit the ensemble. The underscore knobs exist for tests only: they
    disable bagging / widen the feature subsample to make a 1-tree forest
    coincide with a plain decision tree."""
    X, y = check_training_inputs(X, y)
    n = X.shape[0]
    trees = []
    for i in range(hp.n_estimators):
        rng = child_rng(seed, "rf", "tree", i)
        idx = rng.integers(0, n, size=n) if _bootstrap else np.arange(n)
        trees.append(_tree.build_classification_tree(
            X[idx], y[idx],
            criterion="gini",
            max_depth=hp.max_depth,
            max_features=_max_features,
            splitter="best",
            rng=rng,
        ))
    return FittedModel(
        family="rf",
        hyperparams=hp_dict(hp),
        n_features=X.shape[1],
        seed=seed,
        payload={"trees": trees},
    )


def proba(payload: dict, X: np.ndarray) -> np.ndarray:
    votes = np.zeros(X.shape[0], dtype=np.float64)
    for tree in payload["trees"]:
        votes += _tree.tree_apply(tree, X) >= 0.5
    return votes / len(payload["trees"])
