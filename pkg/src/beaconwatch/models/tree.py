"""Single CART decision tree classifier."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..rng import child_rng
from . import _tree
from .base import FittedModel, ModelError, check_training_inputs, hp_dict


@dataclass(frozen=True)
class DecisionTreeHP:
    criterion: str = "gini"            # gini | entropy
    max_depth: int | None = None       # None = unbounded
    max_features: object = None        # None | sqrt | log2 | fraction in (0,1]
    splitter: str = "best"             # best | random

    def __post_init__(self):
        if self.criterion not in ("gini", "entropy"):
            raise ModelError(f"criterion must be gini or entropy, got {self.criterion!r}")
        if self.splitter not in ("best", "random"):
            raise ModelError(f"splitter must be best or random, got {self.splitter!r}")
        if self.max_depth is not None and self.max_depth < 1:
            raise ModelError("max_depth must be None or >= 1")


def fit_decision_tree(X, y, hp: DecisionTreeHP, seed: int) -> FittedModel:
    X, y = check_training_inputs(X, y)
    root = _tree.build_classification_tree(
        X, y,
        criterion=hp.criterion,
        max_depth=hp.max_depth,
        max_features=hp.max_features,
        splitter=hp.splitter,
        rng=child_rng(seed, "dt"),
    )
    return FittedModel(
        family="dt",
        hyperparams=hp_dict(hp),
        n_features=X.shape[1],
        seed=seed,
        payload={"tree": root},
    )


def proba(payload: dict, X: np.ndarray) -> np.ndarray:
    return _tree.tree_apply(payload["tree"], X)
