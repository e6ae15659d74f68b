"""Exhaustive grid search with k-fold cross-validation.

Default grids are the published tuning ranges for the four families.
Candidates are enumerated row-major over the parameter lists; ties on mean
accuracy go to the earliest candidate so searches reproduce exactly. A
learning-rate row is sometimes quoted for random forests; bagging has no
learning-rate semantics, so such a key is ignored with a warning.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
import logging

import numpy as np

from . import models
from .metrics import score
from .preprocess import PreprocessError, kfold_indices
from .rng import child_rng

log = logging.getLogger(__name__)


class TuningError(ValueError):
    pass


DEFAULT_GRIDS: dict[str, dict[str, list]] = {
    "dt": {
        "criterion": ["gini", "entropy"],
        "max_depth": [None, 2, 4, 8, 10],
        "max_features": [None, "sqrt", "log2", 0.2, 0.4, 0.6, 0.8],
        "splitter": ["best", "random"],
    },
    "rf": {
        "max_depth": [2, 4, 8, 10],
        "n_estimators": [100, 200, 500],
    },
    "gb": {
        "n_estimators": [100, 200, 500],
        "max_depth": [6, 9, 12],
        "learning_rate": [0.1, 0.01, 0.05],
    },
    "mlp": {
        "hidden_layers": [(9,), (18,), (9, 9), (18, 9)],
        "activation": ["tanh", "relu", "logistic"],
        "solver": ["sgd", "adam"],
        "alpha": [0.0001, 0.05, 1],
        "learning_rate_schedule": ["constant", "adaptive"],
    },
}


@dataclass(frozen=True)
class GridSpec:
    family: str
    values: dict

    def __post_init__(self):
        if self.family not in models.FAMILIES:
            raise TuningError(f"unknown family: {self.family!r}")
        cleaned = {}
        for key, options in self.values.items():
            if self.family == "rf" and key == "learning_rate":
                log.warning("random forest has no learning-rate semantics; ignoring the grid row")
                continue
            if key not in DEFAULT_GRIDS[self.family]:
                raise TuningError(f"unknown {self.family} hyperparameter: {key!r}")
            if not options:
                raise TuningError(f"empty value list for {key!r}")
            cleaned[key] = list(options)
        merged = {k: cleaned.get(k, v) for k, v in DEFAULT_GRIDS[self.family].items()}
        object.__setattr__(self, "values", merged)

    @property
    def size(self) -> int:
        n = 1
        for options in self.values.values():
            n *= len(options)
        return n


def default_grid(family: str) -> GridSpec:
    return GridSpec(family=family, values={})


def enumerate_candidates(grid: GridSpec) -> list:
    """Hyperparameter objects in deterministic row-major order."""
    hp_type = models.hp_type(grid.family)
    keys = list(grid.values.keys())
    return [hp_type(**dict(zip(keys, combo))) for combo in product(*grid.values.values())]


def subsample_grid(candidates: list, size: int, seed: int) -> list:
    """Seeded subsample for smoke runs; preserves enumeration order."""
    if size >= len(candidates):
        return list(candidates)
    picks = child_rng(seed, "fastgrid").choice(len(candidates), size=size, replace=False)
    return [candidates[i] for i in sorted(picks)]


@dataclass(frozen=True)
class TuneResult:
    family: str
    best_hp: object
    best_index: int
    mean_scores: np.ndarray          # one mean CV accuracy per candidate
    winner_fold_scores: np.ndarray
    single_class_folds: int          # folds whose held-out part had one class
    model: models.FittedModel        # winner refit on all provided data

    @property
    def best_score(self) -> float:
        return float(self.mean_scores[self.best_index])


def grid_search_cv(family: str, grid: GridSpec, X, y, *, k: int = 10, seed: int = 0,
                   fit_options: dict | None = None) -> TuneResult:
    """Evaluate every candidate on identical fold assignments; refit the winner."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    n = X.shape[0]
    if grid.family != family:
        raise TuningError("grid family does not match requested family")
    try:
        folds = kfold_indices(n, k, seed)
    except PreprocessError as exc:
        raise TuningError(str(exc)) from None
    fit_options = fit_options or {}

    candidates = enumerate_candidates(grid)
    single_class_folds = sum(
        1 for f in range(k) if len(np.unique(y[folds == f])) < 2)

    fold_scores = np.empty((len(candidates), k), dtype=np.float64)
    for ci, hp in enumerate(candidates):
        for f in range(k):
            held_out = folds == f
            model = models.fit(family, X[~held_out], y[~held_out], hp, seed, **fit_options)
            fold_scores[ci, f] = score(y[held_out], models.predict(model, X[held_out])).accuracy

    mean_scores = fold_scores.mean(axis=1)
    best_index = int(np.argmax(mean_scores))   # first max wins ties
    best_hp = candidates[best_index]
    return TuneResult(
        family=family,
        best_hp=best_hp,
        best_index=best_index,
        mean_scores=mean_scores,
        winner_fold_scores=fold_scores[best_index],
        single_class_folds=single_class_folds,
        model=models.fit(family, X, y, best_hp, seed, **fit_options),
    )
