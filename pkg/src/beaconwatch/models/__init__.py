"""Four from-scratch classifier families behind one fit/predict contract."""

from .base import (
    FAMILIES,
    FittedModel,
    ModelError,
    predict,
    predict_proba,
    training_accuracy,
    with_scaler,
)
from .boosting import GradBoostHP, fit_gradient_boosting
from .forest import RandomForestHP, fit_random_forest
from .mlp import MlpHP, fit_mlp
from .tree import DecisionTreeHP, fit_decision_tree

_FITTERS = {
    "dt": fit_decision_tree,
    "rf": fit_random_forest,
    "gb": fit_gradient_boosting,
    "mlp": fit_mlp,
}

_HP_TYPES = {
    "dt": DecisionTreeHP,
    "rf": RandomForestHP,
    "gb": GradBoostHP,
    "mlp": MlpHP,
}


def hp_type(family: str):
    if family not in _HP_TYPES:
        raise ModelError(f"unknown family: {family!r}")
    return _HP_TYPES[family]


def fit(family: str, X, y, hp, seed: int, **fit_options) -> FittedModel:
    if family not in _FITTERS:
        raise ModelError(f"unknown family: {family!r}")
    return _FITTERS[family](X, y, hp, seed, **fit_options)


__all__ = [
    "FAMILIES",
    "FittedModel",
    "ModelError",
    "DecisionTreeHP",
    "RandomForestHP",
    "GradBoostHP",
    "MlpHP",
    "fit",
    "fit_decision_tree",
    "fit_random_forest",
    "fit_gradient_boosting",
    "fit_mlp",
    "hp_type",
    "predict",
    "predict_proba",
    "training_accuracy",
    "with_scaler",
]
