"""Feature standardization and data splitting."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .rng import child_rng


class PreprocessError(ValueError):
    pass


@dataclass(frozen=True)
class Scaler:
    """Per-column mean and population standard deviation (divisor n)."""

    mean: np.ndarray
    std: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mean", np.asarray(self.mean, dtype=np.float64))
        object.__setattr__(self, "std", np.asarray(self.std, dtype=np.float64))
        if self.mean.shape != self.std.shape or self.mean.ndim != 1:
            raise PreprocessError("mean and std must be 1-D and equal length")
        if np.any(self.std < 0):
            raise PreprocessError("std entries must be >= 0")


def fit_scaler(X: np.ndarray) -> Scaler:
    """Column means and population stddevs; constant columns get stddev 0."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 1:
        raise PreprocessError("need a 2-D matrix with at least one row")
    return Scaler(mean=X.mean(axis=0), std=X.std(axis=0, ddof=0))


def apply_scaler(scaler: Scaler, X: np.ndarray) -> np.ndarray:
    """Map each value to (x - mean) / std; zero-variance columns map to 0."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != scaler.mean.shape[0]:
        raise PreprocessError(f"expected {scaler.mean.shape[0]} columns, got {X.shape}")
    safe = np.where(scaler.std == 0, 1.0, scaler.std)
    out = (X - scaler.mean) / safe
    out[:, scaler.std == 0] = 0.0
    return out


@dataclass(frozen=True)
class SplitPlan:
    train_indices: np.ndarray
    test_indices: np.ndarray
    fold_assignments: np.ndarray | None = field(default=None)


def chrono_split(n: int, test_fraction: float) -> SplitPlan:
    """Chronological split: earliest ceil((1-f)*n) rows train, rest test."""
    if not 0.0 < test_fraction < 1.0:
        raise PreprocessError(f"test_fraction must be in (0,1), got {test_fraction}")
    if n < 1:
        raise PreprocessError("dataset is empty")
    n_train = int(np.ceil((1.0 - test_fraction) * n))
    if n_train >= n:
        raise PreprocessError(f"test split would be empty for n={n}, f={test_fraction}")
    idx = np.arange(n)
    return SplitPlan(train_indices=idx[:n_train], test_indices=idx[n_train:])


def kfold_indices(n: int, k: int, seed: int) -> np.ndarray:
    """Fold id per index: seeded shuffle then contiguous chunks, sizes differ <= 1."""
    if not 2 <= k <= n:
        raise PreprocessError(f"need 2 <= k <= n, got k={k}, n={n}")
    order = child_rng(seed, "kfold", n, k).permutation(n)
    folds = np.empty(n, dtype=np.int64)
    base, extra = divmod(n, k)
    start = 0
    for fold in range(k):
        size = base + (1 if fold < extra else 0)
        folds[order[start:start + size]] = fold
        start += size
    return folds
