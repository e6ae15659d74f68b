"""Nonparametric comparison of algorithms across datasets.

Friedman average ranks and chi-square statistic, plus control-vs-others
post hoc z tests with Benjamini-Hochberg step-up adjustment. Rank 1 is the
best (highest) score in a row; ties share the mean of their rank positions.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np
from scipy.stats import chi2


class StatsError(ValueError):
    pass


@dataclass(frozen=True)
class ScoreMatrix:
    """Rows = datasets, columns = algorithms."""

    values: np.ndarray
    column_names: tuple[str, ...]

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "column_names", tuple(self.column_names))
        if v.ndim != 2 or v.shape[0] < 2 or v.shape[1] < 2:
            raise StatsError("need at least 2 datasets and 2 algorithms")
        if len(self.column_names) != v.shape[1]:
            raise StatsError("one column name per algorithm required")
        if not np.isfinite(v).all():
            raise StatsError("scores must be finite")


@dataclass(frozen=True)
class FriedmanResult:
    column_names: tuple[str, ...]
    average_ranks: np.ndarray
    statistic: float
    p_value: float
    n_datasets: int


@dataclass(frozen=True)
class PosthocResult:
    control: str
    comparisons: tuple[str, ...]      # non-control algorithms, input order
    z_values: np.ndarray
    raw_p: np.ndarray
    adjusted_p: np.ndarray


def _row_ranks(row: np.ndarray) -> np.ndarray:
    """Rank positions with 1 = highest value; ties get the mean rank."""
    order = np.argsort(-row, kind="stable")
    ranks = np.empty(len(row), dtype=np.float64)
    i = 0
    while i < len(row):
        j = i
        while j + 1 < len(row) and row[order[j + 1]] == row[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def friedman_test(scores: ScoreMatrix) -> FriedmanResult:
    """Average ranks and the Friedman chi-square omnibus test."""
    n, k = scores.values.shape
    ranks = np.stack([_row_ranks(row) for row in scores.values])
    avg = ranks.mean(axis=0)
    stat = 12.0 * n / (k * (k + 1)) * float(np.sum(avg ** 2)) - 3.0 * n * (k + 1)
    return FriedmanResult(
        column_names=scores.column_names,
        average_ranks=avg,
        statistic=stat,
        p_value=float(chi2.sf(stat, k - 1)),
        n_datasets=n,
    )


def benjamini_hochberg(raw_p: np.ndarray) -> np.ndarray:
    """Step-up FDR adjustment: sort ascending, p_(i)*m/i, cummin from the top."""
    raw_p = np.asarray(raw_p, dtype=np.float64)
    m = raw_p.size
    order = np.argsort(raw_p, kind="stable")
    scaled = raw_p[order] * m / np.arange(1, m + 1)
    adjusted_sorted = np.minimum(1.0, np.minimum.accumulate(scaled[::-1])[::-1])
    adjusted = np.empty(m, dtype=np.float64)
    adjusted[order] = adjusted_sorted
    return adjusted


def control_posthoc(result: FriedmanResult, control: str) -> PosthocResult:
    """Two-sided z tests of each algorithm against the control's average rank.

    Implemented as the standard one-stage Benjamini-Hochberg step-up; the
    report labels the procedure explicitly.
    """
    if control not in result.column_names:
        raise StatsError(f"unknown control column: {control}")
    k = len(result.column_names)
    n = result.n_datasets
    if n < 2:
        raise StatsError("need at least 2 datasets")
    c = result.column_names.index(control)
    se = math.sqrt(k * (k + 1) / (6.0 * n))
    others = [j for j in range(k) if j != c]
    z = np.asarray([(result.average_ranks[j] - result.average_ranks[c]) / se for j in others])
    raw = np.asarray([math.erfc(abs(v) / math.sqrt(2.0)) for v in z])
    return PosthocResult(
        control=control,
        comparisons=tuple(result.column_names[j] for j in others),
        z_values=z,
        raw_p=raw,
        adjusted_p=benjamini_hochberg(raw),
    )
