"""Classification metrics: confusion matrix, accuracy, per-class P/R/F1.

Class "on" (label 1) is the positive class. Any 0/0 ratio is defined as 0 so
that degradation curves stay total even when a drifted model collapses onto
a single class.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class MetricsError(ValueError):
    pass


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class MetricReport:
    accuracy: float
    precision_on: float
    recall_on: float
    f1_on: float
    precision_off: float
    recall_off: float
    f1_off: float
    support_on: int
    support_off: int

    def value(self, metric: str) -> float:
        if metric not in ("accuracy", "f1_on", "f1_off"):
            raise MetricsError(f"unknown metric: {metric}")
        return getattr(self, metric)


def confusion_matrix(y_true, y_pred) -> ConfusionMatrix:
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    if y_true.shape != y_pred.shape or y_true.ndim != 1 or y_true.size == 0:
        raise MetricsError("label vectors must be 1-D, non-empty and equal length")
    for v in (y_true, y_pred):
        if not np.isin(v, (0, 1)).all():
            raise MetricsError("labels must be binary 0/1")
    tp = int(np.sum((y_true == 1) & (y_pred == 1)))
    fp = int(np.sum((y_true == 0) & (y_pred == 1)))
    tn = int(np.sum((y_true == 0) & (y_pred == 0)))
    fn = int(np.sum((y_true == 1) & (y_pred == 0)))
    return ConfusionMatrix(tp=tp, fp=fp, tn=tn, fn=fn)


def _ratio(num: int, den: int) -> float:
    return num / den if den else 0.0


def _f1(precision: float, recall: float) -> float:
    return 2 * precision * recall / (precision + recall) if precision + recall else 0.0


def classification_metrics(cm: ConfusionMatrix) -> MetricReport:
    if cm.total <= 0:
        raise MetricsError("confusion matrix is empty")
    precision_on = _ratio(cm.tp, cm.tp + cm.fp)
    recall_on = _ratio(cm.tp, cm.tp + cm.fn)
    # Symmetric definitions for the negative class: tn plays the tp role.
    precision_off = _ratio(cm.tn, cm.tn + cm.fn)
    recall_off = _ratio(cm.tn, cm.tn + cm.fp)
    return MetricReport(
        accuracy=(cm.tp + cm.tn) / cm.total,
        precision_on=precision_on,
        recall_on=recall_on,
        f1_on=_f1(precision_on, recall_on),
        precision_off=precision_off,
        recall_off=recall_off,
        f1_off=_f1(precision_off, recall_off),
        support_on=cm.tp + cm.fn,
        support_off=cm.tn + cm.fp,
    )


def score(y_true, y_pred) -> MetricReport:
    """Convenience: confusion matrix and metrics in one call."""
    return classification_metrics(confusion_matrix(y_true, y_pred))
