"""Fault detection: score a trained model on drifted data and compare.

A degradation curve re-scores one pre-trained model on the held-out split
drifted by each configured number of minutes. Deltas are percentage points
against the undrifted baseline; a fault verdict fires when any watched
metric falls more than the alert threshold below baseline.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domain import StationDataset, feature_matrix, label_vector
from .drift import DriftSpec, apply_drift
from .metrics import MetricReport, score
from .models import FittedModel, predict

WATCHED_METRICS = ("accuracy", "f1_on", "f1_off")

# By the 15-20 minute mark every station in the source experiments had lost
# at least 5 points of accuracy, so 5 points is the default alert level.
DEFAULT_ALERT_THRESHOLD = 0.05


class DetectorError(ValueError):
    pass


@dataclass(frozen=True)
class FaultVerdict:
    metric: str
    delta: float                # current - baseline, in metric units
    is_fault: bool


@dataclass(frozen=True)
class DriftLevelReport:
    minutes: int
    metrics: MetricReport
    deltas_pp: dict             # metric -> signed percentage points vs baseline
    dropped_pairs: int
    dropped_rows: int
    verdicts: tuple[FaultVerdict, ...]

    @property
    def any_fault(self) -> bool:
        return any(v.is_fault for v in self.verdicts)


@dataclass(frozen=True)
class DegradationReport:
    station_name: str
    model_id: str
    alert_threshold: float
    sign_convention: str
    baseline: MetricReport
    levels: tuple[DriftLevelReport, ...]

    @property
    def station_fault(self) -> bool:
        return any(level.any_fault for level in self.levels)

    def curve(self, metric: str) -> list[tuple[int, float]]:
        return [(lv.minutes, lv.metrics.value(metric)) for lv in self.levels]


def detect_fault(baseline: MetricReport, current: MetricReport,
                 threshold: float, metric: str) -> FaultVerdict:
    """Fault iff the metric fell strictly more than `threshold` below baseline."""
    if threshold <= 0:
        raise DetectorError("threshold must be positive")
    delta = current.value(metric) - baseline.value(metric)
    return FaultVerdict(metric=metric, delta=delta, is_fault=baseline.value(metric) - current.value(metric) > threshold)


def degradation_curve(model: FittedModel, baseline_split: StationDataset,
                      drift_levels, climate_source, *,
                      alert_threshold: float = DEFAULT_ALERT_THRESHOLD,
                      sign_convention: str = "paper-operation",
                      model_id: str = "",
                      include_time_of_day: bool = False) -> DegradationReport:
    levels = sorted(set(int(m) for m in drift_levels))
    if not levels or levels[0] != 0:
        raise DetectorError("drift levels must include 0 and be non-negative")

    reports: list[DriftLevelReport] = []
    baseline_metrics: MetricReport | None = None
    y = label_vector(baseline_split)
    for minutes in levels:
        result = apply_drift(baseline_split, DriftSpec(minutes, sign_convention), climate_source)
        X = feature_matrix(result.dataset, include_time_of_day)
        y_level = y if minutes == 0 else label_vector(result.dataset)
        level_metrics = score(y_level, predict(model, X))
        if baseline_metrics is None:
            baseline_metrics = level_metrics
        deltas = {m: 100.0 * (level_metrics.value(m) - baseline_metrics.value(m))
                  for m in WATCHED_METRICS}
        verdicts = tuple(detect_fault(baseline_metrics, level_metrics, alert_threshold, m)
                         for m in WATCHED_METRICS)
        reports.append(DriftLevelReport(
            minutes=minutes,
            metrics=level_metrics,
            deltas_pp=deltas,
            dropped_pairs=result.dropped_pairs,
            dropped_rows=result.dropped_rows,
            verdicts=verdicts,
        ))

    return DegradationReport(
        station_name=baseline_split.station_name,
        model_id=model_id,
        alert_threshold=alert_threshold,
        sign_convention=sign_convention,
        baseline=baseline_metrics,
        levels=tuple(reports),
    )
