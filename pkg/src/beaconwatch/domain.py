"""Core data types shared by all modules.

A dataset row is a state-change event of the light sensor: the timestamp of
the transition and the conditions at that instant. The label is the state
entered at the timestamp (1 = light turned on, 0 = turned off).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
import math

import numpy as np

FEATURE_NAMES = (
    "sun_angle",
    "temperature",
    "dew_point",
    "pressure",
    "precipitation",
    "ghi",
    "dhi",
    "bni",
)

TIME_OF_DAY_FEATURE = "time_of_day_hours"


class DomainError(ValueError):
    """Invalid domain object construction or use."""


@dataclass(frozen=True)
class SensorObservation:
    timestamp: datetime          # UTC, second resolution
    sun_angle: float             # degrees above horizon, [-90, 90]
    temperature: float           # degC
    dew_point: float             # degC
    pressure: float              # hPa
    precipitation: float         # mm, >= 0
    ghi: float                   # W/m^2, >= 0
    dhi: float                   # W/m^2, >= 0
    bni: float                   # W/m^2, >= 0
    light_state: int             # 1 = on, 0 = off


def validate_observation(obs: SensorObservation) -> list[str]:
    """Return the list of violated invariants (empty means the row is valid).

    Violations are data, not failures: callers decide whether to reject.
    """
    violations = []
    ts = obs.timestamp
    if not isinstance(ts, datetime) or ts.tzinfo is None or ts.utcoffset().total_seconds() != 0:
        violations.append("timestamp is UTC")
    elif ts.microsecond != 0:
        violations.append("timestamp has second resolution")
    numeric = [obs.sun_angle, obs.temperature, obs.dew_point, obs.pressure,
               obs.precipitation, obs.ghi, obs.dhi, obs.bni]
    if not all(isinstance(v, (int, float)) and math.isfinite(v) for v in numeric):
        violations.append("all features finite")
        return violations
    if not -90.0 <= obs.sun_angle <= 90.0:
        violations.append("sun_angle in [-90, 90]")
    if obs.dew_point > obs.temperature:
        violations.append("dew_point <= temperature")
    for name in ("precipitation", "ghi", "dhi", "bni"):
        if getattr(obs, name) < 0:
            violations.append(f"{name} >= 0")
    if obs.light_state not in (0, 1):
        violations.append("light_state in {0,1}")
    return violations


@dataclass(frozen=True)
class StationDataset:
    """Ordered on/off events for one lighthouse.

    Observations must be strictly increasing in timestamp and alternate in
    light_state (each row records a transition).
    """

    station_name: str
    latitude: float
    longitude: float
    observations: tuple[SensorObservation, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not -90.0 <= self.latitude <= 90.0:
            raise DomainError(f"latitude out of range: {self.latitude}")
        if not -180.0 <= self.longitude <= 180.0:
            raise DomainError(f"longitude out of range: {self.longitude}")
        object.__setattr__(self, "observations", tuple(self.observations))
        for i, obs in enumerate(self.observations):
            bad = validate_observation(obs)
            if bad:
                raise DomainError(f"observation {i} invalid: {', '.join(bad)}")
            if i > 0:
                prev = self.observations[i - 1]
                if obs.timestamp <= prev.timestamp:
                    raise DomainError(f"observation {i}: timestamps not strictly increasing")
                if obs.light_state == prev.light_state:
                    raise DomainError(f"observation {i}: light_state does not alternate")

    def __len__(self) -> int:
        return len(self.observations)


def feature_vector(obs: SensorObservation, include_time_of_day: bool = False) -> np.ndarray:
    """Extract the fixed-order feature vector of one observation.

    The timestamp itself is not a feature; the optional time-of-day value
    (UTC hours, [0, 24)) exists for experiments that want a 9th input.
    """
    values = [obs.sun_angle, obs.temperature, obs.dew_point, obs.pressure,
              obs.precipitation, obs.ghi, obs.dhi, obs.bni]
    if include_time_of_day:
        t = obs.timestamp
        values.append(t.hour + t.minute / 60.0 + t.second / 3600.0)
    return np.asarray(values, dtype=np.float64)


def feature_matrix(ds: StationDataset, include_time_of_day: bool = False) -> np.ndarray:
    """Feature rows for every observation, shape (n, 8) or (n, 9)."""
    width = len(FEATURE_NAMES) + (1 if include_time_of_day else 0)
    if not ds.observations:
        return np.empty((0, width), dtype=np.float64)
    return np.stack([feature_vector(o, include_time_of_day) for o in ds.observations])


def label_vector(ds: StationDataset) -> np.ndarray:
    return np.asarray([o.light_state for o in ds.observations], dtype=np.int64)


def utc(year: int, month: int, day: int, hour: int = 0, minute: int = 0, second: int = 0) -> datetime:
    """Shorthand for a UTC datetime at second resolution."""
    return datetime(year, month, day, hour, minute, second, tzinfo=timezone.utc)
