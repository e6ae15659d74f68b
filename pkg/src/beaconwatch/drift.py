"""Simulate a gradually failing photoresistor by shifting event timestamps.

The default `paper-operation` convention moves on-events later and
off-events earlier by the same number of minutes, mimicking a sensor whose
threshold has drooped: the light comes up later in the evening and is cut
earlier in the morning. The alternative `delayed-response` convention delays
both transitions, the reading under which a sluggish sensor reacts late at
both ends of the night. Feature values are re-evaluated at the shifted
instants (sun angle exactly, climate via the supplied lookup); labels never
change.

Shifts can invert an on/off pair that was shorter than twice the drift;
such colliding pairs are dropped outright and counted, so the output always
satisfies the dataset ordering and alternation invariants and no data loss
is silent.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime, timedelta

import numpy as np

from .datagen import WeatherState
from .domain import SensorObservation, StationDataset
from .solar import solar_elevation

CONVENTIONS = ("paper-operation", "delayed-response")


class DriftError(ValueError):
    pass


class ClimateCoverageError(ValueError):
    """Raised by a climate source asked outside its covered interval."""


@dataclass(frozen=True)
class DriftSpec:
    minutes: int
    sign_convention: str = "paper-operation"

    def __post_init__(self):
        if self.minutes < 0:
            raise DriftError("drift minutes must be non-negative")
        if self.sign_convention not in CONVENTIONS:
            raise DriftError(f"unknown sign convention: {self.sign_convention!r}")


@dataclass(frozen=True)
class DriftResult:
    dataset: StationDataset
    dropped_pairs: int          # colliding on/off pairs removed
    dropped_rows: int           # rows lost to climate-coverage errors


def interpolating_climate_source(ds: StationDataset):
    """Climate lookup for ingested data: per-variable linear interpolation
    in time between the dataset's own rows. Valid strictly inside the span
    of the dataset's timestamps."""
    if len(ds) < 2:
        raise DriftError("need at least 2 observations to interpolate climate")
    times = np.asarray([o.timestamp.timestamp() for o in ds.observations])
    columns = {
        name: np.asarray([getattr(o, name) for o in ds.observations])
        for name in ("temperature", "dew_point", "pressure", "precipitation", "ghi", "dhi", "bni")
    }

    def lookup(when: datetime) -> WeatherState:
        t = when.timestamp()
        if not times[0] <= t <= times[-1]:
            raise ClimateCoverageError(f"{when.isoformat()} outside interpolation span")
        return WeatherState(**{name: float(np.interp(t, times, col))
                               for name, col in columns.items()})

    return lookup


def _shift(obs: SensorObservation, spec: DriftSpec) -> datetime:
    delta = timedelta(minutes=spec.minutes)
    if spec.sign_convention == "delayed-response":
        return obs.timestamp + delta
    return obs.timestamp + delta if obs.light_state == 1 else obs.timestamp - delta


def apply_drift(ds: StationDataset, spec: DriftSpec, climate_source) -> DriftResult:
    """Shift every event and realign its features at the new instant."""
    if spec.minutes == 0:
        return DriftResult(dataset=ds, dropped_pairs=0, dropped_rows=0)

    shifted: list[SensorObservation | None] = []
    coverage_failures = []
    for i, obs in enumerate(ds.observations):
        when = _shift(obs, spec)
        try:
            weather = climate_source(when)
        except ClimateCoverageError:
            coverage_failures.append(i)
            shifted.append(None)
            continue
        sun_angle = round(solar_elevation(ds.latitude, ds.longitude, when), 6)
        shifted.append(SensorObservation(
            timestamp=when,
            sun_angle=sun_angle,
            temperature=weather.temperature,
            dew_point=weather.dew_point,
            pressure=weather.pressure,
            precipitation=weather.precipitation,
            ghi=weather.ghi,
            dhi=weather.dhi,
            bni=weather.bni,
            light_state=obs.light_state,
        ))

    # A failed row takes its cycle mate along so alternation survives: an
    # on-row pairs with the following off-row, an off-row with the preceding
    # on-row. Boundary rows without a mate may drop alone.
    drop = set(coverage_failures)
    for i in coverage_failures:
        if ds.observations[i].light_state == 1:
            if i + 1 < len(shifted):
                drop.add(i + 1)
        elif i - 1 >= 0:
            drop.add(i - 1)
    dropped_rows = len(drop)

    kept = [shifted[i] for i in range(len(shifted)) if i not in drop]

    # Under paper-operation only the on->off gaps shrink; a pair whose gap
    # was shorter than twice the drift inverts and is removed whole.
    dropped_pairs = 0
    result: list[SensorObservation] = []
    i = 0
    while i < len(kept):
        cur = kept[i]
        if i + 1 < len(kept) and kept[i + 1].timestamp <= cur.timestamp:
            dropped_pairs += 1
            i += 2
            continue
        result.append(cur)
        i += 1

    drifted = StationDataset(
        station_name=ds.station_name,
        latitude=ds.latitude,
        longitude=ds.longitude,
        observations=tuple(result),
    )
    return DriftResult(dataset=drifted, dropped_pairs=dropped_pairs, dropped_rows=dropped_rows)


def drift_comment(spec: DriftSpec) -> str:
    """Comment line recorded in drifted CSVs."""
    return f"drift_minutes={spec.minutes} convention={spec.sign_convention}"
