"""Synthetic multi-year station datasets emulating coastal lighthouse logs.

The simulated sensor watches an "effective elevation": true solar elevation
minus a darkening term contributed by heavy-cloud episodes. It switches the
light on when that scalar falls below its on-level and off when it rises
back above its off-level. The two levels differ (photoresistor relays have
hysteresis, which is also why a real sensor never fires exactly at
sunrise/sunset) and both wander cycle to cycle with seeded jitter. Heavy
cloud episodes, placed by a per-day Poisson draw, darken enough to fire the
light in the middle of the day and carry rain and dimmed irradiance so the
features reflect them.

Everything is a pure function of (SimConfig, t): weather noise lives on a
seeded hourly grid, episodes on per-day named streams, sensor jitter on a
per-cycle stream. Equal configs give byte-identical datasets.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from datetime import date, datetime, timedelta, timezone
from functools import lru_cache
import math

import numpy as np
from scipy.signal import lfilter

from .domain import SensorObservation, StationDataset
from .rng import child_rng
from .solar import HORIZON_CROSSING_DEG, _elevation_unix, sun_events

# Sensor model constants (degrees). The hysteresis gap separates on and off
# trigger levels; per-cycle jitter spreads both. Calibrated so baseline
# classifiers sit in the 80-95% band and a 20-minute drift costs >= 5 points.
THRESHOLD_JITTER_SD = 1.0
HYSTERESIS_GAP_MEAN = 2.6
HYSTERESIS_GAP_SD = 0.7
HYSTERESIS_GAP_MIN = 0.6

# Heavy-cloud episode shape: trapezoidal darkening, front-loaded rain.
EPISODE_MIN_MINUTES = 25.0
EPISODE_MAX_MINUTES = 80.0
EPISODE_MARGIN_MINUTES = 45.0
EPISODE_DEPTH_MARGIN = (3.0, 9.0)
EPISODE_RAIN_RANGE = (1.5, 7.0)
ATTENUATION_PER_DEG = 0.22

_CLOUD_FLOOR = 0.05
_HOUR = 3600.0


class GenerationError(ValueError):
    pass


@dataclass(frozen=True)
class SimConfig:
    station_name: str
    latitude: float
    longitude: float
    start_date: date
    end_date: date
    seed: int
    sensor_lux_threshold: float = HORIZON_CROSSING_DEG
    weather_volatility: float = 1.0
    cloud_event_rate: float = 0.8

    def __post_init__(self):
        if self.start_date >= self.end_date:
            raise GenerationError("start_date must precede end_date")
        if self.weather_volatility < 0 or self.cloud_event_rate < 0:
            raise GenerationError("rates must be non-negative")


@dataclass(frozen=True)
class WeatherState:
    temperature: float
    dew_point: float
    pressure: float
    precipitation: float
    ghi: float
    dhi: float
    bni: float


@dataclass(frozen=True)
class EventTrace:
    """Generator-internal view of one event, for invariant checks."""

    timestamp: datetime
    kind: str                  # "on" | "off"
    trigger_level: float       # the jittered level that fired
    effective_elevation: float


@dataclass(frozen=True)
class Episode:
    start_s: float
    end_s: float
    depth_deg: float
    rain_rate: float

    def shape(self, unix_s: float) -> float:
        """Trapezoid in [0,1]: rise over the first 20%, fall after 55%."""
        u = (unix_s - self.start_s) / (self.end_s - self.start_s)
        if u <= 0.0 or u >= 1.0:
            return 0.0
        if u < 0.2:
            return u / 0.2
        if u <= 0.55:
            return 1.0
        return (1.0 - u) / 0.45

    def rain(self, unix_s: float) -> float:
        u = (unix_s - self.start_s) / (self.end_s - self.start_s)
        if u <= 0.0 or u >= 0.8:
            return 0.0
        if u <= 0.55:
            return self.rain_rate
        return self.rain_rate * (0.8 - u) / 0.25


def _unix(d: date) -> float:
    return datetime(d.year, d.month, d.day, tzinfo=timezone.utc).timestamp()


def _ar1(rng, n: int, rho: float, sigma: float) -> np.ndarray:
    eps = rng.standard_normal(n) * sigma * math.sqrt(1.0 - rho * rho)
    return lfilter([1.0], [1.0, -rho], eps)


def _day_of_year(unix_s) -> np.ndarray:
    # Fractional day of year; precise enough for seasonal phase terms.
    return np.mod(np.asarray(unix_s, dtype=np.float64) / 86400.0 - 10.7, 365.2422)


def _hour_of_day(unix_s) -> np.ndarray:
    return np.mod(np.asarray(unix_s, dtype=np.float64), 86400.0) / _HOUR


class _WeatherModel:
    """Seeded hourly noise grids plus cloud episodes for one config."""

    def __init__(self, config: SimConfig):
        self.config = config
        self.t0 = _unix(config.start_date) - 2 * 86400.0
        self.t1 = _unix(config.end_date) + 2 * 86400.0
        n = int((self.t1 - self.t0) / _HOUR) + 1
        self.hours = self.t0 + _HOUR * np.arange(n)
        vol = config.weather_volatility
        self.temp_noise = vol * _ar1(child_rng(config.seed, "weather", "temp"), n, 0.97, 2.4)
        self.pres_noise = vol * _ar1(child_rng(config.seed, "weather", "pressure"), n, 0.995, 7.0)
        self.hum_noise = vol * _ar1(child_rng(config.seed, "weather", "humidity"), n, 0.95, 1.0)
        self.cloud_noise = vol * _ar1(child_rng(config.seed, "weather", "cloud"), n, 0.92, 1.0)
        self.wet_noise = vol * _ar1(child_rng(config.seed, "weather", "wet"), n, 0.9, 1.0)
        self.episodes = _place_episodes(config)
        self._episode_starts = [e.start_s for e in self.episodes]

    def _interp(self, series: np.ndarray, unix_s: float) -> float:
        return float(np.interp(unix_s, self.hours, series))

    def episodes_near(self, unix_s: float) -> list[Episode]:
        i = bisect.bisect_right(self._episode_starts, unix_s)
        lo = max(0, i - 2)
        return [e for e in self.episodes[lo:i + 1] if e.start_s < unix_s < e.end_s]

    def darkening(self, unix_s: float) -> float:
        return sum(e.depth_deg * e.shape(unix_s) for e in self.episodes_near(unix_s))

    def cloud_factor(self, unix_s: float) -> float:
        doy = float(_day_of_year(unix_s))
        latent = 0.3 + 0.9 * self._interp(self.cloud_noise, unix_s) + 0.25 * math.cos(
            2 * math.pi * (doy - 20.0) / 365.2422)
        ambient = 1.0 - 0.72 / (1.0 + math.exp(-latent))
        attenuation = math.exp(-ATTENUATION_PER_DEG * self.darkening(unix_s))
        return min(1.0, max(_CLOUD_FLOOR, ambient * attenuation))


@lru_cache(maxsize=32)
def _weather_model(config: SimConfig) -> _WeatherModel:
    return _WeatherModel(config)


def temperature_baseline(config: SimConfig, when: datetime) -> float:
    """Deterministic seasonal + diurnal temperature component (degC)."""
    unix_s = when.timestamp()
    doy = float(_day_of_year(unix_s))
    hod = float(_hour_of_day(unix_s))
    seasonal = 26.0 - 0.3 * abs(config.latitude) + 5.5 * math.cos(
        2 * math.pi * (doy - 202.0) / 365.2422)
    diurnal = 2.0 * math.cos(2 * math.pi * (hod - 14.5) / 24.0)
    return seasonal + diurnal


def _check_coverage(config: SimConfig, when: datetime) -> float:
    unix_s = when.timestamp()
    lo = _unix(config.start_date) - 86400.0
    hi = _unix(config.end_date) + 86400.0
    if not lo <= unix_s <= hi:
        raise GenerationError(
            f"instant {when.isoformat()} outside the simulated span "
            f"{config.start_date}..{config.end_date}")
    return unix_s


def synth_weather(config: SimConfig, when: datetime) -> WeatherState:
    """Climate variables at one instant; pure in (config.seed, when).

    Coverage extends one day beyond the configured span on each side so that
    drifted timestamps near the edges stay evaluable.
    """
    unix_s = _check_coverage(config, when)
    model = _weather_model(config)

    temperature = temperature_baseline(config, when) + model._interp(model.temp_noise, unix_s)
    dew_offset = max(0.2, 2.0 + 1.5 * model._interp(model.hum_noise, unix_s))
    pressure = 1013.0 + model._interp(model.pres_noise, unix_s)

    wet = model._interp(model.wet_noise, unix_s)
    precipitation = 1.2 * (wet - 0.9) / 0.3 if wet > 0.9 else 0.0
    precipitation += sum(e.rain(unix_s) for e in model.episodes_near(unix_s))

    elev = float(_elevation_unix(config.latitude, config.longitude, unix_s))
    s = math.sin(math.radians(elev))
    if s <= 0.0:
        ghi = dhi = bni = 0.0
    else:
        cf = model.cloud_factor(unix_s)
        ghi = 1080.0 * s ** 1.15 * cf
        diffuse_fraction = min(1.0, 0.18 + 0.85 * (1.0 - cf))
        dhi = ghi * diffuse_fraction
        bni = (ghi - dhi) / max(s, 0.15)

    q = lambda v: round(float(v), 6)
    return WeatherState(
        temperature=q(temperature),
        dew_point=q(temperature - dew_offset),
        pressure=q(pressure),
        precipitation=q(precipitation),
        ghi=q(ghi),
        dhi=q(dhi),
        bni=q(bni),
    )


def synthetic_climate_source(config: SimConfig):
    """Climate lookup callable for drift realignment of generated data."""
    return lambda when: synth_weather(config, when)


def _place_episodes(config: SimConfig) -> list[Episode]:
    """Per-day Poisson placement of heavy-cloud episodes inside daylight."""
    episodes: list[Episode] = []
    if config.cloud_event_rate == 0:
        return episodes
    theta = config.sensor_lux_threshold
    day = config.start_date
    day_index = 0
    while day < config.end_date:
        rng = child_rng(config.seed, "episodes", day_index)
        k = int(rng.poisson(config.cloud_event_rate))
        if k > 0:
            events = sun_events(config.latitude, config.longitude, day)
            if events.sunrise is not None:
                win_lo = events.sunrise.timestamp() + 60.0 * EPISODE_MARGIN_MINUTES
                win_hi = events.sunset.timestamp() - 60.0 * EPISODE_MARGIN_MINUTES
                placed: list[Episode] = []
                for _ in range(k):
                    duration = 60.0 * rng.uniform(EPISODE_MIN_MINUTES, EPISODE_MAX_MINUTES)
                    margin = rng.uniform(*EPISODE_DEPTH_MARGIN)
                    rain = rng.uniform(*EPISODE_RAIN_RANGE)
                    if win_hi - duration <= win_lo:
                        continue
                    start = rng.uniform(win_lo, win_hi - duration)
                    end = start + duration
                    if any(start < e.end_s + 600.0 and end > e.start_s - 600.0 for e in placed):
                        continue
                    probe = np.asarray([start, 0.5 * (start + end), end])
                    max_elev = float(np.max(_elevation_unix(config.latitude, config.longitude, probe)))
                    placed.append(Episode(start_s=start, end_s=end,
                                          depth_deg=max_elev - theta + margin,
                                          rain_rate=rain))
                episodes.extend(sorted(placed, key=lambda e: e.start_s))
        day += timedelta(days=1)
        day_index += 1
    return episodes


def effective_elevation(config: SimConfig, unix_s: float) -> float:
    """The scalar the simulated sensor thresholds on, in degrees."""
    model = _weather_model(config)
    return float(_elevation_unix(config.latitude, config.longitude, unix_s)) - model.darkening(unix_s)


def _elevation_grid(config: SimConfig, times: np.ndarray) -> np.ndarray:
    out = np.empty(times.size, dtype=np.float64)
    for lo in range(0, times.size, 200_000):
        hi = min(lo + 200_000, times.size)
        out[lo:hi] = _elevation_unix(config.latitude, config.longitude, times[lo:hi])
    return out


def _require_daily_crossings(config: SimConfig, elev: np.ndarray) -> None:
    days = elev.size // 1440
    per_day = elev[:days * 1440].reshape(days, 1440)
    lo = per_day.min(axis=1)
    hi = per_day.max(axis=1)
    bad = np.nonzero((lo > HORIZON_CROSSING_DEG) | (hi < HORIZON_CROSSING_DEG))[0]
    if bad.size:
        when = config.start_date + timedelta(days=int(bad[0]))
        raise GenerationError(
            f"no sunrise/sunset crossing on {when} at "
            f"({config.latitude}, {config.longitude}); polar day/night is out of scope")


def _find_crossing_index(values: np.ndarray, start: int, level: float, above: bool) -> int | None:
    """First index > start where values crosses the level in the given sense."""
    n = values.size
    i = start + 1
    while i < n:
        j = min(i + 4096, n)
        chunk = values[i:j] > level if above else values[i:j] < level
        hits = np.nonzero(chunk)[0]
        if hits.size:
            return i + int(hits[0])
        i = j
    return None


def _refine_event_second(config: SimConfig, lo_s: float, hi_s: float,
                         level: float, above: bool) -> tuple[int, float]:
    """Bisect the crossing to <= 1 s, then pick a whole second that satisfies
    the trigger strictly. Returns (unix second, effective elevation there)."""
    f = lambda t: effective_elevation(config, t)
    want = (lambda v: v > level) if above else (lambda v: v < level)
    a, b = lo_s, hi_s
    while b - a > 1.0:
        mid = 0.5 * (a + b)
        if want(f(mid)):
            b = mid
        else:
            a = mid
    t = math.ceil(b)
    for _ in range(600):
        eff = f(float(t))
        if want(eff):
            return t, eff
        t += 1
    raise GenerationError("could not settle an event instant; degenerate sensor levels")


def generate_station_events(config: SimConfig) -> tuple[StationDataset, list[EventTrace]]:
    """Run the sensor state machine over the span; returns dataset + traces."""
    model = _weather_model(config)
    start_s = _unix(config.start_date)
    end_s = _unix(config.end_date)
    n_minutes = int((end_s - start_s) / 60.0)
    times = start_s + 60.0 * np.arange(n_minutes)

    elev = _elevation_grid(config, times)
    _require_daily_crossings(config, elev)
    eff = elev.copy()
    for ep in model.episodes:
        lo = max(0, int(math.floor((ep.start_s - start_s) / 60.0)))
        hi = min(n_minutes, int(math.ceil((ep.end_s - start_s) / 60.0)) + 1)
        idx = np.arange(lo, hi)
        eff[idx] -= ep.depth_deg * np.asarray([ep.shape(t) for t in times[idx]])

    sensor_rng = child_rng(config.seed, "sensor")
    theta = config.sensor_lux_threshold

    def draw_levels() -> tuple[float, float]:
        on_level = theta + sensor_rng.normal(0.0, THRESHOLD_JITTER_SD)
        gap = max(HYSTERESIS_GAP_MIN, sensor_rng.normal(HYSTERESIS_GAP_MEAN, HYSTERESIS_GAP_SD))
        return on_level, on_level + gap

    on_level, off_level = draw_levels()
    state_on = eff[0] < on_level

    traces: list[EventTrace] = []
    observations: list[SensorObservation] = []
    last_second = None
    i = 0
    while True:
        if state_on:
            j = _find_crossing_index(eff, i, off_level, above=True)
        else:
            j = _find_crossing_index(eff, i, on_level, above=False)
        if j is None:
            break
        level = off_level if state_on else on_level
        second, eff_at = _refine_event_second(config, times[j - 1], times[j], level, above=state_on)
        if last_second is not None and second <= last_second:
            second = last_second + 1
            eff_at = effective_elevation(config, float(second))
        kind = "off" if state_on else "on"
        when = datetime.fromtimestamp(second, tz=timezone.utc)
        weather = synth_weather(config, when)
        sun_angle = round(float(_elevation_unix(config.latitude, config.longitude, float(second))), 6)
        observations.append(SensorObservation(
            timestamp=when,
            sun_angle=sun_angle,
            temperature=weather.temperature,
            dew_point=weather.dew_point,
            pressure=weather.pressure,
            precipitation=weather.precipitation,
            ghi=weather.ghi,
            dhi=weather.dhi,
            bni=weather.bni,
            light_state=0 if kind == "off" else 1,
        ))
        traces.append(EventTrace(timestamp=when, kind=kind, trigger_level=level,
                                 effective_elevation=eff_at))
        last_second = second
        state_on = not state_on
        if not state_on:
            # A cycle just closed (light went off): new sensor levels apply.
            on_level, off_level = draw_levels()
        i = j

    dataset = StationDataset(
        station_name=config.station_name,
        latitude=config.latitude,
        longitude=config.longitude,
        observations=tuple(observations),
    )
    return dataset, traces


def generate_station_dataset(config: SimConfig) -> StationDataset:
    dataset, _ = generate_station_events(config)
    return dataset


# Approximate south-west UK coordinates, named after well-known Trinity House
# lights for report familiarity; no ground-truth claim attaches to them.
STATION_PRESETS: dict[str, tuple[float, float]] = {
    "BishopRock": (49.87, -6.44),
    "Eddystone": (50.18, -4.27),
    "Godrevy": (50.24, -5.40),
    "Lizard": (49.96, -5.20),
    "Longships": (50.07, -5.73),
    "Trevose": (50.55, -5.03),
    "Wolfrock": (49.95, -5.79),
}

# Default simulated span: 3.5 years. The source logs' stated span is
# internally inconsistent (a 3.5-year figure against a wider date range);
# we keep the duration and document the choice.
DEFAULT_START = date(2018, 6, 1)
DEFAULT_END = date(2021, 12, 1)


def preset_config(name: str, seed: int, *,
                  start: date = DEFAULT_START, end: date = DEFAULT_END,
                  weather_volatility: float = 1.0,
                  cloud_event_rate: float = 0.8) -> SimConfig:
    if name not in STATION_PRESETS:
        raise GenerationError(f"unknown station preset: {name!r}")
    lat, lon = STATION_PRESETS[name]
    return SimConfig(
        station_name=name, latitude=lat, longitude=lon,
        start_date=start, end_date=end, seed=seed,
        weather_volatility=weather_volatility, cloud_event_rate=cloud_event_rate,
    )
