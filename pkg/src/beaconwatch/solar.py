"""Solar elevation and sunrise/sunset computation.

Low-precision geometric solar position (Julian-century polynomial series for
declination and the equation of time, as used by the common NOAA spreadsheet
calculators). Accuracy is a few hundredths of a degree over 2000-2050, far
inside the 0.5 degree budget the classifier features need. Elevation is
geometric; atmospheric refraction enters only through the fixed -0.833 degree
rise/set crossing threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, datetime, timedelta, timezone

import numpy as np

# Elevation at which rise/set is declared: standard refraction (34') plus
# solar semi-diameter (16'). Code constant on purpose: datasets generated by
# different runs must stay comparable.
HORIZON_CROSSING_DEG = -0.833

_UNIX_JD_EPOCH = 2440587.5


class CoordinateError(ValueError):
    """Latitude or longitude outside the valid range."""


def _check_coords(latitude: float, longitude: float) -> None:
    if not -90.0 <= latitude <= 90.0:
        raise CoordinateError(f"latitude out of range: {latitude}")
    if not -180.0 <= longitude <= 180.0:
        raise CoordinateError(f"longitude out of range: {longitude}")


def _declination_eqtime(unix_s):
    """Solar declination (degrees) and equation of time (minutes)."""
    jd = np.asarray(unix_s, dtype=np.float64) / 86400.0 + _UNIX_JD_EPOCH
    t = (jd - 2451545.0) / 36525.0  # Julian centuries from J2000.0

    mean_long = np.mod(280.46646 + t * (36000.76983 + 0.0003032 * t), 360.0)
    mean_anom = np.deg2rad(357.52911 + t * (35999.05029 - 0.0001537 * t))
    ecc = 0.016708634 - t * (0.000042037 + 0.0000001267 * t)

    eq_center = (
        np.sin(mean_anom) * (1.914602 - t * (0.004817 + 0.000014 * t))
        + np.sin(2 * mean_anom) * (0.019993 - 0.000101 * t)
        + np.sin(3 * mean_anom) * 0.000289
    )
    true_long = mean_long + eq_center
    omega = np.deg2rad(125.04 - 1934.136 * t)
    app_long = np.deg2rad(true_long - 0.00569 - 0.00478 * np.sin(omega))

    obliq0 = 23.0 + (26.0 + (21.448 - t * (46.815 + t * (0.00059 - t * 0.001813))) / 60.0) / 60.0
    obliq = np.deg2rad(obliq0 + 0.00256 * np.cos(omega))

    decl = np.arcsin(np.sin(obliq) * np.sin(app_long))

    y = np.tan(obliq / 2.0) ** 2
    ml = np.deg2rad(mean_long)
    eqtime = 4.0 * np.rad2deg(
        y * np.sin(2 * ml)
        - 2.0 * ecc * np.sin(mean_anom)
        + 4.0 * ecc * y * np.sin(mean_anom) * np.cos(2 * ml)
        - 0.5 * y * y * np.sin(4 * ml)
        - 1.25 * ecc * ecc * np.sin(2 * mean_anom)
    )
    return np.rad2deg(decl), eqtime


def _elevation_unix(latitude: float, longitude: float, unix_s):
    """Geometric solar elevation in degrees; accepts scalars or arrays."""
    decl_deg, eqtime = _declination_eqtime(unix_s)
    decl = np.deg2rad(decl_deg)
    minutes_utc = np.mod(np.asarray(unix_s, dtype=np.float64), 86400.0) / 60.0
    true_solar_min = np.mod(minutes_utc + eqtime + 4.0 * longitude, 1440.0)
    hour_angle = np.deg2rad(true_solar_min / 4.0 - 180.0)
    lat = np.deg2rad(latitude)
    cos_zenith = np.sin(lat) * np.sin(decl) + np.cos(lat) * np.cos(decl) * np.cos(hour_angle)
    return np.rad2deg(np.arcsin(np.clip(cos_zenith, -1.0, 1.0)))


def _to_unix(when: datetime) -> float:
    if when.tzinfo is None:
        raise ValueError("datetime must be timezone-aware UTC")
    return when.timestamp()


def solar_elevation(latitude: float, longitude: float, when: datetime) -> float:
    """Sun elevation above the horizon (degrees, [-90, 90]) at a UTC instant."""
    _check_coords(latitude, longitude)
    return float(_elevation_unix(latitude, longitude, _to_unix(when)))


@dataclass(frozen=True)
class SunEvents:
    date: date
    sunrise: datetime | None
    sunset: datetime | None


def _bisect_crossing(latitude: float, longitude: float, lo: float, hi: float) -> float:
    """Refine an elevation crossing of the rise/set threshold to <= 1 s."""
    f_lo = float(_elevation_unix(latitude, longitude, lo)) - HORIZON_CROSSING_DEG
    while hi - lo > 1.0:
        mid = 0.5 * (lo + hi)
        f_mid = float(_elevation_unix(latitude, longitude, mid)) - HORIZON_CROSSING_DEG
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sun_events(latitude: float, longitude: float, day: date) -> SunEvents:
    """Sunrise and sunset (UTC) for the solar day whose noon falls on ``day``.

    The search window is centered on local solar noon, so sunrise < sunset
    holds at any longitude. Events are None during polar day/night.
    """
    _check_coords(latitude, longitude)
    noon_guess = datetime(day.year, day.month, day.day, 12, tzinfo=timezone.utc) - timedelta(minutes=4.0 * longitude)
    noon_s = noon_guess.timestamp()

    # Coarse 5-minute scan on each side of noon, then bisection.
    half = np.arange(0, 12 * 3600 + 1, 300, dtype=np.float64)
    sunrise = sunset = None

    morning = noon_s - half[::-1]
    elev = _elevation_unix(latitude, longitude, morning) - HORIZON_CROSSING_DEG
    sign_change = np.nonzero(np.diff(np.signbit(elev)))[0]
    if sign_change.size:
        i = sign_change[-1]  # crossing nearest to noon is the sunrise
        t = _bisect_crossing(latitude, longitude, morning[i], morning[i + 1])
        sunrise = datetime.fromtimestamp(t, tz=timezone.utc)

    evening = noon_s + half
    elev = _elevation_unix(latitude, longitude, evening) - HORIZON_CROSSING_DEG
    sign_change = np.nonzero(np.diff(np.signbit(elev)))[0]
    if sign_change.size:
        i = sign_change[0]
        t = _bisect_crossing(latitude, longitude, evening[i], evening[i + 1])
        sunset = datetime.fromtimestamp(t, tz=timezone.utc)

    if (sunrise is None) != (sunset is None):
        # One-sided crossing can only happen right at a polar transition day;
        # treat it as the no-event case rather than report a half pair.
        sunrise = sunset = None
    return SunEvents(date=day, sunrise=sunrise, sunset=sunset)
