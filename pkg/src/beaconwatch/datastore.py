"""Persistence: the station CSV schema and the model JSON document.

CSV layout (schema 1):

    # station=<name> lat=<repr> lon=<repr> schema=1
    <further "# ..." comment lines: drift provenance, config hash, ...>
    timestamp,sun_angle,temperature,dew_point,pressure,precipitation,ghi,dhi,bni,light_state
    2018-06-01T03:57:12Z,-1.273311,9.513020,...,0

Timestamps are ISO-8601 UTC at second resolution; reals carry exactly six
decimals and are quantized on write, so write-then-read is the identity at
the stored precision. Model documents are self-describing JSON with exact
float round trips (shortest-repr encoding both ways).
"""

from __future__ import annotations

from datetime import datetime, timezone
import json
import re

import numpy as np

from .domain import SensorObservation, StationDataset, validate_observation
from .models.base import FittedModel
from .preprocess import Scaler

CSV_HEADER = "timestamp,sun_angle,temperature,dew_point,pressure,precipitation,ghi,dhi,bni,light_state"
SCHEMA_VERSION = 1
MODEL_SCHEMA_VERSION = 1

_STATION_LINE = re.compile(r"^# station=(.*) lat=(\S+) lon=(\S+) schema=(\d+)\s*$")
_TS_FORMAT = "%Y-%m-%dT%H:%M:%SZ"


class DatastoreError(ValueError):
    pass


def _format_ts(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).strftime(_TS_FORMAT)


def write_dataset_csv(ds: StationDataset, path, extra_comments: list[str] | None = None) -> None:
    lines = [f"# station={ds.station_name} lat={ds.latitude!r} lon={ds.longitude!r} schema={SCHEMA_VERSION}"]
    for comment in extra_comments or []:
        lines.append(f"# {comment}")
    lines.append(CSV_HEADER)
    for o in ds.observations:
        reals = ",".join(f"{v:.6f}" for v in (
            o.sun_angle, o.temperature, o.dew_point, o.pressure,
            o.precipitation, o.ghi, o.dhi, o.bni))
        lines.append(f"{_format_ts(o.timestamp)},{reals},{o.light_state}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_row(line_no: int, line: str) -> SensorObservation:
    parts = line.split(",")
    if len(parts) != 10:
        raise DatastoreError(f"line {line_no}: expected 10 fields, found {len(parts)}")
    try:
        ts = datetime.strptime(parts[0], _TS_FORMAT).replace(tzinfo=timezone.utc)
    except ValueError as exc:
        raise DatastoreError(f"line {line_no}: bad timestamp {parts[0]!r}: {exc}") from None
    try:
        reals = [float(v) for v in parts[1:9]]
        state = int(parts[9])
    except ValueError as exc:
        raise DatastoreError(f"line {line_no}: bad numeric field: {exc}") from None
    obs = SensorObservation(ts, *reals, light_state=state)
    violations = validate_observation(obs)
    if violations:
        raise DatastoreError(f"line {line_no}: invalid row: {', '.join(violations)}")
    return obs


def read_dataset_csv(path) -> StationDataset:
    with open(path, "r", encoding="utf-8") as fh:
        raw_lines = fh.read().splitlines()
    if not raw_lines:
        raise DatastoreError(f"{path}: empty file")

    meta = _STATION_LINE.match(raw_lines[0])
    if not meta:
        raise DatastoreError(f"{path}: first line must be the station comment, found {raw_lines[0]!r}")
    if int(meta.group(4)) != SCHEMA_VERSION:
        raise DatastoreError(f"{path}: unsupported schema {meta.group(4)} (expected {SCHEMA_VERSION})")

    body = 1
    while body < len(raw_lines) and raw_lines[body].startswith("#"):
        body += 1
    if body >= len(raw_lines):
        raise DatastoreError(f"{path}: missing header row")
    if raw_lines[body] != CSV_HEADER:
        raise DatastoreError(
            f"{path}: header mismatch: expected {CSV_HEADER!r}, found {raw_lines[body]!r}")

    observations = []
    prev: SensorObservation | None = None
    for offset, line in enumerate(raw_lines[body + 1:], start=body + 2):
        if not line.strip():
            continue
        obs = _parse_row(offset, line)
        if prev is not None:
            if obs.timestamp <= prev.timestamp:
                raise DatastoreError(f"line {offset}: timestamps not strictly increasing")
            if obs.light_state == prev.light_state:
                raise DatastoreError(f"line {offset}: light_state does not alternate")
        observations.append(obs)
        prev = obs

    return StationDataset(
        station_name=meta.group(1),
        latitude=float(meta.group(2)),
        longitude=float(meta.group(3)),
        observations=tuple(observations),
    )


def write_json(path, document: dict) -> None:
    """Deterministic JSON: sorted keys, shortest-repr floats, newline at EOF."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(document, fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")


def read_json(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def model_document(model: FittedModel, extra: dict | None = None) -> dict:
    doc = {
        "schema": MODEL_SCHEMA_VERSION,
        "family": model.family,
        "hyperparams": model.hyperparams,
        "n_features": model.n_features,
        "seed": model.seed,
        "scaler": None if model.scaler is None else {
            "mean": model.scaler.mean.tolist(),
            "std": model.scaler.std.tolist(),
        },
        "payload": model.payload,
    }
    doc.update(extra or {})
    return doc


def save_model_json(model: FittedModel, path, extra: dict | None = None) -> None:
    write_json(path, model_document(model, extra))


def load_model_json(path) -> FittedModel:
    doc = read_json(path)
    if doc.get("schema") != MODEL_SCHEMA_VERSION:
        raise DatastoreError(f"{path}: unsupported model schema {doc.get('schema')!r}")
    scaler = doc.get("scaler")
    return FittedModel(
        family=doc["family"],
        hyperparams=doc["hyperparams"],
        n_features=doc["n_features"],
        seed=doc["seed"],
        payload=doc["payload"],
        scaler=None if scaler is None else Scaler(
            mean=np.asarray(scaler["mean"], dtype=np.float64),
            std=np.asarray(scaler["std"], dtype=np.float64),
        ),
    )
