"""Instance JSON (de)serialization.

Layout::

    {
      "segments": [{"id": 0, "length_km": 42.0}],
      "surfers": [{"id": 0, "class": 2, "pref_speed_kmh": 110.0, "speed_flex_kmh": 10.0,
                   "depart_min": 12.5, "time_flex_min": 30.0,
                   "seg_distances_km": [5.0], "seg_lengths_km": [42.0]}],
      "breakers": [{"id": 0, "class": 4, "speed_kmh": 100.0, "depart_min": 20.0,
                    "seg_distances_km": [8.0]}],
      "penalties": {"lambda1": 1000.0, "lambda2": 1000.0, "lambda3": 650000.0},
      "delta_window_min": 30.0
    }

Unknown or missing keys are rejected.
"""

from __future__ import annotations

import json
from numbers import Real
from pathlib import Path

from .model import Breaker, Instance, Segment, Surfer

TOP_KEYS = {"segments", "surfers", "breakers", "penalties", "delta_window_min"}
SEGMENT_KEYS = {"id", "length_km"}
SURFER_KEYS = {"id", "class", "pref_speed_kmh", "speed_flex_kmh", "depart_min",
               "time_flex_min", "seg_distances_km", "seg_lengths_km"}
BREAKER_KEYS = {"id", "class", "speed_kmh", "depart_min", "seg_distances_km"}
PENALTY_KEYS = {"lambda1", "lambda2", "lambda3"}


class InstanceFormatError(ValueError):
    pass


def _check_keys(obj, expected: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise InstanceFormatError(f"{where}: expected an object")
    unknown = set(obj) - expected
    missing = expected - set(obj)
    if unknown:
        raise InstanceFormatError(f"{where}: unknown keys {sorted(unknown)}")
    if missing:
        raise InstanceFormatError(f"{where}: missing keys {sorted(missing)}")


def _num(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, Real):
        raise InstanceFormatError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceFormatError(f"{where}: expected an integer, got {value!r}")
    return value


def _nums(values, where: str) -> tuple[float, ...]:
    if not isinstance(values, list):
        raise InstanceFormatError(f"{where}: expected a list")
    return tuple(_num(v, f"{where}[{i}]") for i, v in enumerate(values))


def instance_from_dict(data: dict) -> Instance:
    _check_keys(data, TOP_KEYS, "instance")
    for key in ("segments", "surfers", "breakers"):
        if not isinstance(data[key], list):
            raise InstanceFormatError(f"{key}: expected a list")

    segments = []
    for i, seg in enumerate(data["segments"]):
        where = f"segments[{i}]"
        _check_keys(seg, SEGMENT_KEYS, where)
        segments.append(Segment(_int(seg["id"], f"{where}.id"), _num(seg["length_km"], f"{where}.length_km")))

    surfers = []
    for i, s in enumerate(data["surfers"]):
        where = f"surfers[{i}]"
        _check_keys(s, SURFER_KEYS, where)
        try:
            surfers.append(Surfer(
                id=_int(s["id"], f"{where}.id"),
                vclass=_int(s["class"], f"{where}.class"),
                pref_speed=_num(s["pref_speed_kmh"], f"{where}.pref_speed_kmh"),
                speed_flex=_num(s["speed_flex_kmh"], f"{where}.speed_flex_kmh"),
                depart_time=_num(s["depart_min"], f"{where}.depart_min"),
                time_flex=_num(s["time_flex_min"], f"{where}.time_flex_min"),
                seg_distances=_nums(s["seg_distances_km"], f"{where}.seg_distances_km"),
                seg_lengths=_nums(s["seg_lengths_km"], f"{where}.seg_lengths_km"),
            ))
        except InstanceFormatError:
            raise
        except ValueError as exc:
            raise InstanceFormatError(f"{where}: {exc}") from exc

    breakers = []
    for i, b in enumerate(data["breakers"]):
        where = f"breakers[{i}]"
        _check_keys(b, BREAKER_KEYS, where)
        try:
            breakers.append(Breaker(
                id=_int(b["id"], f"{where}.id"),
                vclass=_int(b["class"], f"{where}.class"),
                speed=_num(b["speed_kmh"], f"{where}.speed_kmh"),
                depart_time=_num(b["depart_min"], f"{where}.depart_min"),
                seg_distances=_nums(b["seg_distances_km"], f"{where}.seg_distances_km"),
            ))
        except InstanceFormatError:
            raise
        except ValueError as exc:
            raise InstanceFormatError(f"{where}: {exc}") from exc

    pen = data["penalties"]
    _check_keys(pen, PENALTY_KEYS, "penalties")
    try:
        return Instance(
            surfers=tuple(surfers),
            breakers=tuple(breakers),
            segments=tuple(segments),
            lambda1=_num(pen["lambda1"], "penalties.lambda1"),
            lambda2=_num(pen["lambda2"], "penalties.lambda2"),
            lambda3=_num(pen["lambda3"], "penalties.lambda3"),
            delta_window=_num(data["delta_window_min"], "delta_window_min"),
        )
    except InstanceFormatError:
        raise
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from exc


def instance_to_dict(inst: Instance) -> dict:
    return {
        "segments": [{"id": seg.id, "length_km": seg.length_km} for seg in inst.segments],
        "surfers": [
            {
                "id": s.id,
                "class": s.vclass,
                "pref_speed_kmh": s.pref_speed,
                "speed_flex_kmh": s.speed_flex,
                "depart_min": s.depart_time,
                "time_flex_min": s.time_flex,
                "seg_distances_km": list(s.seg_distances),
                "seg_lengths_km": list(s.seg_lengths),
            }
            for s in inst.surfers
        ],
        "breakers": [
            {
                "id": b.id,
                "class": b.vclass,
                "speed_kmh": b.speed,
                "depart_min": b.depart_time,
                "seg_distances_km": list(b.seg_distances),
            }
            for b in inst.breakers
        ],
        "penalties": {"lambda1": inst.lambda1, "lambda2": inst.lambda2, "lambda3": inst.lambda3},
        "delta_window_min": inst.delta_window,
    }


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2) + "\n"


def loads_instance(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON: {exc}") from exc
    return instance_from_dict(data)


def load_instance(path: str | Path) -> Instance:
    return loads_instance(Path(path).read_text())


def save_instance(inst: Instance, path: str | Path) -> None:
    Path(path).write_text(dumps_instance(inst))
