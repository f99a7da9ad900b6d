"""Domain types and cost formulas for windbreaker/windsurfer matching.

Units used throughout:

* speeds in km/h, distances and lengths in km;
* departure times and flexibility windows in minutes;
* arrival times (``distance / speed``) in hours.

The only place hours meet minutes is :func:`timing_feasible`, which converts
the arrival-time gap to minutes before comparing it with the window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

MIN_CLASS = 1
MAX_CLASS = 5

DEFAULT_LAMBDA1 = 1000.0
DEFAULT_LAMBDA2 = 1000.0
DEFAULT_LAMBDA3 = 650000.0

MINUTES_PER_HOUR = 60.0


def check_class(value: int) -> int:
    """Validate a vehicle class (1 = small passenger car, 5 = full-sized truck)."""
    if isinstance(value, bool) or int(value) != value:
        raise ValueError(f"vehicle class must be an integer, got {value!r}")
    value = int(value)
    if not MIN_CLASS <= value <= MAX_CLASS:
        raise ValueError(f"vehicle class must be in [{MIN_CLASS}, {MAX_CLASS}], got {value}")
    return value


@dataclass(frozen=True)
class Segment:
    id: int
    length_km: float


@dataclass(frozen=True)
class Surfer:
    id: int
    vclass: int
    pref_speed: float
    speed_flex: float
    depart_time: float
    time_flex: float
    seg_distances: tuple[float, ...] = (0.0,)
    seg_lengths: tuple[float, ...] = (1.0,)

    def __post_init__(self):
        object.__setattr__(self, "vclass", check_class(self.vclass))
        object.__setattr__(self, "seg_distances", tuple(float(d) for d in self.seg_distances))
        object.__setattr__(self, "seg_lengths", tuple(float(d) for d in self.seg_lengths))
        if not self.pref_speed > 0:
            raise ValueError(f"surfer {self.id}: pref_speed must be > 0")
        if self.speed_flex < 0 or self.time_flex < 0:
            raise ValueError(f"surfer {self.id}: flexibility windows must be >= 0")
        if len(self.seg_distances) != len(self.seg_lengths):
            raise ValueError(f"surfer {self.id}: seg_distances and seg_lengths differ in length")


@dataclass(frozen=True)
class Breaker:
    id: int
    vclass: int
    speed: float
    depart_time: float
    seg_distances: tuple[float, ...] = (0.0,)

    def __post_init__(self):
        object.__setattr__(self, "vclass", check_class(self.vclass))
        object.__setattr__(self, "seg_distances", tuple(float(d) for d in self.seg_distances))
        if not self.speed > 0:
            raise ValueError(f"breaker {self.id}: speed must be > 0")


@dataclass(frozen=True)
class Instance:
    """A complete matching problem.

    With a single segment the instance must be square (as many surfers as
    breakers); that is the setting the QUBO encoding handles. With several
    segments surfers and breakers may differ in number.
    """

    surfers: tuple[Surfer, ...]
    breakers: tuple[Breaker, ...]
    segments: tuple[Segment, ...] = (Segment(0, 1.0),)
    lambda1: float = DEFAULT_LAMBDA1
    lambda2: float = DEFAULT_LAMBDA2
    lambda3: float = DEFAULT_LAMBDA3
    delta_window: float = 30.0

    def __post_init__(self):
        object.__setattr__(self, "surfers", tuple(self.surfers))
        object.__setattr__(self, "breakers", tuple(self.breakers))
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.segments:
            raise ValueError("instance needs at least one segment")
        if min(self.lambda1, self.lambda2, self.lambda3) < 0:
            raise ValueError("penalty weights must be >= 0")
        if self.delta_window < 0:
            raise ValueError("delta_window must be >= 0")
        K = len(self.segments)
        for s in self.surfers:
            if len(s.seg_distances) != K:
                raise ValueError(f"surfer {s.id}: expected {K} segment entries")
        for b in self.breakers:
            if len(b.seg_distances) != K:
                raise ValueError(f"breaker {b.id}: expected {K} segment entries")
        if K == 1 and len(self.surfers) != len(self.breakers):
            raise ValueError("single-segment instances need as many surfers as breakers")

    @property
    def K(self) -> int:
        return len(self.segments)

    @property
    def n(self) -> int:
        """Number of pairs; only meaningful for square instances."""
        return len(self.surfers)


@dataclass(frozen=True)
class MultiAssignment:
    """Boolean tensor ``x[s, b, k]``: surfer s follows breaker b on segment k."""

    x: np.ndarray = field(repr=False)

    def __post_init__(self):
        x = np.array(self.x, dtype=bool)
        if x.ndim != 3:
            raise ValueError("assignment tensor must be indexed by (surfer, breaker, segment)")
        x.setflags(write=False)
        object.__setattr__(self, "x", x)

    @classmethod
    def from_maps(cls, maps: Sequence[dict[int, int]], n_surfers: int, n_breakers: int):
        """Build from one ``{surfer: breaker}`` dict per segment."""
        x = np.zeros((n_surfers, n_breakers, len(maps)), dtype=bool)
        for k, m in enumerate(maps):
            for s, b in m.items():
                x[s, b, k] = True
        return cls(x)

    def maps(self) -> list[dict[int, int]]:
        """Per-segment ``{surfer: breaker}`` dicts (first breaker wins on conflicts)."""
        out = []
        for k in range(self.x.shape[2]):
            m = {}
            for s, b in zip(*np.nonzero(self.x[:, :, k])):
                m.setdefault(int(s), int(b))
            out.append(m)
        return out


def efficiency(d: int) -> float:
    """Windbreaking efficiency for class difference ``d = C_b - c_s``."""
    if isinstance(d, bool) or int(d) != d or not -4 <= d <= 4:
        raise ValueError(f"class difference must be an integer in [-4, 4], got {d!r}")
    return (int(d) + 4) / 24


def _window_penalty(pref: float, actual: float, flex: float) -> float:
    gap = abs(pref - actual)
    return gap if gap > flex / 2 else 0.0


def time_penalty(s: Surfer, b: Breaker) -> float:
    """Departure-time mismatch in minutes, zero inside the surfer's window."""
    return _window_penalty(s.depart_time, b.depart_time, s.time_flex)


def velocity_penalty(s: Surfer, b: Breaker) -> float:
    """Speed mismatch in km/h, zero inside the surfer's window."""
    return _window_penalty(s.pref_speed, b.speed, s.speed_flex)


def aero_cost(s: Surfer, b: Breaker) -> float:
    return s.vclass * b.speed**2 * (1 - efficiency(b.vclass - s.vclass))


def pair_weight(s: Surfer, b: Breaker, lambda1: float = DEFAULT_LAMBDA1,
                lambda2: float = DEFAULT_LAMBDA2) -> float:
    """Single-segment edge weight: aerodynamic cost plus soft window penalties."""
    return aero_cost(s, b) + lambda1 * time_penalty(s, b) + lambda2 * velocity_penalty(s, b)


def segment_weight(s: Surfer, b: Breaker, k: int) -> float:
    return aero_cost(s, b) * s.seg_lengths[k]


def weight_matrix(inst: Instance) -> np.ndarray:
    """n x n matrix of :func:`pair_weight` (rows surfers, columns breakers)."""
    return np.array([[pair_weight(s, b, inst.lambda1, inst.lambda2) for b in inst.breakers]
                     for s in inst.surfers], dtype=float)


def arrival_time(distance: float, speed: float) -> float:
    """Hours needed to cover ``distance`` km at ``speed`` km/h."""
    if not speed > 0:
        raise ValueError(f"speed must be > 0, got {speed}")
    return distance / speed


def surfer_arrival(s: Surfer, k: int) -> float:
    return arrival_time(s.seg_distances[k], s.pref_speed)


def breaker_arrival(b: Breaker, k: int) -> float:
    return arrival_time(b.seg_distances[k], b.speed)


def timing_feasible(s: Surfer, b: Breaker, k: int, delta_window: float) -> bool:
    """No-teleportation check: arrival gap on segment k within ``delta_window`` minutes."""
    gap_min = abs(surfer_arrival(s, k) - breaker_arrival(b, k)) * MINUTES_PER_HOUR
    return gap_min <= delta_window


def handover_coeff(b: Breaker, b2: Breaker, k: int, k2: int) -> float:
    """Cost of riding behind ``b`` on segment k and ``b2`` on segment k2.

    Time gap is in hours (arrival-time units). Only adjacent segments qualify.
    """
    if abs(k - k2) != 1:
        raise ValueError(f"segments {k} and {k2} are not adjacent")
    return 1.0 + abs(breaker_arrival(b, k) - breaker_arrival(b2, k2))


def multi_objective(inst: Instance, a: MultiAssignment) -> float:
    x = a.x
    S, B, K = len(inst.surfers), len(inst.breakers), inst.K
    if x.shape != (S, B, K):
        raise ValueError(f"assignment shape {x.shape} does not match instance {(S, B, K)}")
    total = 0.0
    for k in range(K):
        for s_idx, b_idx in zip(*np.nonzero(x[:, :, k])):
            total += segment_weight(inst.surfers[s_idx], inst.breakers[b_idx], k)
    # handover over consecutive pairs only; b == b2 is charged as written
    for k in range(K - 1):
        for s_idx in range(S):
            for b_idx in np.flatnonzero(x[s_idx, :, k]):
                for b2_idx in np.flatnonzero(x[s_idx, :, k + 1]):
                    total += handover_coeff(inst.breakers[b_idx], inst.breakers[b2_idx], k, k + 1)
    return total


@dataclass(frozen=True)
class FeasibilityReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def feasible(inst: Instance, a: MultiAssignment) -> FeasibilityReport:
    """Check surfer uniqueness, breaker capacity and timing for every segment."""
    x = a.x
    S, B, K = len(inst.surfers), len(inst.breakers), inst.K
    if x.shape != (S, B, K):
        raise ValueError(f"assignment shape {x.shape} does not match instance {(S, B, K)}")
    violations = []
    for k in range(K):
        for s in range(S):
            count = int(x[s, :, k].sum())
            if count != 1:
                violations.append(f"surfer-uniqueness: surfer {s} has {count} breakers on segment {k}")
        for b in range(B):
            count = int(x[:, b, k].sum())
            if count > 1:
                violations.append(f"breaker-capacity: breaker {b} has {count} surfers on segment {k}")
        for s, b in zip(*np.nonzero(x[:, :, k])):
            if not timing_feasible(inst.surfers[s], inst.breakers[b], k, inst.delta_window):
                violations.append(f"timing: surfer {s} / breaker {b} on segment {k} exceed window")
    return FeasibilityReport(tuple(violations))
