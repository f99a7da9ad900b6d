"""Synthetic instance generator.

Defaults put some surfer/breaker pairs inside their flexibility windows and
some outside, so the penalty terms matter. Speed range, departure window and
distances are synthetic choices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (DEFAULT_LAMBDA1, DEFAULT_LAMBDA2, DEFAULT_LAMBDA3, Breaker, Instance,
                    Segment, Surfer)


@dataclass(frozen=True)
class GeneratorConfig:
    speed_range: tuple[float, float] = (80.0, 130.0)
    depart_window: float = 120.0
    speed_flex: float = 10.0
    time_flex: float = 30.0
    segments: int = 1
    segment_length_range: tuple[float, float] = (20.0, 120.0)
    approach_range: tuple[float, float] = (0.0, 60.0)
    lambda1: float = DEFAULT_LAMBDA1
    lambda2: float = DEFAULT_LAMBDA2
    lambda3: float = DEFAULT_LAMBDA3
    delta_window: float = 30.0
    decimals: int = 2


def generate_instance(pairs: int, seed: int = 0, config: GeneratorConfig | None = None) -> Instance:
    if pairs < 1:
        raise ValueError("pairs must be >= 1")
    cfg = config or GeneratorConfig()
    if cfg.segments < 1:
        raise ValueError("segments must be >= 1")
    rng = np.random.default_rng(seed)

    def r(v):
        return round(float(v), cfg.decimals)

    lengths = [r(rng.uniform(*cfg.segment_length_range)) for _ in range(cfg.segments)]
    starts = np.concatenate([[0.0], np.cumsum(lengths)[:-1]])

    def distances():
        approach = rng.uniform(*cfg.approach_range)
        return tuple(r(approach + s) for s in starts)

    surfers = []
    for i in range(pairs):
        surfers.append(Surfer(
            id=i,
            vclass=int(rng.integers(1, 6)),
            pref_speed=r(rng.uniform(*cfg.speed_range)),
            speed_flex=cfg.speed_flex,
            depart_time=r(rng.uniform(0.0, cfg.depart_window)),
            time_flex=cfg.time_flex,
            seg_distances=distances(),
            seg_lengths=tuple(lengths),
        ))
    breakers = []
    for i in range(pairs):
        breakers.append(Breaker(
            id=i,
            vclass=int(rng.integers(1, 6)),
            speed=r(rng.uniform(*cfg.speed_range)),
            depart_time=r(rng.uniform(0.0, cfg.depart_window)),
            seg_distances=distances(),
        ))
    return Instance(
        surfers=tuple(surfers),
        breakers=tuple(breakers),
        segments=tuple(Segment(k, lengths[k]) for k in range(cfg.segments)),
        lambda1=cfg.lambda1,
        lambda2=cfg.lambda2,
        lambda3=cfg.lambda3,
        delta_window=cfg.delta_window,
    )
