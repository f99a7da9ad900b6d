"""Bitstring decoding, bit-similarity and matching cost."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .classical import Matching
from .model import Instance, pair_weight


def parse_bits(bits) -> str:
    """Normalize a raw 0/1 string (or sequence of 0/1 ints) to a clean string."""
    if isinstance(bits, str):
        text = bits.strip()
    else:
        text = "".join(str(int(b)) for b in bits)
    bad = set(text) - {"0", "1"}
    if bad:
        raise ValueError(f"bitstring may only contain 0 and 1, found {sorted(bad)}")
    return text


@dataclass(frozen=True)
class DecodeOutcome:
    matching: Matching | None = None
    invalid: str | None = None

    def __post_init__(self):
        if (self.matching is None) == (self.invalid is None):
            raise ValueError("exactly one of matching / invalid must be set")

    @property
    def valid(self) -> bool:
        return self.matching is not None


def decode(bits) -> DecodeOutcome:
    """Row-major reshape into an n x n matrix; rows then columns must each hold one 1."""
    x = parse_bits(bits)
    n = math.isqrt(len(x))
    if n * n != len(x) or n == 0:
        return DecodeOutcome(invalid=f"non-square length {len(x)}")
    rows = [x[s * n:(s + 1) * n] for s in range(n)]
    pairs = {}
    for s, row in enumerate(rows):
        total = row.count("1")
        if total != 1:
            return DecodeOutcome(invalid=f"row {s} sums to {total}")
        pairs[s] = row.index("1")
    for b in range(n):
        total = sum(row[b] == "1" for row in rows)
        if total != 1:
            return DecodeOutcome(invalid=f"column {b} sums to {total}")
    return DecodeOutcome(matching=Matching(pairs))


def bit_similarity(x, y) -> float:
    """Fraction of positions where two equal-length bitstrings agree."""
    x, y = parse_bits(x), parse_bits(y)
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    if not x:
        raise ValueError("empty bitstrings")
    return sum(a == b for a, b in zip(x, y)) / len(x)


def matching_cost(m: Matching, inst: Instance) -> float:
    missing = [s for s in range(len(inst.surfers)) if s not in m.pairs]
    if missing:
        raise ValueError(f"matching does not cover surfers {missing}")
    return float(sum(pair_weight(inst.surfers[s], inst.breakers[m.pairs[s]], inst.lambda1, inst.lambda2)
                     for s in range(len(inst.surfers))))
