"""Single-segment QUBO encoding and the ``.qubo`` text exchange format.

Variable ``e = (s, b)`` lives at flat index ``s * n + b`` (row-major).
Squaring the one-to-one penalties leaves a constant ``2 * n * lambda3``
which is carried in :attr:`QuboMatrix.offset`, so that::

    energy(Q, x) + Q.offset == sum_e w_e x_e + lambda3 * (row and column penalties)
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import Instance, weight_matrix


@dataclass(frozen=True)
class QuboMatrix:
    entries: np.ndarray = field(repr=False)
    offset: float = 0.0

    def __post_init__(self):
        q = np.array(self.entries, dtype=float)
        if q.ndim != 2 or q.shape[0] != q.shape[1]:
            raise ValueError(f"QUBO matrix must be square, got shape {q.shape}")
        if not np.all(np.isfinite(q)):
            raise ValueError("QUBO matrix has non-finite entries")
        q.setflags(write=False)
        object.__setattr__(self, "entries", q)
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def n_vars(self) -> int:
        return self.entries.shape[0]

    def is_symmetric(self, rtol: float = 1e-9) -> bool:
        q = self.entries
        scale = float(np.max(np.abs(q))) if q.size else 0.0
        return bool(np.all(np.abs(q - q.T) <= rtol * scale))

    def __eq__(self, other):
        if not isinstance(other, QuboMatrix):
            return NotImplemented
        return self.offset == other.offset and np.array_equal(self.entries, other.entries)

    __hash__ = None


class UnsupportedEncodingError(ValueError):
    pass


def build_qubo(inst: Instance) -> QuboMatrix:
    if inst.K != 1:
        raise UnsupportedEncodingError(f"QUBO encoding supports a single segment, instance has K={inst.K}")
    n = inst.n
    w = weight_matrix(inst)
    lam = inst.lambda3
    N = n * n
    Q = np.zeros((N, N))
    surfer = np.repeat(np.arange(n), n)
    breaker = np.tile(np.arange(n), n)
    shares = (surfer[:, None] == surfer[None, :]) | (breaker[:, None] == breaker[None, :])
    Q[shares] = lam
    Q[np.diag_indices(N)] = w.ravel() - 2 * lam
    return QuboMatrix(Q, offset=2 * n * lam)


def _as_bits(x, n_vars: int) -> np.ndarray:
    x = np.asarray(x)
    if x.shape != (n_vars,):
        raise ValueError(f"bit vector has length {x.size}, expected {n_vars}")
    if not np.all((x == 0) | (x == 1)):
        raise ValueError("bit vector entries must be 0 or 1")
    return x.astype(float)


def energy(Q: QuboMatrix, x) -> float:
    """``x^T Q x`` without the constant offset."""
    x = _as_bits(x, Q.n_vars)
    return float(x @ Q.entries @ x)


def objective(Q: QuboMatrix, x) -> float:
    return energy(Q, x) + Q.offset


def format_number(v: float) -> str:
    """Shortest round-trip decimal, without a trailing ``.0``."""
    text = repr(float(v))
    return text[:-2] if text.endswith(".0") else text


class QuboFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def export_qubo(Q: QuboMatrix) -> str:
    """Header ``QUBO <n_vars> <offset>`` then ``i j value`` per nonzero upper entry."""
    lines = [f"QUBO {Q.n_vars} {format_number(Q.offset)}"]
    rows, cols = np.nonzero(np.triu(Q.entries))
    for i, j in zip(rows, cols):
        lines.append(f"{i} {j} {format_number(Q.entries[i, j])}")
    return "\n".join(lines)


def import_qubo(text: str) -> QuboMatrix:
    lines = text.splitlines()
    # drop trailing blank lines only; blank lines elsewhere are malformed
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise QuboFormatError("empty input", 1)
    head = lines[0].split()
    if len(head) != 3 or head[0] != "QUBO":
        raise QuboFormatError("expected header 'QUBO <n_vars> <offset>'", 1)
    try:
        n_vars = int(head[1])
        offset = float(head[2])
    except ValueError:
        raise QuboFormatError("malformed header", 1) from None
    if n_vars < 0:
        raise QuboFormatError("n_vars must be non-negative", 1)

    Q = np.zeros((n_vars, n_vars))
    seen: set[tuple[int, int]] = set()
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 3:
            raise QuboFormatError("expected 'i j value'", lineno)
        try:
            i, j, value = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise QuboFormatError("malformed entry", lineno) from None
        if not (0 <= i < n_vars and 0 <= j < n_vars):
            raise QuboFormatError(f"index ({i}, {j}) out of range for {n_vars} variables", lineno)
        if i > j:
            raise QuboFormatError(f"entry ({i}, {j}) is below the diagonal", lineno)
        if (i, j) in seen:
            raise QuboFormatError(f"duplicate entry ({i}, {j})", lineno)
        seen.add((i, j))
        Q[i, j] = value
        Q[j, i] = value
    return QuboMatrix(Q, offset)
