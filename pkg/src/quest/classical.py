"""Classical solvers, used both in production and as verification oracles."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .model import Instance, MultiAssignment, feasible, multi_objective
from .qubo import QuboMatrix, energy

MAX_BRUTE_ASSIGNMENT_N = 10
MAX_BRUTE_QUBO_VARS = 20
MAX_MULTI_SEARCH = 10**6


class SizeGuardError(ValueError):
    """Raised when an exhaustive method would exceed its search-space guard."""


class Solver(str, enum.Enum):
    HUNGARIAN = "hungarian"
    BRUTE = "brute"
    ANNEAL = "anneal"
    QAOA = "qaoa"


@dataclass(frozen=True)
class Matching:
    pairs: dict[int, int]
    total_cost: float | None = None

    def __post_init__(self):
        if len(set(self.pairs.values())) != len(self.pairs):
            raise ValueError("matching assigns a breaker twice")

    def as_permutation(self) -> tuple[int, ...]:
        return tuple(self.pairs[s] for s in sorted(self.pairs))

    def to_bits(self, n: int | None = None) -> str:
        """Row-major one-hot bitstring of length n^2."""
        n = len(self.pairs) if n is None else n
        bits = ["0"] * (n * n)
        for s, b in self.pairs.items():
            bits[s * n + b] = "1"
        return "".join(bits)


@dataclass(frozen=True)
class SolveResult:
    x: np.ndarray = field(repr=False)
    energy: float
    objective: float
    solver: Solver

    def bits(self) -> str:
        return "".join(str(int(v)) for v in self.x)


def _check_cost(cost) -> np.ndarray:
    C = np.asarray(cost, dtype=float)
    if C.ndim != 2 or C.shape[0] != C.shape[1] or C.shape[0] == 0:
        raise ValueError(f"cost matrix must be square and non-empty, got shape {C.shape}")
    if not np.all(np.isfinite(C)):
        raise ValueError("cost matrix has non-finite entries")
    return C


def permutation_cost(C: np.ndarray, perm) -> float:
    return float(sum(C[s, b] for s, b in enumerate(perm)))


def _kuhn_munkres(C: np.ndarray):
    """O(n^3) shortest-augmenting-path Hungarian method.

    Returns ``(row_to_col, u, v)`` with dual potentials satisfying
    ``C[i, j] - u[i] - v[j] >= 0``, equality on the matched edges.
    """
    n = C.shape[0]
    inf = math.inf
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, dtype=int)  # p[j]: row matched to column j (1-based, 0 = free)
    way = np.zeros(n + 1, dtype=int)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            free = ~used[1:]
            cur = C[i0 - 1] - u[i0] - v[1:]
            better = free & (cur < minv[1:])
            minv[1:][better] = cur[better]
            way[1:][better] = j0
            cand = np.where(free, minv[1:], inf)
            j1 = int(np.argmin(cand)) + 1
            delta = cand[j1 - 1]
            u[p[used]] += delta
            v[used] -= delta
            minv[~used] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    row_to_col = np.empty(n, dtype=int)
    for j in range(1, n + 1):
        row_to_col[p[j] - 1] = j - 1
    return row_to_col, u[1:], v[1:]


def _has_perfect_matching(adj: list[list[int]], rows: list[int], cols_free: set[int]) -> bool:
    match: dict[int, int] = {}

    def augment(r, seen):
        for c in adj[r]:
            if c in cols_free and c not in seen:
                seen.add(c)
                if c not in match or augment(match[c], seen):
                    match[c] = r
                    return True
        return False

    return all(augment(r, set()) for r in rows)


def hungarian(cost) -> Matching:
    """Minimum-cost perfect matching; ties go to the lexicographically smallest permutation.

    Every perfect matching on the tight edges of an optimal dual solution is
    optimal, so the tie-break is a greedy lexicographic walk over the tight
    subgraph that keeps a perfect completion available at each step.
    """
    C = _check_cost(cost)
    n = C.shape[0]
    _, u, v = _kuhn_munkres(C)
    reduced = C - u[:, None] - v[None, :]
    eps = 1e-12 * n * (1.0 + float(np.max(np.abs(C))))
    adj = [list(np.flatnonzero(reduced[s] <= eps)) for s in range(n)]
    free = set(range(n))
    perm = []
    for s in range(n):
        for b in adj[s]:
            if b not in free:
                continue
            free.discard(b)
            if _has_perfect_matching(adj, list(range(s + 1, n)), free):
                perm.append(int(b))
                break
            free.add(b)
        else:  # pragma: no cover - tight graph always has a perfect matching
            raise RuntimeError("tight subgraph lost its perfect matching")
    return Matching(dict(enumerate(perm)), permutation_cost(C, perm))


def brute_force_assignment(cost, chunk: int = 50000) -> Matching:
    """Exact minimum over all n! permutations (lexicographic order, first minimum wins)."""
    C = _check_cost(cost)
    n = C.shape[0]
    if n > MAX_BRUTE_ASSIGNMENT_N:
        raise SizeGuardError(f"n={n} exceeds the {MAX_BRUTE_ASSIGNMENT_N}! enumeration guard")
    rows = np.arange(n)
    perms = itertools.permutations(range(n))
    best_perm, best_val = None, math.inf
    while True:
        block = np.array(list(itertools.islice(perms, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        totals = C[rows, block].sum(axis=1)
        i = int(np.argmin(totals))
        if totals[i] < best_val:
            best_val, best_perm = totals[i], tuple(int(b) for b in block[i])
    return Matching(dict(enumerate(best_perm)), permutation_cost(C, best_perm))


def int_to_bits(k: int, n_vars: int) -> np.ndarray:
    """Bits of ``k`` with x[0] as the most significant bit."""
    return np.array([(k >> (n_vars - 1 - i)) & 1 for i in range(n_vars)], dtype=np.int8)


def brute_force_qubo(Q: QuboMatrix, chunk: int = 1 << 15) -> SolveResult:
    """Global minimum of x^T Q x by enumeration.

    Energies within rounding of the minimum count as ties, and ties go to the
    lexicographically greatest bitstring (largest integer with x[0] as MSB).
    On one-hot assignment encodings that is the lexicographically smallest
    permutation, the same choice :func:`hungarian` makes.
    """
    N = Q.n_vars
    if N > MAX_BRUTE_QUBO_VARS:
        raise SizeGuardError(f"{N} variables exceed the 2^{MAX_BRUTE_QUBO_VARS} enumeration guard")
    shifts = (N - 1 - np.arange(N)).astype(np.int64)
    A = Q.entries
    vals = np.empty(1 << N)
    for start in range(0, 1 << N, chunk):
        ks = np.arange(start, min(start + chunk, 1 << N), dtype=np.int64)
        X = ((ks[:, None] >> shifts) & 1).astype(float)
        vals[start:start + ks.size] = np.einsum("ij,ij->i", X @ A, X)
    tol = 1e-12 * max(1.0, float(np.abs(A).sum()))
    best_k = int(np.flatnonzero(vals <= vals.min() + tol)[-1])
    x = int_to_bits(best_k, N)
    e = energy(Q, x)
    return SolveResult(x, e, e + Q.offset, Solver.BRUTE)


@dataclass(frozen=True)
class AnnealSchedule:
    """Geometric temperature schedule from ``t_start`` to ``t_end`` over ``sweeps`` sweeps."""

    t_start: float
    t_end: float
    sweeps: int

    def __post_init__(self):
        if not (self.t_start > self.t_end > 0):
            raise ValueError(f"need t_start > t_end > 0, got {self.t_start}, {self.t_end}")
        if self.sweeps < 1:
            raise ValueError("sweeps must be >= 1")

    @classmethod
    def default_for(cls, Q: QuboMatrix) -> "AnnealSchedule":
        t_start = float(np.max(np.abs(Q.entries))) or 1.0
        return cls(t_start, 1e-3 * t_start, 200 * Q.n_vars)

    def temperatures(self) -> np.ndarray:
        if self.sweeps == 1:
            return np.array([self.t_start])
        return self.t_start * (self.t_end / self.t_start) ** (np.arange(self.sweeps) / (self.sweeps - 1))


def simulated_annealing(Q: QuboMatrix, schedule: AnnealSchedule | None = None, seed: int = 0) -> SolveResult:
    """Single-bit-flip Metropolis chain; returns the best state seen."""
    N = Q.n_vars
    if N < 1:
        raise ValueError("need at least one variable")
    schedule = schedule or AnnealSchedule.default_for(Q)
    rng = np.random.default_rng(seed)
    A = Q.entries
    diag = np.diag(A).tolist()
    coupling = A + A.T
    np.fill_diagonal(coupling, 0.0)
    coupling_rows = [row for row in coupling]

    x = rng.integers(0, 2, size=N)
    field_ = (coupling @ x).astype(float)  # field_[i] = sum_{j != i} (Q_ij + Q_ji) x_j
    current = float(x @ A @ x)
    best_x, best_e = x.copy(), current

    for T in schedule.temperatures():
        u = rng.random(N)
        for i in range(N):
            sign = 1 - 2 * x[i]
            dE = sign * (diag[i] + field_[i])
            if dE <= 0 or u[i] < math.exp(-dE / T):
                x[i] ^= 1
                field_ += sign * coupling_rows[i]
                current += dE
                if current < best_e:
                    best_e, best_x = current, x.copy()

    e = energy(Q, best_x)
    return SolveResult(best_x.astype(np.int8), e, e + Q.offset, Solver.ANNEAL)


def brute_force_multi(inst: Instance) -> tuple[MultiAssignment, float] | None:
    """Exhaustive minimum of the multi-segment objective.

    Enumerates every injective surfer-to-breaker map on each segment and keeps
    the cheapest combination that passes :func:`quest.model.feasible`.
    Returns ``None`` when nothing is feasible.
    """
    S, B, K = len(inst.surfers), len(inst.breakers), inst.K
    per_segment = math.perm(B, S)
    if per_segment ** K > MAX_MULTI_SEARCH:
        raise SizeGuardError(f"search space {per_segment}^{K} exceeds {MAX_MULTI_SEARCH}")
    maps = list(itertools.permutations(range(B), S))
    best = None
    best_cost = math.inf
    for combo in itertools.product(maps, repeat=K):
        x = np.zeros((S, B, K), dtype=bool)
        for k, m in enumerate(combo):
            x[np.arange(S), list(m), k] = True
        a = MultiAssignment(x)
        if not feasible(inst, a):
            continue
        c = multi_objective(inst, a)
        if c < best_cost:
            best, best_cost = a, c
    if best is None:
        return None
    return best, best_cost
