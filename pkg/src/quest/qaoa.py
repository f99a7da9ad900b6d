"""Exact statevector QAOA for diagonal cost Hamiltonians.

Basis-state index convention: bit i of the integer index is qubit i, which is
flat QUBO variable i. Bitstrings are rendered with qubit 0 leftmost, so they
read in the same row-major order as the QUBO vector.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .ising import IsingHamiltonian, normalize, qubo_to_ising
from .qubo import QuboMatrix

DEFAULT_QUBIT_GUARD = 24
GUARD_ENV = "QUEST_GUARD_QUBITS"


class QubitGuardError(ValueError):
    pass


def qubit_guard() -> int:
    return int(os.environ.get(GUARD_ENV, DEFAULT_QUBIT_GUARD))


@dataclass(frozen=True)
class QaoaParams:
    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        if len(self.gammas) != len(self.betas) or not self.gammas:
            raise ValueError("need p >= 1 gammas and as many betas")

    @property
    def p(self) -> int:
        return len(self.gammas)

    def to_vector(self) -> np.ndarray:
        return np.array(self.gammas + self.betas)

    @classmethod
    def from_vector(cls, v) -> "QaoaParams":
        v = np.asarray(v, dtype=float)
        p = v.size // 2
        return cls(tuple(v[:p]), tuple(v[p:]))

    def to_dict(self) -> dict:
        return {"gammas": list(self.gammas), "betas": list(self.betas)}


def spin_column(index: np.ndarray, qubit: int) -> np.ndarray:
    return 1.0 - 2.0 * ((index >> qubit) & 1)


def precompute_energies(H: IsingHamiltonian) -> np.ndarray:
    """Diagonal of H in the computational basis, ``values[z] = H(spin(z))``."""
    D = H.n_spins
    if D > qubit_guard():
        raise QubitGuardError(f"{D} qubits exceed the guard of {qubit_guard()} (set {GUARD_ENV})")
    index = np.arange(1 << D, dtype=np.int64)
    spins = [spin_column(index, i) for i in range(D)]
    values = np.full(1 << D, H.offset)
    for i in range(D):
        if H.h[i]:
            values += H.h[i] * spins[i]
    for i, j, c in H.couplings():
        values += c * spins[i] * spins[j]
    return values


def uniform_state(D: int) -> np.ndarray:
    return np.full(1 << D, 2.0 ** (-D / 2), dtype=complex)


def apply_mixer(state: np.ndarray, beta: float, D: int) -> np.ndarray:
    """Apply exp(-i beta X_j) to every qubit j, in place."""
    c, s = math.cos(beta), -1j * math.sin(beta)
    for j in range(D):
        view = state.reshape(-1, 2, 1 << j)
        a0 = view[:, 0, :].copy()
        a1 = view[:, 1, :]
        view[:, 0, :] = c * a0 + s * a1
        view[:, 1, :] = c * a1 + s * a0
    return state


def evolve(params: QaoaParams, energies: np.ndarray) -> np.ndarray:
    D = int(round(math.log2(energies.size)))
    if 1 << D != energies.size:
        raise ValueError("energy table length must be a power of two")
    state = uniform_state(D)
    for gamma, beta in zip(params.gammas, params.betas):
        state *= np.exp(-1j * gamma * energies)
        apply_mixer(state, beta, D)
    return state


def expectation(state: np.ndarray, energies: np.ndarray) -> float:
    if state.shape != energies.shape:
        raise ValueError("state and energy table dimensions differ")
    return float(np.dot(np.abs(state) ** 2, energies))


def bitstring(index: int, D: int) -> str:
    return "".join("1" if (index >> i) & 1 else "0" for i in range(D))


def bitstring_index(bits: str) -> int:
    return sum(1 << i for i, ch in enumerate(bits) if ch == "1")


def sample(state: np.ndarray, shots: int, seed: int = 0) -> dict[str, int]:
    """Multinomial measurement histogram, keys ordered by basis index."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    D = int(round(math.log2(state.size)))
    probs = np.abs(state) ** 2
    probs /= probs.sum()
    counts = np.random.default_rng(seed).multinomial(shots, probs)
    return {bitstring(int(z), D): int(counts[z]) for z in np.flatnonzero(counts)}


def _pick_min(values: np.ndarray, rtol: float = 1e-12) -> int:
    """First index within rounding of the minimum (row-major order breaks ties)."""
    lo = float(np.min(values))
    return int(np.flatnonzero(values <= lo + rtol * max(1.0, abs(lo)))[0])


def grid_search(energies: np.ndarray, grid_points: int = 21) -> tuple[QaoaParams, float]:
    """Depth-1 lattice scan over (gamma, beta) in [0, pi]^2."""
    if grid_points < 2:
        raise ValueError("grid_points must be >= 2")
    axis = np.linspace(0.0, math.pi, grid_points)
    values = np.array([
        expectation(evolve(QaoaParams((g,), (b,)), energies), energies)
        for g in axis for b in axis
    ])
    k = _pick_min(values)
    g, b = divmod(k, grid_points)
    return QaoaParams((axis[g],), (axis[b],)), float(values[k])


@dataclass
class SimplexTrace:
    best_costs: list[float] = field(default_factory=list)


def nelder_mead(objective: Callable[[np.ndarray], float], init: Sequence[float] | np.ndarray,
                max_iters: int = 400, tol: float = 1e-8, step: float = 0.1,
                trace: SimplexTrace | None = None) -> tuple[np.ndarray, float]:
    """Downhill simplex minimization.

    Coefficients: reflection 1, expansion 2, contraction 0.5, shrink 0.5.
    Stops when both the vertex spread and the cost spread fall below ``tol``
    or after ``max_iters`` iterations. With ``max_iters=0`` the initial
    point is returned unchanged.
    """
    x0 = np.asarray(init, dtype=float)
    n = x0.size
    if max_iters <= 0:
        return x0.copy(), float(objective(x0))
    simplex = [x0.copy()]
    for i in range(n):
        v = x0.copy()
        v[i] += step
        simplex.append(v)
    costs = [float(objective(v)) for v in simplex]

    for _ in range(max_iters):
        order = sorted(range(n + 1), key=costs.__getitem__)
        simplex = [simplex[i] for i in order]
        costs = [costs[i] for i in order]
        if trace is not None:
            trace.best_costs.append(costs[0])
        x_spread = max(float(np.max(np.abs(v - simplex[0]))) for v in simplex[1:])
        f_spread = costs[-1] - costs[0]
        if x_spread < tol and f_spread < tol:
            break

        centroid = np.mean(simplex[:-1], axis=0)
        worst = simplex[-1]
        xr = centroid + (centroid - worst)
        fr = float(objective(xr))
        if fr < costs[0]:
            xe = centroid + 2.0 * (centroid - worst)
            fe = float(objective(xe))
            simplex[-1], costs[-1] = (xe, fe) if fe < fr else (xr, fr)
            continue
        if fr < costs[-2]:
            simplex[-1], costs[-1] = xr, fr
            continue
        if fr < costs[-1]:
            xc = centroid + 0.5 * (xr - centroid)
            fc = float(objective(xc))
            if fc <= fr:
                simplex[-1], costs[-1] = xc, fc
                continue
        else:
            xc = centroid + 0.5 * (worst - centroid)
            fc = float(objective(xc))
            if fc < costs[-1]:
                simplex[-1], costs[-1] = xc, fc
                continue
        best = simplex[0]
        for i in range(1, n + 1):
            simplex[i] = best + 0.5 * (simplex[i] - best)
            costs[i] = float(objective(simplex[i]))

    k = min(range(n + 1), key=costs.__getitem__)
    return simplex[k], costs[k]


def interpolate_params(params: QaoaParams) -> QaoaParams:
    """Extend depth-p angles to depth p+1 by linear interpolation of the schedules."""
    p = params.p

    def grow(angles):
        padded = (0.0,) + angles + (0.0,)
        return tuple((i / p) * padded[i] + ((p - i) / p) * padded[i + 1] for i in range(p + 1))

    return QaoaParams(grow(params.gammas), grow(params.betas))


def optimize_params(energies: np.ndarray, init: QaoaParams, max_iters: int = 400,
                    tol: float = 1e-8) -> tuple[QaoaParams, float]:
    def cost(v):
        return expectation(evolve(QaoaParams.from_vector(v), energies), energies)

    best, value = nelder_mead(cost, init.to_vector(), max_iters=max_iters, tol=tol)
    return QaoaParams.from_vector(best), value


def deepen(energies: np.ndarray, params: QaoaParams, p: int, refine: bool,
           max_iters: int = 400) -> tuple[QaoaParams, float]:
    """Grow ``params`` to depth ``p`` one layer at a time, optionally refining each depth."""
    if params.p > p:
        params = QaoaParams(params.gammas[:p], params.betas[:p])
    if refine:
        params, value = optimize_params(energies, params, max_iters)
    while params.p < p:
        params = interpolate_params(params)
        if refine:
            params, value = optimize_params(energies, params, max_iters)
    if not refine:
        value = expectation(evolve(params, energies), energies)
    return params, value


STRATEGIES = ("grid", "grid+nm", "transfer+nm")


@dataclass(frozen=True)
class QaoaResult:
    distribution: dict[str, int]
    best_bitstring: str
    most_probable: str
    params: QaoaParams
    expected_energy: float
    alpha: float
    probabilities: np.ndarray = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "distribution": self.distribution,
            "best_bitstring": self.best_bitstring,
            "most_probable": self.most_probable,
            "params": self.params.to_dict(),
            "expected_energy": self.expected_energy,
        }


def run_qaoa(Q: QuboMatrix, p: int = 4, strategy: str = "grid+nm", shots: int = 10000,
             seed: int = 0, grid_points: int = 21, transfer_from: QaoaParams | None = None,
             max_iters: int = 400) -> QaoaResult:
    """QUBO -> Ising -> normalize -> optimize angles -> evolve -> sample.

    ``best_bitstring`` is the mode of the sampled histogram; ``most_probable``
    is the argmax of the exact output probabilities, which the sample only
    approximates when competing strings are nearly degenerate.
    ``expected_energy`` is reported on the QUBO scale (``x^T Q x``, without
    the QUBO offset); optimization runs on the normalized Hamiltonian.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    if Q.n_vars > qubit_guard():
        raise QubitGuardError(f"{Q.n_vars} qubits exceed the guard of {qubit_guard()} (set {GUARD_ENV})")
    H, alpha = normalize(qubo_to_ising(Q))
    energies = precompute_energies(H)

    if strategy == "transfer+nm":
        if transfer_from is None:
            raise ValueError("transfer+nm needs parameters from a previous run")
        params, _ = deepen(energies, transfer_from, p, refine=True, max_iters=max_iters)
    else:
        seed_params, _ = grid_search(energies, grid_points)
        params, _ = deepen(energies, seed_params, p, refine=strategy == "grid+nm", max_iters=max_iters)

    state = evolve(params, energies)
    dist = sample(state, shots, seed)
    best = max(dist, key=lambda k: (dist[k], -bitstring_index(k)))
    probs = np.abs(state) ** 2
    return QaoaResult(
        distribution=dist,
        best_bitstring=best,
        most_probable=bitstring(int(np.argmax(probs)), Q.n_vars),
        params=params,
        expected_energy=expectation(state, energies) / alpha,
        alpha=alpha,
        probabilities=probs,
    )
