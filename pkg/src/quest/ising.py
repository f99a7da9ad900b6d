"""QUBO to Ising mapping via x_i = (1 - z_i) / 2, plus max-coefficient normalization."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .qubo import QuboMatrix


@dataclass(frozen=True)
class IsingHamiltonian:
    """``H(z) = offset + sum_i h_i z_i + sum_{i<j} J_ij z_i z_j`` with z in {+1, -1}.

    ``J`` is stored as a dense matrix that is zero on and below the diagonal.
    """

    h: np.ndarray = field(repr=False)
    J: np.ndarray = field(repr=False)
    offset: float = 0.0

    def __post_init__(self):
        h = np.array(self.h, dtype=float)
        J = np.array(self.J, dtype=float)
        if h.ndim != 1 or J.shape != (h.size, h.size):
            raise ValueError(f"shape mismatch: h {h.shape}, J {J.shape}")
        if np.any(np.tril(J) != 0):
            raise ValueError("J must be strictly upper triangular")
        if not (np.all(np.isfinite(h)) and np.all(np.isfinite(J)) and np.isfinite(self.offset)):
            raise ValueError("non-finite Ising coefficient")
        h.setflags(write=False)
        J.setflags(write=False)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def n_spins(self) -> int:
        return self.h.size

    def couplings(self):
        """Iterate ``(i, j, J_ij)`` over nonzero couplings, i < j."""
        rows, cols = np.nonzero(self.J)
        for i, j in zip(rows, cols):
            yield int(i), int(j), float(self.J[i, j])

    def max_coefficient(self) -> float:
        return float(max(np.max(np.abs(self.h), initial=0.0), np.max(np.abs(self.J), initial=0.0)))


def qubo_to_ising(Q: QuboMatrix) -> IsingHamiltonian:
    if not Q.is_symmetric():
        raise ValueError("QUBO matrix is not symmetric")
    A = Q.entries
    diag = np.diag(A)
    pair = np.triu(A + A.T, k=1)  # Q_ij + Q_ji for i < j
    # Q_ii x_i      = Q_ii/2 (1 - z_i)
    # P_ij x_i x_j  = P_ij/4 (1 - z_i - z_j + z_i z_j)
    h = -diag / 2 - (pair.sum(axis=1) + pair.sum(axis=0)) / 4
    J = pair / 4
    offset = diag.sum() / 2 + pair.sum() / 4
    return IsingHamiltonian(h, J, offset)


def _as_spins(z, n: int) -> np.ndarray:
    z = np.asarray(z)
    if z.shape != (n,):
        raise ValueError(f"spin vector has length {z.size}, expected {n}")
    if not np.all((z == 1) | (z == -1)):
        raise ValueError("spin entries must be +1 or -1")
    return z.astype(float)


def ising_energy(H: IsingHamiltonian, z) -> float:
    z = _as_spins(z, H.n_spins)
    return float(H.offset + H.h @ z + z @ H.J @ z)


class DegenerateHamiltonianError(ValueError):
    pass


def normalize(H: IsingHamiltonian) -> tuple[IsingHamiltonian, float]:
    """Scale by ``alpha = 1 / max|coefficient|`` over h and J (offset excluded, but scaled)."""
    m = H.max_coefficient()
    if m == 0:
        raise DegenerateHamiltonianError("Hamiltonian has no nonzero Z or ZZ coefficient")
    alpha = 1.0 / m
    if not np.isfinite(alpha):
        raise DegenerateHamiltonianError(f"largest coefficient {m!r} is too small to rescale")
    # divide rather than multiply so the largest coefficient lands on exactly +-1
    return IsingHamiltonian(H.h / m, H.J / m, H.offset / m), alpha
