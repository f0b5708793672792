"""Exact unitary evolution in the single-excitation sector.

States are complex vectors of length ``site_count``; entry i is the amplitude
of the basis state with the excitation on global site i.
"""

from __future__ import annotations

from typing import Iterable, Union

import numpy as np

from .hamiltonian import EigenSystem, spectral_decompose

HamiltonianLike = Union[np.ndarray, EigenSystem]


def _eigensystem(H: HamiltonianLike) -> EigenSystem:
    return H if isinstance(H, EigenSystem) else spectral_decompose(H)


def _check_state(eig: EigenSystem, psi0) -> np.ndarray:
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (eig.dimension,):
        raise ValueError(f"state has shape {psi0.shape}, Hamiltonian dimension is {eig.dimension}")
    return psi0


def evolve(H: HamiltonianLike, psi0, t: float) -> np.ndarray:
    """Return exp(-iHt) psi0.

    ``H`` may be a matrix or a precomputed :class:`EigenSystem`; pass the
    latter when evolving many states or times under the same Hamiltonian.
    """
    eig = _eigensystem(H)
    psi0 = _check_state(eig, psi0)
    if t == 0:
        return psi0.copy()
    V = eig.eigenvectors
    return V @ (np.exp(-1j * eig.eigenvalues * t) * (V.T @ psi0))


def evolve_series(H: HamiltonianLike, psi0, times: Iterable[float]) -> np.ndarray:
    """Evolve to each of ``times`` from one eigensystem; row k is psi(times[k])."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if times.size == 0:
        raise ValueError("times must be nonempty")
    if np.any(np.diff(times) < 0):
        raise ValueError("times must be ascending")
    eig = _eigensystem(H)
    psi0 = _check_state(eig, psi0)
    V = eig.eigenvectors
    coeffs = V.T @ psi0
    phases = np.exp(-1j * np.outer(times, eig.eigenvalues))
    out = (phases * coeffs) @ V.T
    out[times == 0] = psi0
    return out


def occupation(psi, sites) -> float:
    """Probability of finding the excitation on any of ``sites``."""
    psi = np.asarray(psi)
    idx = np.asarray(list(sites) if not isinstance(sites, np.ndarray) else sites, dtype=int)
    if idx.size == 0:
        return 0.0
    if idx.min() < 0 or idx.max() >= psi.shape[-1]:
        raise IndexError(f"site ids must lie in [0, {psi.shape[-1]})")
    return float(np.sum(np.abs(psi[..., idx]) ** 2))


def energy(H: np.ndarray, psi) -> float:
    psi = np.asarray(psi)
    return float(np.real(np.vdot(psi, H @ psi)))
