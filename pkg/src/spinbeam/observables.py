"""Figures of merit: reflection factor, leg transmission, concurrence, interference."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evolution import HamiltonianLike, _eigensystem, evolve, evolve_series, occupation
from .network import NetworkError, SpinNetwork
from .wavepacket import packet_width


@dataclass(frozen=True)
class ReflectionResult:
    R: float
    t0: float
    domain: np.ndarray


@dataclass(frozen=True)
class ConcurrenceResult:
    times: np.ndarray
    values: np.ndarray
    C_max: float
    t_star: float
    W: float

    @property
    def C_of_t(self) -> list[tuple[float, float]]:
        return list(zip(self.times.tolist(), self.values.tolist()))


@dataclass(frozen=True)
class InterferenceResult:
    intensity: float
    r0: int
    t0: float
    delta: int | None = None


def reflection_time(M: int, n0: float, N: int, J_A: float) -> float:
    """Instant at which the packet center reaches the middle of an output leg."""
    return (M - n0 + N / 2) / (2 * J_A)


def arrival_time(M: int, n0: float, N: int, W: float, J_A: float) -> float:
    """Instant at which the packet center reaches depth N - W/2 of an output leg."""
    return (M - n0 + N - W / 2) / (2 * J_A)


def reflection_factor(H: HamiltonianLike, psi0, t0: float, M: int) -> ReflectionResult:
    """Probability left in the input-leg interior (A,1)..(A,M-1) at ``t0``.

    Relies on the input leg occupying global ids 0..M-1.
    """
    if t0 < 0:
        raise ValueError("t0 must be ≥ 0")
    domain = np.arange(M - 1)
    psi = evolve(H, psi0, t0)
    return ReflectionResult(occupation(psi, domain), float(t0), domain)


def leg_transmission(H: HamiltonianLike, psi0, t0: float, network: SpinNetwork, leg: str) -> float:
    if t0 < 0:
        raise ValueError("t0 must be ≥ 0")
    sites = network.leg_sites(leg)
    return occupation(evolve(H, psi0, t0), sites)


def _window_sites(network: SpinNetwork, W: float) -> tuple[np.ndarray, np.ndarray]:
    try:
        B, C = network.leg("B"), network.leg("C")
    except NetworkError as exc:
        raise NetworkError("concurrence needs output legs labelled B and C") from exc
    if B.length != C.length:
        raise NetworkError(f"legs B and C differ in length ({B.length} vs {C.length})")
    N = B.length
    depth = np.arange(max(1, N - int(round(W))), N + 1)
    return network.offsets["B"] + depth - 1, network.offsets["C"] + depth - 1


def concurrence(psi, network: SpinNetwork, W: float) -> float:
    """Sum over the end window of |<S+_B S-_C + S-_B S+_C>| at equal depth.

    In the one-excitation sector each term is 2|Re(conj(psi_B) psi_C)|.
    """
    b, c = _window_sites(network, W)
    psi = np.asarray(psi)
    return float(np.sum(2 * np.abs(np.real(np.conj(psi[..., b]) * psi[..., c])), axis=-1))


def _concurrence_series(states: np.ndarray, network: SpinNetwork, W: float) -> np.ndarray:
    b, c = _window_sites(network, W)
    return np.sum(2 * np.abs(np.real(np.conj(states[:, b]) * states[:, c])), axis=1)


def default_time_grid(M: int, n0: float, N: int, alpha: float, J_A: float, num: int = 400) -> np.ndarray:
    t_arr = arrival_time(M, n0, N, packet_width(alpha), J_A)
    return np.linspace(0.5 * t_arr, 1.5 * t_arr, num)


def max_concurrence(
    H: HamiltonianLike, psi0, network: SpinNetwork, time_grid, W: float
) -> ConcurrenceResult:
    times = np.atleast_1d(np.asarray(time_grid, dtype=float))
    if times.size == 0:
        raise ValueError("time grid is empty")
    states = evolve_series(H, psi0, times)
    values = _concurrence_series(states, network, W)
    k = int(np.argmax(values))
    return ConcurrenceResult(times, values, float(values[k]), float(times[k]), float(W))


def interference_intensity(
    H: HamiltonianLike, psi0, r0: int, t0: float, delta: int | None = None
) -> InterferenceResult:
    """|<r0| exp(-iH t0) |psi0>|^2 for global site id ``r0``."""
    eig = _eigensystem(H)
    if not 0 <= r0 < eig.dimension:
        raise IndexError(f"site id {r0} outside [0, {eig.dimension})")
    V = eig.eigenvectors
    amp = V[r0] @ (np.exp(-1j * eig.eigenvalues * t0) * (V.T @ np.asarray(psi0, dtype=complex)))
    return InterferenceResult(float(abs(amp) ** 2), int(r0), float(t0), delta)


def node_residual_sites(network: SpinNetwork) -> np.ndarray:
    """Sites not covered by D' or the output legs: the input leg's node site."""
    return np.array([network.index("A", network.leg("A").length)])


def gauge_flip(H: np.ndarray, pairs) -> np.ndarray:
    """Copy of ``H`` with the sign of the listed bonds (i, j) reversed."""
    Hf = np.array(H, copy=True)
    for i, j in pairs:
        Hf[i, j] = -Hf[i, j]
        Hf[j, i] = -Hf[j, i]
    return Hf

