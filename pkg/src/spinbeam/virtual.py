"""Collective-mode (virtual chain) bases for star and Y-shaped networks.

Mixing the output legs at equal depth turns an m-legged star into one long
virtual chain ``a`` (input leg followed by the symmetric output mode) plus
m - 1 complementary chains.  When the node couplings are matched the chains
decouple and chain ``a`` is homogeneous, so a packet crosses the node without
reflection.  Everything here is algebraic; no time evolution is involved.

The complementary modes are taken as real cosine/sine combinations spanning
the same subspace as the complex Fourier modes, so every basis is a real
orthogonal matrix.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .hamiltonian import single_excitation_hamiltonian
from .network import NetworkError, SpinNetwork

EXACT_TOL = 1e-12


@dataclass(frozen=True)
class CollectiveBasis:
    """Real orthogonal ``U``; row k is the k-th virtual site in global site coordinates."""

    matrix: np.ndarray
    blocks: dict[str, np.ndarray]

    def block_of(self) -> np.ndarray:
        """Integer block label per virtual site, in ``blocks`` order."""
        labels = np.empty(self.matrix.shape[0], dtype=int)
        for k, idx in enumerate(self.blocks.values()):
            labels[idx] = k
        return labels


@dataclass(frozen=True)
class DecouplingReport:
    theta: float | None
    g: float
    J_AB: float
    J_aM: float
    H_vn_coeff: float
    offblock_norm: float
    chain_a_homogeneous: bool
    J_aM_measured: float
    chain_a_bonds: tuple[float, ...]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["chain_a_bonds"] = list(self.chain_a_bonds)
        return d


def _complement_modes(m: int) -> np.ndarray:
    """(m-1) x m real orthonormal rows orthogonal to the uniform vector."""
    p = np.arange(1, m + 1)
    rows = []
    for q in range(1, (m - 1) // 2 + 1):
        rows.append(math.sqrt(2.0 / m) * np.cos(2 * np.pi * p * q / m))
        rows.append(math.sqrt(2.0 / m) * np.sin(2 * np.pi * p * q / m))
    if m % 2 == 0:
        # sign chosen so m=2 gives (e_B - e_C)/sqrt2, matching the Y-beam basis at theta=pi/4
        rows.append((-1.0) ** (p + 1) / math.sqrt(m))
    return np.array(rows).reshape(m - 1, m)


def _mixing_basis(weights: np.ndarray, M: int, N: int) -> CollectiveBasis:
    """Basis from an m x m orthogonal leg-mixing matrix; row 0 feeds chain a."""
    m = weights.shape[0]
    n = M + m * N
    U = np.zeros((n, n))
    U[:M, :M] = np.eye(M)
    depth = np.arange(N)
    for r in range(m):
        rows = M + r * N + depth
        for p in range(m):
            U[rows, M + p * N + depth] = weights[r, p]
    blocks = {"a": np.arange(M + N)}
    for q in range(1, m):
        blocks[f"b{q}"] = np.arange(M + q * N, M + (q + 1) * N)
    return CollectiveBasis(U, blocks)


def star_collective_basis(m: int, M: int, N: int) -> CollectiveBasis:
    """Virtual chain a = A + uniform output mode; b1..b(m-1) = complementary modes.

    Assumes the site ordering produced by ``build_star``.
    """
    if m < 1 or M < 1 or N < 1:
        raise ValueError("m, M and N must be positive")
    weights = np.vstack([np.full((1, m), 1.0 / math.sqrt(m)), _complement_modes(m)])
    return _mixing_basis(weights, M, N)


def mixing_angle(J_nB: float, J_nC: float) -> float:
    if J_nB < 0 or J_nC < 0:
        raise ValueError("node couplings must be ≥ 0")
    if J_nB == 0 and J_nC == 0:
        raise ValueError("mixing angle undefined when both node couplings vanish")
    return math.atan2(J_nC, J_nB)


def ybeam_collective_basis(theta: float, M: int, N: int) -> CollectiveBasis:
    """Chain a = A then cos(theta) B + sin(theta) C; chain b = sin(theta) B - cos(theta) C."""
    if M < 1 or N < 1:
        raise ValueError("M and N must be positive")
    c, s = math.cos(theta), math.sin(theta)
    basis = _mixing_basis(np.array([[c, s], [s, -c]]), M, N)
    return CollectiveBasis(basis.matrix, {"a": basis.blocks["a"], "b": basis.blocks["b1"]})


def transform_hamiltonian(H: np.ndarray, basis: CollectiveBasis) -> np.ndarray:
    U = basis.matrix
    if H.shape != (U.shape[0], U.shape[0]):
        raise ValueError(f"Hamiltonian shape {H.shape} does not match basis of size {U.shape[0]}")
    Hp = U @ H @ U.T
    return 0.5 * (Hp + Hp.T)


def offblock_norm(Hp: np.ndarray, basis: CollectiveBasis) -> float:
    """Largest |H'| entry coupling two different partition blocks."""
    labels = basis.block_of()
    mask = labels[:, None] != labels[None, :]
    return float(np.max(np.abs(Hp[mask]), initial=0.0))


def chain_bonds(Hp: np.ndarray, block: np.ndarray) -> np.ndarray:
    """Nearest-neighbour hoppings along a virtual chain."""
    return Hp[block[:-1], block[1:]]


def connection_coefficients(J_B: float, J_C: float, J_nB: float, J_nC: float, theta: float) -> tuple[float, float]:
    """Closed-form (g, J_AB) coupling virtual chains a and b in a Y-beam.

    g hops between depth j on one chain and depth j+1 on the other; J_AB
    couples the last input site to the head of chain b.
    """
    g = (J_B - J_C) * math.sin(2 * theta) / 2
    J_AB = J_nB * math.sin(theta) - J_nC * math.cos(theta)
    return g, J_AB


def matching_holds(J_A: float, J_B: float, J_C: float, J_nB: float, J_nC: float, tol: float = EXACT_TOL) -> bool:
    """J_A = sqrt(J_nB^2 + J_nC^2) = J_B = J_C."""
    J_a = math.hypot(J_nB, J_nC)
    return abs(J_a - J_A) <= tol and abs(J_B - J_A) <= tol and abs(J_C - J_A) <= tol


def _star_shape(network: SpinNetwork) -> tuple[int, int, list]:
    if len(network.nodes) != 1:
        raise NetworkError("decoupling analysis needs a single-node star or Y-beam")
    node = network.nodes[0]
    legs = network.legs
    M = legs[0].length
    if node.anchor != (legs[0].leg_id, M):
        raise NetworkError("node must anchor on the last site of the first (input) leg")
    outs = list(legs[1:])
    if [b.leg_id for b in node.bonds] != [leg.leg_id for leg in outs] or any(b.end != "first" for b in node.bonds):
        raise NetworkError("node must bond to the first site of every output leg, in leg order")
    if len({leg.length for leg in outs}) != 1:
        raise NetworkError("output legs must have equal length for the collective transform")
    return M, outs[0].length, outs


def decoupling_report(network: SpinNetwork, theta: float | None = None) -> DecouplingReport:
    """Transform a star/Y-beam into virtual chains and measure the decoupling.

    For two output legs the mixing angle defaults to atan2(J_nC, J_nB); pass
    ``theta`` to probe other angles.  Stars with m != 2 need identical output
    legs and node couplings and use the symmetric/Fourier basis.
    """
    M, N, outs = _star_shape(network)
    bonds = network.nodes[0].bonds
    J_A = network.legs[0].coupling
    H = single_excitation_hamiltonian(network)
    m = len(outs)

    if m == 2:
        J_B, J_C = outs[0].coupling, outs[1].coupling
        J_nB, J_nC = bonds[0].coupling, bonds[1].coupling
        if theta is None:
            theta = mixing_angle(J_nB, J_nC)
        basis = ybeam_collective_basis(theta, M, N)
        g, J_AB = connection_coefficients(J_B, J_C, J_nB, J_nC, theta)
        J_aM = J_nB * math.cos(theta) + J_nC * math.sin(theta)
    else:
        J_out = {leg.coupling for leg in outs}
        J_n = {b.coupling for b in bonds}
        if len(J_out) != 1 or len(J_n) != 1:
            raise NetworkError("stars with m != 2 outputs need identical leg and node couplings")
        if theta is not None:
            raise NetworkError("mixing angle only applies to two output legs")
        basis = star_collective_basis(m, M, N)
        theta = 0.0 if m == 1 else None
        g, J_AB = 0.0, 0.0
        J_aM = math.sqrt(m) * J_n.pop()

    Hp = transform_hamiltonian(H, basis)
    a = basis.blocks["a"]
    bonds_a = chain_bonds(Hp, a)
    homogeneous = bool(np.max(np.abs(bonds_a - J_A), initial=0.0) <= EXACT_TOL)
    return DecouplingReport(
        theta=None if theta is None else float(theta),
        g=float(g),
        J_AB=float(J_AB),
        J_aM=float(J_aM),
        H_vn_coeff=float(J_A - J_aM),
        offblock_norm=offblock_norm(Hp, basis),
        chain_a_homogeneous=homogeneous,
        J_aM_measured=float(bonds_a[M - 1]) if M + N > 1 else float("nan"),
        chain_a_bonds=tuple(float(x) for x in bonds_a),
    )
