"""Single-excitation hopping matrix of a spin network and its eigensystem.

In the one-magnon sector the XY network is exactly a particle hopping on the
bond graph, so the Hamiltonian is the weighted adjacency matrix.  All bond
weights are stored positive; on a bipartite graph the sign of a tree bond is a
gauge choice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .network import NetworkError, SpinNetwork, validate


@dataclass(frozen=True)
class EigenSystem:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.T


def single_excitation_hamiltonian(network: SpinNetwork) -> np.ndarray:
    report = validate(network)
    if not report.ok:
        raise NetworkError("invalid network: " + "; ".join(report.violations))
    n = network.site_count
    H = np.zeros((n, n))
    for i, j, w in network.edges():
        H[i, j] = H[j, i] = w
    return H


def is_symmetric(H: np.ndarray, atol: float = 0.0) -> bool:
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        return False
    if atol == 0.0:
        return bool(np.array_equal(H, H.T))
    return bool(np.max(np.abs(H - H.T), initial=0.0) <= atol)


def spectral_decompose(H: np.ndarray) -> EigenSystem:
    """Full eigendecomposition of a real symmetric matrix, eigenvalues ascending."""
    H = np.asarray(H, dtype=float)
    scale = np.max(np.abs(H), initial=0.0)
    if not is_symmetric(H, atol=1e-12 * max(scale, 1.0)):
        raise ValueError("Hamiltonian must be a square symmetric matrix")
    w, V = np.linalg.eigh(H)
    return EigenSystem(w, V)


def dump_triplets(H: np.ndarray, path, nonzero_only: bool = True) -> None:
    """Write ``row,col,value`` triplets, one per line, with a header."""
    H = np.asarray(H)
    rows, cols = np.nonzero(H) if nonzero_only else np.indices(H.shape).reshape(2, -1)
    with open(path, "w", newline="") as fh:
        fh.write("row,col,value\n")
        for r, c in zip(rows, cols):
            fh.write(f"{r},{c},{float(H[r, c])!r}\n")
