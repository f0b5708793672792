"""Leg/node topologies for star-shaped spin networks.

A network is a set of open XY chains ("legs") whose end sites are joined at
nodes.  A node is not a site of its own: it is the set of bonds that attaches
an anchor site (normally the last site of the input leg) to one end of each
attached leg.

Global site ids are assigned leg by leg in declaration order, with the sites of
a leg stored consecutively in order j = 1..N.  The input leg ``A`` is always
declared first, so its interior (A,1)..(A,M-1) is the index prefix 0..M-2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Literal

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

End = Literal["first", "last"]


class NetworkError(ValueError):
    """Raised for invalid builder arguments or malformed networks."""


@dataclass(frozen=True)
class LegSpec:
    leg_id: str
    length: int
    coupling: float


@dataclass(frozen=True)
class Bond:
    leg_id: str
    end: End
    coupling: float


@dataclass(frozen=True)
class NodeSpec:
    node_id: str
    anchor: tuple[str, int]
    bonds: tuple[Bond, ...]


@dataclass(frozen=True)
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    connected: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class SpinNetwork:
    legs: tuple[LegSpec, ...]
    nodes: tuple[NodeSpec, ...] = ()
    topology: str = "custom"

    @cached_property
    def offsets(self) -> dict[str, int]:
        out, pos = {}, 0
        for leg in self.legs:
            out[leg.leg_id] = pos
            pos += max(leg.length, 0)
        return out

    @property
    def site_count(self) -> int:
        return sum(max(leg.length, 0) for leg in self.legs)

    @property
    def leg_ids(self) -> list[str]:
        return [leg.leg_id for leg in self.legs]

    def leg(self, leg_id: str) -> LegSpec:
        for leg in self.legs:
            if leg.leg_id == leg_id:
                return leg
        raise NetworkError(f"unknown leg {leg_id!r}")

    def index(self, leg_id: str, j: int) -> int:
        """Global site id of site ``j`` (1-based) on ``leg_id``."""
        leg = self.leg(leg_id)
        if not 1 <= j <= leg.length:
            raise NetworkError(f"site {j} outside leg {leg_id!r} of length {leg.length}")
        return self.offsets[leg_id] + j - 1

    def site(self, i: int) -> tuple[str, int]:
        """Inverse of :meth:`index`."""
        if not 0 <= i < self.site_count:
            raise NetworkError(f"site id {i} outside [0, {self.site_count})")
        for leg in self.legs:
            start = self.offsets[leg.leg_id]
            if start <= i < start + leg.length:
                return leg.leg_id, i - start + 1
        raise AssertionError("unreachable")

    def leg_sites(self, leg_id: str) -> np.ndarray:
        length = self.leg(leg_id).length
        start = self.offsets[leg_id]
        return np.arange(start, start + length)

    def end_site(self, leg_id: str, end: End) -> int:
        leg = self.leg(leg_id)
        return self.index(leg_id, 1 if end == "first" else leg.length)

    def site_labels(self) -> list[str]:
        return [f"{leg.leg_id}{j}" for leg in self.legs for j in range(1, leg.length + 1)]

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """All bonds as (i, j, coupling), intra-leg first, then node bonds.

        Zero-coupling node bonds are included; they still count as edges of
        the topology even though they carry no hopping.
        """
        for leg in self.legs:
            start = self.offsets[leg.leg_id]
            for j in range(leg.length - 1):
                yield start + j, start + j + 1, float(leg.coupling)
        for node in self.nodes:
            a = self.index(*node.anchor)
            for bond in node.bonds:
                yield a, self.end_site(bond.leg_id, bond.end), float(bond.coupling)


def validate(network: SpinNetwork) -> ValidationReport:
    violations = []
    ids = network.leg_ids
    if len(set(ids)) != len(ids):
        violations.append("leg ids must be unique")
    for leg in network.legs:
        if leg.length < 1:
            violations.append(f"leg {leg.leg_id!r}: leg length must be ≥ 1")
        if not leg.coupling > 0:
            violations.append(f"leg {leg.leg_id!r}: coupling must be > 0")
    if violations:
        return ValidationReport(violations, connected=False)

    used_ends: dict[tuple[str, str], str] = {}

    def claim(leg_id: str, end: str, node_id: str) -> None:
        key = (leg_id, end)
        if key in used_ends and used_ends[key] != node_id:
            violations.append(f"{end} end of leg {leg_id!r} joins both node {used_ends[key]!r} and {node_id!r}")
        used_ends[key] = node_id

    for node in network.nodes:
        leg_id, j = node.anchor
        if leg_id not in ids:
            violations.append(f"node {node.node_id!r}: anchor references unknown leg {leg_id!r}")
            continue
        length = network.leg(leg_id).length
        if j not in (1, length):
            violations.append(f"node {node.node_id!r}: anchor {leg_id}{j} is not a leg end")
        else:
            claim(leg_id, "last" if j == length else "first", node.node_id)
        for bond in node.bonds:
            if bond.leg_id not in ids:
                violations.append(f"node {node.node_id!r}: bond references unknown leg {bond.leg_id!r}")
                continue
            if bond.end not in ("first", "last"):
                violations.append(f"node {node.node_id!r}: bond end must be 'first' or 'last'")
                continue
            if bond.coupling < 0 or not math.isfinite(bond.coupling):
                violations.append(f"node {node.node_id!r}: node coupling must be ≥ 0")
            claim(bond.leg_id, bond.end, node.node_id)
    if violations:
        return ValidationReport(violations, connected=False)
    return ValidationReport([], connected=is_connected(network))


def is_connected(network: SpinNetwork) -> bool:
    n = network.site_count
    if n <= 1:
        return True
    rows, cols = [], []
    for i, j, w in network.edges():
        if w != 0:
            rows.append(i)
            cols.append(j)
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    ncomp, _ = connected_components(graph, directed=False)
    return ncomp == 1


def _require_positive_int(**kwargs: int) -> None:
    for name, value in kwargs.items():
        if int(value) != value or value < 1:
            raise NetworkError(f"{name} must be a positive integer, got {value!r}")


def _require_positive(**kwargs: float) -> None:
    for name, value in kwargs.items():
        if not (math.isfinite(value) and value > 0):
            raise NetworkError(f"{name} must be > 0, got {value!r}")


def _require_nonnegative(**kwargs: float) -> None:
    for name, value in kwargs.items():
        if not (math.isfinite(value) and value >= 0):
            raise NetworkError(f"{name} must be ≥ 0, got {value!r}")


def build_chain(n: int, J: float = 1.0) -> SpinNetwork:
    """A single uniform open chain, labelled as input leg ``A``."""
    _require_positive_int(n=n)
    _require_positive(J=J)
    return SpinNetwork((LegSpec("A", int(n), float(J)),), (), topology="chain")


def build_star(m: int, M: int, N: int, J: float, J_n: float) -> SpinNetwork:
    """Input leg A (length M) joined at its last site to m identical output legs.

    Output legs are labelled B1..Bm and all attach by their first site with
    the same node coupling ``J_n``.
    """
    _require_positive_int(m=m, M=M, N=N)
    _require_positive(J=J)
    _require_nonnegative(J_n=J_n)
    outs = tuple(LegSpec(f"B{p}", int(N), float(J)) for p in range(1, m + 1))
    node = NodeSpec("O", ("A", int(M)), tuple(Bond(leg.leg_id, "first", float(J_n)) for leg in outs))
    return SpinNetwork((LegSpec("A", int(M), float(J)),) + outs, (node,), topology="star")


def build_ybeam(
    M: int,
    N_B: int,
    N_C: int,
    J_A: float,
    J_B: float,
    J_C: float,
    J_nB: float,
    J_nC: float,
) -> SpinNetwork:
    _require_positive_int(M=M, N_B=N_B, N_C=N_C)
    _require_positive(J_A=J_A, J_B=J_B, J_C=J_C)
    _require_nonnegative(J_nB=J_nB, J_nC=J_nC)
    legs = (
        LegSpec("A", int(M), float(J_A)),
        LegSpec("B", int(N_B), float(J_B)),
        LegSpec("C", int(N_C), float(J_C)),
    )
    node = NodeSpec("O", ("A", int(M)), (Bond("B", "first", float(J_nB)), Bond("C", "first", float(J_nC))))
    return SpinNetwork(legs, (node,), topology="ybeam")


def build_interferometer(
    N_A: int, N_B: int, delta: int, N_D: int, J: float, J_node: float
) -> SpinNetwork:
    """Two Y-beams back to back: A splits into B and C, which recombine into D.

    Leg C has ``N_B + delta`` sites, so ``delta`` is the path difference.
    """
    _require_positive_int(N_A=N_A, N_B=N_B, N_D=N_D)
    if int(delta) != delta:
        raise NetworkError(f"delta must be an integer, got {delta!r}")
    if N_B + delta < 1:
        raise NetworkError(f"delta={delta} leaves leg C with {N_B + delta} sites; need delta > -N_B")
    _require_positive(J=J)
    _require_nonnegative(J_node=J_node)
    N_C = int(N_B + delta)
    legs = (
        LegSpec("A", int(N_A), float(J)),
        LegSpec("B", int(N_B), float(J)),
        LegSpec("C", N_C, float(J)),
        LegSpec("D", int(N_D), float(J)),
    )
    split = NodeSpec("O1", ("A", int(N_A)), (Bond("B", "first", float(J_node)), Bond("C", "first", float(J_node))))
    merge = NodeSpec("O2", ("D", 1), (Bond("B", "last", float(J_node)), Bond("C", "last", float(J_node))))
    return SpinNetwork(legs, (split, merge), topology="interferometer")
