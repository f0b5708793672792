"""Acceptance suite.

Each test prints one line of the form ``[PASS] 3 ...`` or ``[FAIL] 3 ...``
straight to the terminal (bypassing capture) before asserting, so a plain
``pytest tests/test_acceptance.py`` run shows the scorecard.
"""

import math
import time

import numpy as np
import pytest

from oracles import open_chain_matrix, rk4_evolve
from spinbeam import (
    GaussianPacketSpec,
    build_chain,
    build_interferometer,
    build_star,
    build_ybeam,
    decoupling_report,
    default_time_grid,
    evolve,
    gaussian_packet,
    interference_intensity,
    leg_transmission,
    max_concurrence,
    packet_center,
    packet_variance,
    packet_width,
    predicted_center,
    reflection_factor,
    reflection_time,
    single_excitation_hamiltonian,
    spectral_decompose,
    star_collective_basis,
    transform_hamiltonian,
)
from spinbeam.experiments import parse_config, run
from spinbeam.observables import gauge_flip
from spinbeam.virtual import matching_holds

R2 = 1 / math.sqrt(2)
ALPHA = 0.3
PACKET = GaussianPacketSpec("A", 25.0, ALPHA, math.pi / 2)
W = packet_width(ALPHA)
T0 = reflection_time(50, 25.0, 50, 1.0)


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        assert ok, f"{label}: {detail}"

    return emit


def ybeam_setup(j_nb, j_nc, J_A=1.0, N=50):
    net = build_ybeam(50, N, N, J_A, J_A, J_A, j_nb, j_nc)
    return net, spectral_decompose(single_excitation_hamiltonian(net)), gaussian_packet(net, PACKET)


def interferometer_setup(delta, J=1.0):
    net = build_interferometer(50, 50, delta, 50, J, R2 * J)
    return net, single_excitation_hamiltonian(net), gaussian_packet(net, PACKET)


def test_criterion_1_decoupling_identity(report):
    rng = np.random.default_rng(20240601)
    start = time.perf_counter()
    bad = []
    for draw in range(200):
        J = rng.uniform(0.5, 1.5)
        phi = rng.uniform(0.05, math.pi / 2 - 0.05)
        if draw % 4 == 0:
            J_A, J_nB, J_nC = J, J * math.cos(phi), J * math.sin(phi)
        elif draw % 4 == 1:
            # near miss: the node norm is off by 1e-9
            J_A, J_nB, J_nC = J, (J + 1e-9) * math.cos(phi), (J + 1e-9) * math.sin(phi)
        else:
            J_A, J_nB, J_nC = rng.uniform(0.5, 1.5), rng.uniform(0.05, 1.5), rng.uniform(0.05, 1.5)
        M, N = int(rng.integers(2, 30)), int(rng.integers(2, 30))
        net = build_ybeam(M, N, N, J_A, J, J, J_nB, J_nC)
        theta = math.atan2(J_nC, J_nB)
        at = decoupling_report(net, theta)
        if at.offblock_norm > 1e-12:
            bad.append((draw, "offblock at atan2", at.offblock_norm))
        for shift in (1e-3, 0.3, math.pi / 2):
            off = decoupling_report(net, theta + shift)
            if off.offblock_norm <= 1e-12:
                bad.append((draw, f"offblock at theta+{shift}", off.offblock_norm))
        expected = matching_holds(J_A, J, J, J_nB, J_nC)
        if at.chain_a_homogeneous != expected or expected != (draw % 4 == 0):
            bad.append((draw, "homogeneity", at.chain_a_homogeneous))
    elapsed = time.perf_counter() - start
    report("1 decoupling identity", not bad and elapsed < 5,
           f"{len(bad)} violations over 200 draws, {elapsed:.2f} s (limit 5 s) {bad[:3]}")


def test_criterion_2_star_matching(report):
    start = time.perf_counter()
    worst = 0.0
    M, N, J = 12, 9, 1.0
    for m in (2, 3, 4, 5):
        net = build_star(m, M, N, J, J / math.sqrt(m))
        basis = star_collective_basis(m, M, N)
        Hp = transform_hamiltonian(single_excitation_hamiltonian(net), basis)
        expected = np.zeros_like(Hp)
        for idx in basis.blocks.values():
            chain = open_chain_matrix(len(idx), J)
            expected[np.ix_(idx, idx)] = chain
        assert [len(v) for v in basis.blocks.values()] == [M + N] + [N] * (m - 1)
        worst = max(worst, float(np.max(np.abs(Hp - expected))))
    elapsed = time.perf_counter() - start
    report("2 star matching", worst <= 1e-12 and elapsed < 5,
           f"max entrywise deviation {worst:.2e} (limit 1e-12), {elapsed:.2f} s")


def test_criterion_3_reflection_map(report):
    circle = []
    for theta in np.linspace(0, math.pi / 2, 7)[1:-1]:
        _, H, psi0 = ybeam_setup(math.cos(theta), math.sin(theta))
        circle.append(reflection_factor(H, psi0, T0, 50).R)
    off = {}
    for point in [(1.4, 1.4), (0.2, 0.2)]:
        _, H, psi0 = ybeam_setup(*point)
        off[point] = reflection_factor(H, psi0, T0, 50).R
    start = time.perf_counter()
    columns, rows = run(parse_config("reflect-sweep", {}), threads=4)
    elapsed = time.perf_counter() - start
    ok = max(circle) < 0.01 and min(off.values()) > 0.1 and len(rows) == 1681 and elapsed < 60
    report("3 reflection map", ok,
           f"max R on circle {max(circle):.2e} (<0.01), R(1.4,1.4)={off[(1.4, 1.4)]:.3f}, "
           f"R(0.2,0.2)={off[(0.2, 0.2)]:.3f} (>0.1), 41x41 sweep {elapsed:.1f} s (<60 s)")


def test_criterion_4_concurrence_map(report):
    start = time.perf_counter()
    axis = {"start": 0, "stop": 1.5, "num": 21}
    cfg = parse_config("concurrence-sweep", {"observable": {"j_nb": axis, "j_nc": axis}})
    columns, rows = run(cfg, threads=4)
    elapsed = time.perf_counter() - start
    grid = np.linspace(0, 1.5, 21)
    C = np.array([r[2] for r in rows]).reshape(21, 21)
    i, j = np.unravel_index(np.argmax(C), C.shape)
    target = int(np.argmin(np.abs(grid - R2)))
    diag = np.diag(C)
    rises = np.diff(diag) > 0
    peak = int(np.argmax(diag))
    unimodal = bool(np.all(rises[:peak]) and not np.any(rises[peak:]))
    ok = (i, j) == (target, target) and unimodal and elapsed < 300
    report("4 concurrence map", ok,
           f"argmax at ({grid[i]:.3f}, {grid[j]:.3f}), nearest grid point to matching is "
           f"({grid[target]:.3f}, {grid[target]:.3f}), C_max={C[i, j]:.4f}, diagonal unimodal={unimodal}, "
           f"{elapsed:.1f} s (<300 s)")


def test_criterion_5_split_ratio(report):
    net, H, psi0 = ybeam_setup(0.6, 0.8)
    tB = leg_transmission(H, psi0, T0, net, "B")
    tC = leg_transmission(H, psi0, T0, net, "C")
    eB, eC = abs(tB / 0.36 - 1), abs(tC / 0.64 - 1)
    report("5 split ratio", eB < 0.05 and eC < 0.05,
           f"T_B={tB:.4f} vs 0.36 ({eB:.2%}), T_C={tC:.4f} vs 0.64 ({eC:.2%}), limit 5%")


def test_criterion_6a_center_tracking(report):
    # window: predicted center at least three envelope widths clear of both ends of B
    net, H, psi0 = ybeam_setup(R2, R2)
    sigma = 1 / (ALPHA * math.sqrt(2))
    worst, worst_t = 0.0, None
    for t in np.arange(0.0, 60.0, 0.5):
        pred = predicted_center(25.0, 1.0, t, 50)
        if not 1 + 3 * sigma <= pred <= 50 - 3 * sigma:
            continue
        err = abs(packet_center(evolve(H, psi0, t), net, "B") - pred)
        if err > worst:
            worst, worst_t = err, t
    report("6a ballistic center", worst <= 0.5,
           f"max |center - (N0 + 2tJ - M)| = {worst:.3f} sites at t={worst_t} (limit 0.5)")


def test_criterion_6b_variance_growth(report):
    # 100 sites of travel at group velocity 2J takes t = 50; a long output leg keeps the packet in view
    net, H, psi0 = ybeam_setup(R2, R2, N=150)
    v0 = packet_variance(psi0, net, "A")
    v1 = packet_variance(evolve(H, psi0, 50.0), net, "B")
    growth = v1 / v0 - 1
    report("6b variance growth", growth < 0.05,
           f"variance {v0:.3f} -> {v1:.3f} over 100 sites, growth {growth:.1%} (limit 5%)")


@pytest.fixture(scope="module")
def interference_scan():
    out = {}
    for d in range(-25, 26):
        net, H, psi0 = interferometer_setup(d)
        out[d] = interference_intensity(H, psi0, net.index("D", 50), 100.0).intensity
    return out


def test_criterion_7a_principal_maximum(report, interference_scan):
    best = max(interference_scan, key=interference_scan.get)
    report("7a interference maximum", best == 0,
           f"argmax over delta in [-25, 25] is {best} with I={interference_scan[best]:.3e}; I(0)={interference_scan[0]:.3e}")


def test_criterion_7b_even_in_delta(report, interference_scan):
    worst = max(abs(interference_scan[d] - interference_scan[-d]) for d in range(1, 26))
    report("7b interference evenness", worst <= 1e-10, f"max |I(d) - I(-d)| = {worst:.3e} (limit 1e-10)")


def test_criterion_7c_period_four(report, interference_scan):
    maxima = [d for d in range(-24, 25) if interference_scan[d] > interference_scan[d - 1] and interference_scan[d] > interference_scan[d + 1]]
    ok = bool(maxima) and all(abs(d) % 4 == 0 for d in maxima) and any(d != 0 for d in maxima)
    report("7c period-4 maxima", ok, f"interior local maxima at {maxima}")


def test_criterion_7d_lossless_transmission(report):
    net, H, psi0 = interferometer_setup(0)
    t_arrive = (50 - 25.0 + 50 + 50 / 2) / 2.0
    T = leg_transmission(H, psi0, t_arrive, net, "D")
    report("7d transmission into D", T > 0.98, f"T_D={T:.5f} at t={t_arrive} (limit > 0.98)")


def test_criterion_8_numerical_hygiene(report):
    net, H, psi0 = ybeam_setup(0.6, 0.8)
    drift = max(abs(np.linalg.norm(evolve(H, psi0, t)) - 1) for t in (0.0, 1.0, 37.5, 500.0, 1e4))
    Hd = single_excitation_hamiltonian(net)
    recon = float(np.max(np.abs(H.reconstruct() - Hd)))
    oracle = 0.0
    small = [build_chain(20, 1.0), build_ybeam(6, 7, 7, 1.0, 0.8, 1.2, 0.5, 0.9),
             build_star(3, 5, 5, 1.0, 0.4), build_interferometer(5, 4, 1, 5, 1.0, 0.7)]
    for s in small:
        Hs = single_excitation_hamiltonian(s)
        rng = np.random.default_rng(s.site_count)
        psi = rng.normal(size=s.site_count) + 1j * rng.normal(size=s.site_count)
        psi /= np.linalg.norm(psi)
        for t in (0.7, 4.0):
            oracle = max(oracle, float(np.max(np.abs(evolve(Hs, psi, t) - rk4_evolve(Hs, psi, t)))))
    ok = drift <= 1e-10 and recon <= 1e-10 and oracle <= 1e-6
    report("8 numerical hygiene", ok,
           f"unitarity drift {drift:.2e}, reconstruction {recon:.2e} (limits 1e-10), "
           f"integrator agreement {oracle:.2e} (limit 1e-6)")


def test_criterion_9_gauge(report):
    net, eig, psi0 = ybeam_setup(0.6, 0.8)
    H = eig.reconstruct()
    Hf = gauge_flip(H, [(net.index("A", 50), net.index("B", 1))])
    dR = abs(reflection_factor(H, psi0, T0, 50).R - reflection_factor(Hf, psi0, T0, 50).R)
    dT = max(abs(leg_transmission(H, psi0, T0, net, leg) - leg_transmission(Hf, psi0, T0, net, leg))
             for leg in ("B", "C"))
    grid = default_time_grid(50, 25.0, 50, ALPHA, 1.0)
    dC = abs(max_concurrence(H, psi0, net, grid, W).C_max - max_concurrence(Hf, psi0, net, grid, W).C_max)
    # in the interferometer the loop makes a lone bond flip a flux insertion; the gauge
    # move is to flip both bonds of the splitting node
    inet, Hi, pi0 = interferometer_setup(3)
    a = inet.index("A", 50)
    Hif = gauge_flip(Hi, [(a, inet.index("B", 1)), (a, inet.index("C", 1))])
    probes = [(inet.index("D", 25), 50.0), (inet.index("D", 50), 62.5), (inet.index("D", 50), 100.0)]
    dI = max(abs(interference_intensity(Hi, pi0, r, t).intensity - interference_intensity(Hif, pi0, r, t).intensity)
             for r, t in probes)
    worst = max(dR, dT, dC, dI)
    report("9 gauge invariance", worst <= 1e-10,
           f"|dR|={dR:.1e}, |dT|={dT:.1e}, |dC_max|={dC:.1e}, |dI|={dI:.1e} (limit 1e-10)")
