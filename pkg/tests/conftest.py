import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from spinbeam import GaussianPacketSpec, build_ybeam, gaussian_packet, single_excitation_hamiltonian  # noqa: E402

MATCHED = 1 / math.sqrt(2)


@pytest.fixture(scope="session")
def matched_ybeam():
    return build_ybeam(50, 50, 50, 1.0, 1.0, 1.0, MATCHED, MATCHED)


@pytest.fixture(scope="session")
def fig_packet():
    return GaussianPacketSpec("A", 25.0, 0.3, math.pi / 2)


@pytest.fixture(scope="session")
def matched_setup(matched_ybeam, fig_packet):
    H = single_excitation_hamiltonian(matched_ybeam)
    return matched_ybeam, H, gaussian_packet(matched_ybeam, fig_packet)
