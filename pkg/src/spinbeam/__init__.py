"""Single-magnon beam splitting, entanglement and interference on star-shaped spin networks."""

from .evolution import energy, evolve, evolve_series, occupation
from .hamiltonian import EigenSystem, single_excitation_hamiltonian, spectral_decompose
from .network import (
    Bond,
    LegSpec,
    NetworkError,
    NodeSpec,
    SpinNetwork,
    ValidationReport,
    build_chain,
    build_interferometer,
    build_star,
    build_ybeam,
    validate,
)
from .observables import (
    ConcurrenceResult,
    InterferenceResult,
    ReflectionResult,
    concurrence,
    default_time_grid,
    interference_intensity,
    leg_transmission,
    max_concurrence,
    reflection_factor,
    reflection_time,
)
from .virtual import (
    CollectiveBasis,
    DecouplingReport,
    decoupling_report,
    mixing_angle,
    star_collective_basis,
    transform_hamiltonian,
    ybeam_collective_basis,
)
from .wavepacket import (
    GaussianPacketSpec,
    gaussian_packet,
    packet_center,
    packet_variance,
    packet_width,
    predicted_center,
)

__version__ = "0.1.0"
