"""Exact-diagonalization toolkit for defect-engineered entanglement in
anisotropic spin chains: sector bases, chain Hamiltonians, exact unitary
dynamics, closed-form effective models, and entanglement diagnostics."""

from .basis import SectorBasis, enumerate_sector
from .dynamics import (
    NumericalError,
    QuenchSchedule,
    SpectralDecomposition,
    StateVector,
    TimeTrace,
    amplitudes_at,
    decompose,
    evolve,
    evolve_schedule,
    probability_trace,
)
from .effective import (
    EffectivePrediction,
    bound_pair_single_defect,
    first_order_epr,
    one_excitation_pair,
    two_level_probabilities,
    w_effective_matrix,
    w_four_defects,
    w_level_energies,
    w_probabilities,
)
from .entanglement import (
    ReducedDensityMatrix,
    TargetState,
    concurrence,
    epr_target,
    fidelity_to_target,
    reduced_density_matrix,
    w_target,
)
from .hamiltonian import (
    ChainSpec,
    SectorHamiltonian,
    build_full_hamiltonian,
    build_sector_hamiltonian,
    full_space_crosscheck,
    ground_energy,
)

__version__ = "0.1.0"

__all__ = [
    "ChainSpec",
    "EffectivePrediction",
    "NumericalError",
    "QuenchSchedule",
    "ReducedDensityMatrix",
    "SectorBasis",
    "SectorHamiltonian",
    "SpectralDecomposition",
    "StateVector",
    "TargetState",
    "TimeTrace",
    "amplitudes_at",
    "bound_pair_single_defect",
    "build_full_hamiltonian",
    "build_sector_hamiltonian",
    "concurrence",
    "decompose",
    "enumerate_sector",
    "epr_target",
    "evolve",
    "evolve_schedule",
    "fidelity_to_target",
    "first_order_epr",
    "full_space_crosscheck",
    "ground_energy",
    "one_excitation_pair",
    "probability_trace",
    "reduced_density_matrix",
    "two_level_probabilities",
    "w_effective_matrix",
    "w_four_defects",
    "w_level_energies",
    "w_probabilities",
    "w_target",
]
