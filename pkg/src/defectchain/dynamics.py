"""Exact spectral decomposition and unitary time evolution.

Sector dimensions here are desk scale (tens), so evolution goes through a
full symmetric eigendecomposition: psi(t) = V exp(-i L t) V^T psi(0).
That is exact at arbitrary t with no step-size error, which matters
because defect-mediated oscillation periods grow geometrically with the
defect separation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import Config, SectorBasis, _as_config
from .entanglement import TargetState
from .hamiltonian import ChainSpec, SectorHamiltonian, build_sector_hamiltonian

RESIDUAL_TOL = 1e-10
NORM_TOL = 1e-10


class NumericalError(RuntimeError):
    """Eigensolver or evolution output violated its accuracy contract."""


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues and orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    source_dimension: int


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitudes over a sector basis."""

    amplitudes: np.ndarray
    basis: SectorBasis

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amp)
        if amp.shape != (self.basis.dimension,):
            raise ValueError(
                f"amplitude vector has shape {amp.shape}, "
                f"basis dimension is {self.basis.dimension}"
            )
        norm = np.linalg.norm(amp)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm} deviates from 1 beyond {NORM_TOL}")

    @classmethod
    def from_config(cls, basis: SectorBasis, config) -> "StateVector":
        amp = np.zeros(basis.dimension, dtype=complex)
        amp[basis.index_of(config)] = 1.0
        return cls(amp, basis)

    @classmethod
    def from_components(cls, basis, configs, amplitudes) -> "StateVector":
        amp = np.zeros(basis.dimension, dtype=complex)
        for config, a in zip(configs, amplitudes, strict=True):
            amp[basis.index_of(config)] = a
        return cls(amp / np.linalg.norm(amp), basis)

    def probability(self, config) -> float:
        return float(np.abs(self.amplitudes[self.basis.index_of(config)]) ** 2)


@dataclass(frozen=True)
class QuenchSchedule:
    """Piecewise-constant sequence of (chain, duration) segments.

    All segments must share geometry and couplings and differ only in
    defect offsets.  The final duration may be ``inf``; sample times past
    the schedule's end evolve under the last segment.
    """

    segments: tuple[tuple[ChainSpec, float], ...]

    def __post_init__(self):
        if not self.segments:
            raise ValueError("schedule needs at least one segment")
        first = self.segments[0][0]
        for chain, duration in self.segments:
            if duration < 0:
                raise ValueError(f"negative segment duration {duration}")
            same = (
                chain.n_sites == first.n_sites
                and chain.coupling == first.coupling
                and chain.anisotropy == first.anisotropy
                and chain.base_spacing == first.base_spacing
            )
            if not same:
                raise ValueError(
                    "schedule segments must differ only in defect offsets"
                )

    @classmethod
    def detune_at(
        cls, chain: ChainSpec, quench_time: float, sites, detuning: float
    ) -> "QuenchSchedule":
        """Run ``chain`` until ``quench_time``, then shift the level
        spacing of ``sites`` by ``detuning`` for all later times."""
        detuned = chain.with_detuned(sites, detuning)
        return cls(((chain, float(quench_time)), (detuned, np.inf)))


@dataclass(frozen=True)
class TimeTrace:
    """Sampled record of exact dynamics."""

    times: np.ndarray
    probabilities: np.ndarray        # shape (n_times, n_tracked)
    probability_labels: tuple[str, ...]
    fidelities: np.ndarray           # shape (n_times, n_targets)
    fidelity_labels: tuple[str, ...]


def config_label(config: Config) -> str:
    return "-".join(str(s) for s in config)


def decompose(h, residual_tol: float = RESIDUAL_TOL) -> SpectralDecomposition:
    """Eigendecompose a symmetric sector matrix.

    Accepts a :class:`SectorHamiltonian` or a plain symmetric ndarray.
    The output is contract-checked: eigenvector residuals and
    orthonormality must hold to ``residual_tol`` relative to the matrix
    scale, otherwise :class:`NumericalError` is raised.
    """
    matrix = h.matrix if isinstance(h, SectorHamiltonian) else np.asarray(h, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("matrix contains non-finite entries")
    if not np.array_equal(matrix, matrix.T):
        raise ValueError("matrix is not exactly symmetric")

    eigenvalues, eigenvectors = np.linalg.eigh(matrix)

    scale = max(1.0, float(np.linalg.norm(matrix, np.inf)))
    residual = float(
        np.max(np.abs(matrix @ eigenvectors - eigenvectors * eigenvalues))
    )
    gram_error = float(
        np.max(np.abs(eigenvectors.T @ eigenvectors - np.eye(len(eigenvalues))))
    )
    if residual > residual_tol * scale or gram_error > residual_tol:
        raise NumericalError(
            f"eigendecomposition failed its contract: residual {residual:.3e} "
            f"(scale {scale:.3e}), orthonormality error {gram_error:.3e}"
        )
    return SpectralDecomposition(
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
        source_dimension=len(eigenvalues),
    )


def amplitudes_at(
    decomp: SpectralDecomposition, psi0: StateVector, times
) -> np.ndarray:
    """Amplitude matrix of shape (dimension, n_times) for a batch of times."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if decomp.source_dimension != psi0.basis.dimension:
        raise ValueError(
            f"decomposition dimension {decomp.source_dimension} does not match "
            f"state dimension {psi0.basis.dimension}"
        )
    modes = decomp.eigenvectors.T @ psi0.amplitudes
    phases = np.exp(-1j * np.outer(decomp.eigenvalues, times))
    return decomp.eigenvectors @ (phases * modes[:, None])


def evolve(decomp: SpectralDecomposition, psi0: StateVector, t: float) -> StateVector:
    """psi(t) = V exp(-i L t) V^T psi(0); norm preserved to 1e-10."""
    if t == 0.0:
        if decomp.source_dimension != psi0.basis.dimension:
            raise ValueError("decomposition dimension does not match the state")
        return psi0
    amp = amplitudes_at(decomp, psi0, [float(t)])[:, 0]
    return StateVector(amp, psi0.basis)


def probability_trace(
    decomp: SpectralDecomposition,
    psi0: StateVector,
    tracked_configs,
    sample_times,
    targets: tuple[TargetState, ...] = (),
    phase_maximized: bool = True,
    check_closure: bool = False,
) -> TimeTrace:
    """Track |<config|psi(t)>|^2 and target fidelities over sample times."""
    times = np.asarray(sample_times, dtype=float)
    _check_times(times)
    tracked = [_as_config(c) for c in tracked_configs]
    rows = [psi0.basis.index_of(c) for c in tracked]

    amps = amplitudes_at(decomp, psi0, times)
    if check_closure:
        total = np.sum(np.abs(amps) ** 2, axis=0)
        worst = float(np.max(np.abs(total - 1.0)))
        if worst > 1e-9:
            raise NumericalError(f"probability closure violated by {worst:.3e}")
    return _assemble_trace(psi0.basis, times, amps, tracked, rows, targets, phase_maximized)


def schedule_amplitudes(
    schedule: QuenchSchedule, psi0: StateVector, sample_times
) -> np.ndarray:
    """Amplitude matrix (dimension x n_times) through a schedule.

    The state is continuous across segment boundaries; each sample time is
    resolved inside the segment it falls in (boundary samples resolve in
    the earlier segment, which is equivalent by continuity).
    """
    times = np.asarray(sample_times, dtype=float)
    _check_times(times)
    basis = psi0.basis

    decomps = []
    cache: dict[int, SpectralDecomposition] = {}
    for chain, _ in schedule.segments:
        key = id(chain)
        if key not in cache:
            cache[key] = decompose(build_sector_hamiltonian(chain, basis))
        decomps.append(cache[key])

    amps = np.empty((basis.dimension, len(times)), dtype=complex)
    state = psi0
    segment_start = 0.0
    cursor = 0
    n_segments = len(schedule.segments)
    for seg_index, (chain, duration) in enumerate(schedule.segments):
        segment_end = segment_start + duration
        last = seg_index == n_segments - 1
        decomp = decomps[seg_index]

        if last:
            selected = slice(cursor, len(times))
        else:
            stop = cursor
            while stop < len(times) and times[stop] <= segment_end:
                stop += 1
            selected = slice(cursor, stop)
        local = times[selected] - segment_start
        if local.size:
            amps[:, selected] = amplitudes_at(decomp, state, local)
            cursor = selected.stop
        if not last and np.isfinite(duration):
            state = evolve(decomp, state, duration)
            segment_start = segment_end
    return amps


def evolve_schedule(
    schedule: QuenchSchedule,
    psi0: StateVector,
    sample_times,
    tracked_configs=(),
    targets: tuple[TargetState, ...] = (),
    phase_maximized: bool = True,
) -> TimeTrace:
    """Evolve through a piecewise-constant schedule and record a trace.

    Each segment's Hamiltonian carries its own ground-energy shift; the
    shifts differ between segments only by a multiple of the identity and
    therefore only by a global phase.
    """
    times = np.asarray(sample_times, dtype=float)
    tracked = [_as_config(c) for c in tracked_configs]
    rows = [psi0.basis.index_of(c) for c in tracked]
    amps = schedule_amplitudes(schedule, psi0, times)
    return _assemble_trace(psi0.basis, times, amps, tracked, rows, targets, phase_maximized)


def _check_times(times: np.ndarray) -> None:
    if times.ndim != 1 or times.size == 0:
        raise ValueError("sample_times must be a nonempty 1-D array")
    if np.any(times < 0):
        raise ValueError("sample times must be nonnegative")
    if np.any(np.diff(times) < 0):
        raise ValueError("sample times must be ascending")


def _assemble_trace(
    basis, times, amps, tracked, rows, targets, phase_maximized
) -> TimeTrace:
    probabilities = np.abs(amps[rows, :].T) ** 2 if rows else np.zeros((len(times), 0))
    fidelities = np.zeros((len(times), len(targets)))
    for j, target in enumerate(targets):
        target_rows = [basis.index_of(c) for c in target.components]
        block = amps[target_rows, :]
        if phase_maximized:
            fidelities[:, j] = (
                np.sum(np.abs(block), axis=0) ** 2 / len(target_rows)
            )
        else:
            overlap = np.conj(target.amplitudes) @ block
            fidelities[:, j] = np.abs(overlap) ** 2
    return TimeTrace(
        times=times,
        probabilities=probabilities,
        probability_labels=tuple("p_" + config_label(c) for c in tracked),
        fidelities=fidelities,
        fidelity_labels=tuple("fidelity_" + t.kind for t in targets),
    )
