"""Entanglement diagnostics: reduced density matrices, Wootters
concurrence, and fidelity to EPR/W reference states.

Reduced matrices are computed combinatorially inside the excitation
sector: two configurations contribute to the same matrix element exactly
when they agree on every site outside the selected subset.  Qubit basis
ordering is (up, down), i.e. index 0 of each qubit is the excited state.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .basis import Config, _as_config

log = logging.getLogger(__name__)

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-12
MAX_REDUCED_QUBITS = 4

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_YY = np.kron(_SIGMA_Y, _SIGMA_Y)


@dataclass(frozen=True)
class TargetState:
    """Reference entangled state given by configs and equal-modulus
    amplitudes (1/sqrt(2) for EPR, 1/sqrt(3) for W)."""

    kind: str
    components: tuple[Config, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amp)
        if len(set(self.components)) != len(self.components):
            raise ValueError("target components must be distinct")
        if len(self.components) != amp.size:
            raise ValueError("one amplitude per component required")
        if abs(np.linalg.norm(amp) - 1.0) > 1e-12:
            raise ValueError("target amplitudes must be normalized")


def epr_target(config_a, config_b, sign: int = +1) -> TargetState:
    """(1/sqrt 2)[phi_a + sign * phi_b]."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    kind = "epr-plus" if sign > 0 else "epr-minus"
    components = (_as_config(config_a), _as_config(config_b))
    return TargetState(kind, components, np.array([1.0, float(sign)]) / np.sqrt(2))


def w_target(config_a, config_b, config_c) -> TargetState:
    """(1/sqrt 3)[phi_a + phi_b + phi_c]."""
    components = tuple(_as_config(c) for c in (config_a, config_b, config_c))
    return TargetState("w", components, np.full(3, 1.0) / np.sqrt(3))


@dataclass(frozen=True)
class ReducedDensityMatrix:
    """Hermitian, trace-one state of a small ordered subset of sites."""

    sites: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", matrix)
        dim = 2 ** len(self.sites)
        if matrix.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix for {len(self.sites)} qubits")
        herm = float(np.max(np.abs(matrix - matrix.conj().T)))
        if herm > HERMITICITY_TOL:
            raise ValueError(f"matrix is not Hermitian (deviation {herm:.3e})")
        trace_err = abs(matrix.trace() - 1.0)
        if trace_err > TRACE_TOL:
            raise ValueError(f"trace deviates from 1 by {trace_err:.3e}")
        smallest = float(np.min(np.linalg.eigvalsh(matrix)))
        if smallest < EIGENVALUE_FLOOR:
            raise ValueError(f"negative eigenvalue {smallest:.3e} below floor")
        if smallest < 0:
            log.debug(
                "clipping reduced-matrix eigenvalue %.3e at zero for sites %s",
                smallest,
                self.sites,
            )


def reduced_density_matrix(psi, sites) -> ReducedDensityMatrix:
    """Partial trace of |psi><psi| onto ``sites``.

    Parameters
    ----------
    psi : StateVector
        Sector state to reduce.
    sites : sequence of int
        1 to 4 distinct 1-based sites; the qubit order of the output
        follows the order given here.

    Notes
    -----
    Amplitudes are grouped by their configuration restricted to the
    complement of ``sites``; each group contributes an outer product to
    one block of the reduced matrix.
    """
    sites = tuple(int(s) for s in sites)
    if not 1 <= len(sites) <= MAX_REDUCED_QUBITS:
        raise ValueError(f"subset size must be 1..{MAX_REDUCED_QUBITS}, got {len(sites)}")
    if len(set(sites)) != len(sites):
        raise ValueError("sites must be distinct")
    basis = psi.basis
    for s in sites:
        if not 1 <= s <= basis.n_sites:
            raise ValueError(f"site {s} outside 1..{basis.n_sites}")

    site_set = frozenset(sites)
    m = len(sites)
    groups: dict[Config, list[tuple[int, complex]]] = {}
    for amplitude, config in zip(psi.amplitudes, basis.configs):
        if amplitude == 0:
            continue
        # qubit bit 0 = up(excited), so occupied subset sites clear the bit
        pattern = 0
        for position, s in enumerate(sites):
            if s not in config:
                pattern |= 1 << (m - 1 - position)
        rest = tuple(s for s in config if s not in site_set)
        groups.setdefault(rest, []).append((pattern, amplitude))

    rho = np.zeros((2 ** m, 2 ** m), dtype=complex)
    for entries in groups.values():
        idx = np.array([p for p, _ in entries])
        amp = np.array([a for _, a in entries])
        rho[np.ix_(idx, idx)] += np.outer(amp, amp.conj())
    return ReducedDensityMatrix(sites=sites, matrix=rho)


def reduced_density_matrix_dense(psi, sites) -> np.ndarray:
    """Reference partial trace through the full 2^N product space.

    Exponential in chain length; exists to cross-check the combinatorial
    sector path on small chains.
    """
    sites = tuple(int(s) for s in sites)
    n = psi.basis.n_sites
    full = np.zeros(2 ** n, dtype=complex)
    for amplitude, config in zip(psi.amplitudes, psi.basis.configs):
        index = 0
        for site in range(1, n + 1):
            if site not in config:    # bit 0 = up, axis order site 1..N
                index |= 1 << (n - site)
        full[index] = amplitude
    tensor = full.reshape((2,) * n)
    keep = [s - 1 for s in sites]
    drop = [ax for ax in range(n) if ax not in keep]
    rho = np.tensordot(tensor, tensor.conj(), axes=(drop, drop))
    order = list(np.argsort(np.argsort(keep)))
    rho = np.transpose(rho, axes=order + [len(keep) + ax for ax in order])
    dim = 2 ** len(sites)
    return rho.reshape(dim, dim)


def concurrence(rho: ReducedDensityMatrix) -> float:
    """Wootters concurrence of a two-qubit reduced state.

    C = max(0, l1 - l2 - l3 - l4) with l_i the descending square roots of
    the eigenvalues of rho (Y x Y) rho* (Y x Y).
    """
    if len(rho.sites) != 2:
        raise ValueError(f"concurrence needs a 2-qubit state, got {len(rho.sites)} qubits")
    matrix = rho.matrix
    flipped = _YY @ matrix.conj() @ _YY
    eigenvalues = np.linalg.eigvals(matrix @ flipped)
    # tiny negative real parts are roundoff; magnitudes are safe under sqrt
    lam = np.sort(np.sqrt(np.abs(eigenvalues.real)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def fidelity_to_target(psi, target: TargetState, phase_maximized: bool = False) -> float:
    """Overlap-squared of a state with a reference target.

    Plain mode is |<target|psi>|^2.  Phase-maximized mode reports the
    maximum of that quantity over independent phase rotations of the
    target components, (sum_i |a_i|)^2 / m; local phases accumulated
    during the evolution are removable by single-site rotations, so this
    is the headline figure of merit.
    """
    amplitudes = np.array(
        [psi.amplitudes[psi.basis.index_of(c)] for c in target.components]
    )
    if phase_maximized:
        return float(np.sum(np.abs(amplitudes)) ** 2 / len(amplitudes))
    return float(np.abs(np.conj(target.amplitudes) @ amplitudes) ** 2)
