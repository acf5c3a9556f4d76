"""Sector Hamiltonians of the anisotropic spin chain with on-site defects.

The chain has free boundaries, Zeeman splittings eps_n = base + offset(n),
an Ising bond term (B*Delta/4) sz.sz and a hop term that moves one
excitation to an adjacent empty site with amplitude B/2.  All matrices are
shifted by the all-down ground energy, so the empty sector sits exactly at
zero and a single interior excitation on a clean site sits at
``base_spacing - B*Delta``.

The B/2 hop amplitude is the convention under which the one-excitation
band is E1 +- B and the bound-pair band has width B/(2*Delta); a literal
(sigma+ sigma- + h.c.)/2 normalization would halve it.  Builders accept an
explicit ``hop_amplitude`` for studying that alternative, but everything
downstream assumes the default.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import reduce

import numpy as np

from .basis import Config, SectorBasis, enumerate_sector

# dense 2^N matrices grow fast; 8 sites = 256 x 256 is the sane ceiling
FULL_SPACE_MAX_SITES = 8


@dataclass(frozen=True)
class ChainSpec:
    """Physical description of one chain: geometry, couplings, defects.

    ``defects`` maps 1-based site index -> level-spacing offset added to
    ``base_spacing`` at that site.  Immutable; derive modified chains with
    :meth:`with_detuned` or :meth:`with_defects`.
    """

    n_sites: int
    coupling: float        # hop/bond energy scale B > 0
    anisotropy: float      # Ising-to-hop ratio Delta > 0
    base_spacing: float    # common level spacing eps0 > 0
    defects: dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValueError(f"n_sites must be positive, got {self.n_sites}")
        for name in ("coupling", "anisotropy", "base_spacing"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and positive, got {value}")
        clean = {}
        for site, offset in self.defects.items():
            site = int(site)
            if not 1 <= site <= self.n_sites:
                raise ValueError(f"defect site {site} outside 1..{self.n_sites}")
            if not np.isfinite(offset):
                raise ValueError(f"defect offset at site {site} is not finite")
            clean[site] = float(offset)
        object.__setattr__(self, "defects", clean)

    def level_spacing(self, site: int) -> float:
        """eps_n = base spacing plus the defect offset, if any."""
        return self.base_spacing + self.defects.get(site, 0.0)

    @property
    def single_excitation_energy(self) -> float:
        """Energy of one excitation on a clean interior site (band center)."""
        return self.base_spacing - self.coupling * self.anisotropy

    def with_defects(self, defects: dict[int, float]) -> "ChainSpec":
        return replace(self, defects=dict(defects))

    def with_detuned(self, sites, detuning: float) -> "ChainSpec":
        """New chain with ``detuning`` added to the offset of each site."""
        if isinstance(sites, int):
            sites = (sites,)
        new = dict(self.defects)
        for site in sites:
            new[site] = new.get(site, 0.0) + detuning
        return replace(self, defects=new)


@dataclass(frozen=True)
class SectorHamiltonian:
    """Dense symmetric sector matrix, shifted by the ground energy."""

    basis: SectorBasis
    matrix: np.ndarray
    energy_origin: float   # the subtracted all-down energy

    @property
    def dimension(self) -> int:
        return self.basis.dimension


def ground_energy(chain: ChainSpec) -> float:
    """Energy of the all-down state: -sum(eps_n)/2 + (N-1)*B*Delta/4."""
    total_spacing = sum(chain.level_spacing(n) for n in range(1, chain.n_sites + 1))
    bond = chain.coupling * chain.anisotropy / 4.0
    return -total_spacing / 2.0 + (chain.n_sites - 1) * bond


def _diagonal(chain: ChainSpec, basis: SectorBasis) -> np.ndarray:
    """Diagonal entries after the ground-energy shift.

    Flipping a spin up adds its level spacing and turns every adjacent
    aligned bond into an anti-aligned one, so relative to the vacuum each
    up-down domain wall costs -B*Delta/2.
    """
    n = chain.n_sites
    bond = chain.coupling * chain.anisotropy / 4.0
    eps = np.array([chain.level_spacing(s) for s in range(1, n + 1)])
    diag = np.empty(basis.dimension)
    for i, config in enumerate(basis.configs):
        occupied = np.zeros(n, dtype=bool)
        occupied[np.array(config, dtype=int) - 1] = True
        spins = np.where(occupied, 1.0, -1.0)
        ising = bond * float(np.dot(spins[:-1], spins[1:]))
        zeeman = float(eps[occupied].sum()) - eps.sum() / 2.0
        diag[i] = zeeman + ising
    return diag - ground_energy(chain)


def build_sector_hamiltonian(
    chain: ChainSpec,
    basis: SectorBasis,
    hop_amplitude: float | None = None,
) -> SectorHamiltonian:
    """Assemble the dense sector matrix.

    Off-diagonal entries connect configurations that differ by moving one
    excitation to an adjacent empty site and equal ``hop_amplitude``
    (default B/2).  Assembly writes both (i, j) and (j, i), so the matrix
    is symmetric by construction.
    """
    if basis.n_sites != chain.n_sites:
        raise ValueError(
            f"basis has {basis.n_sites} sites but chain has {chain.n_sites}"
        )
    hop = chain.coupling / 2.0 if hop_amplitude is None else float(hop_amplitude)

    dim = basis.dimension
    h = np.zeros((dim, dim))
    h[np.diag_indices(dim)] = _diagonal(chain, basis)

    for i, config in enumerate(basis.configs):
        occupied = set(config)
        for site in config:
            for target in (site - 1, site + 1):
                if 1 <= target <= chain.n_sites and target not in occupied:
                    moved = tuple(sorted(occupied - {site} | {target}))
                    j = basis.index_map[moved]
                    h[i, j] = hop
                    h[j, i] = hop
    return SectorHamiltonian(basis=basis, matrix=h, energy_origin=ground_energy(chain))


# ---------------------------------------------------------------------------
# Full 2^N construction (small-N cross-checks only)
# ---------------------------------------------------------------------------

_SZ = np.diag([-1.0, 1.0])          # qubit index 1 = up
_RAISE = np.array([[0.0, 0.0], [1.0, 0.0]])
_LOWER = _RAISE.T
_HOP2 = np.kron(_RAISE, _LOWER) + np.kron(_LOWER, _RAISE)  # site n+1 (x) site n


def _site_operator(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """Embed a local operator; site 1 is the least significant qubit."""
    factors = [np.eye(2 ** (n_sites - site)), op, np.eye(2 ** (site - 1))]
    return reduce(np.kron, factors)


def build_full_hamiltonian(
    chain: ChainSpec, hop_amplitude: float | None = None
) -> np.ndarray:
    """Term-by-term 2^N matrix, not shifted by the ground energy.

    Basis index of a configuration is sum(2**(site-1)) over occupied
    sites.  Guarded to small chains; the sector builder is the working
    representation.
    """
    n = chain.n_sites
    if n > FULL_SPACE_MAX_SITES:
        raise ValueError(
            f"full-space construction refused for n_sites={n} > {FULL_SPACE_MAX_SITES}"
        )
    hop = chain.coupling / 2.0 if hop_amplitude is None else float(hop_amplitude)
    bond = chain.coupling * chain.anisotropy / 4.0

    dim = 2 ** n
    h = np.zeros((dim, dim))
    for site in range(1, n + 1):
        h += (chain.level_spacing(site) / 2.0) * _site_operator(_SZ, site, n)
    for site in range(1, n):
        pair = reduce(
            np.kron, [np.eye(2 ** (n - site - 1)), _HOP2, np.eye(2 ** (site - 1))]
        )
        h += bond * (_site_operator(_SZ, site, n) @ _site_operator(_SZ, site + 1, n))
        h += hop * pair
    return h


def config_to_full_index(config: Config) -> int:
    return sum(2 ** (site - 1) for site in config)


def total_excitation_operator(n_sites: int) -> np.ndarray:
    """Diagonal up-spin counter on the full 2^N space."""
    counts = [bin(b).count("1") for b in range(2 ** n_sites)]
    return np.diag(np.array(counts, dtype=float))


def _sector_blocks_deviation(full_matrix: np.ndarray, chain: ChainSpec) -> float:
    """Max abs deviation between the full matrix and its sector-wise
    reconstruction from :func:`build_sector_hamiltonian`, including any
    nonzero entry between different-excitation-number sectors."""
    n = chain.n_sites
    e0 = ground_energy(chain)
    reconstructed = np.zeros_like(full_matrix)
    for k in range(n + 1):
        basis = enumerate_sector(n, k)
        idx = np.array([config_to_full_index(c) for c in basis.configs])
        sector = build_sector_hamiltonian(chain, basis)
        reconstructed[np.ix_(idx, idx)] = sector.matrix + e0 * np.eye(basis.dimension)
    return float(np.max(np.abs(full_matrix - reconstructed)))


def full_space_crosscheck(chain: ChainSpec, max_sites: int = FULL_SPACE_MAX_SITES) -> bool:
    """Verify sector assembly against the term-by-term 2^N matrix.

    True iff the full matrix is block diagonal across excitation sectors
    and every block matches the sector builder (after the ground-energy
    shift) to 1e-12 relative to the largest entry.
    """
    if chain.n_sites > max_sites:
        raise ValueError(
            f"refusing full-space check for n_sites={chain.n_sites} > {max_sites}"
        )
    full = build_full_hamiltonian(chain)
    tolerance = 1e-12 * max(1.0, float(np.max(np.abs(full))))
    return _sector_blocks_deviation(full, chain) <= tolerance
