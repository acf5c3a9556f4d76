"""Fixed-excitation-number basis for a chain of two-level sites.

The chain Hamiltonian conserves the number of up spins, so every
computation lives inside one excitation sector.  A :class:`SectorBasis`
enumerates the sector's configurations once and provides O(1) lookup in
both directions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

Config = tuple[int, ...]


@dataclass(frozen=True)
class SectorBasis:
    """All placements of ``n_excitations`` up spins on ``n_sites`` sites.

    Site indices are 1-based; ordinals are 0-based.  Configurations are
    strictly increasing site tuples in lexicographic order, so
    ``configs[0] == (1, 2, ..., k)`` and ``configs[-1]`` occupies the
    last k sites.  Immutable after construction.
    """

    n_sites: int
    n_excitations: int
    configs: tuple[Config, ...]
    index_map: dict[Config, int] = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.configs)

    def index_of(self, config) -> int:
        """Ordinal of ``config``; raises ValueError if it is not a valid
        member of this sector (wrong length, unsorted, out of range)."""
        key = _as_config(config)
        try:
            return self.index_map[key]
        except KeyError:
            raise ValueError(
                f"{key} is not a configuration of {self.n_excitations} "
                f"excitations on {self.n_sites} sites"
            ) from None

    def config_at(self, ordinal: int) -> Config:
        return self.configs[ordinal]

    def __contains__(self, config) -> bool:
        try:
            return _as_config(config) in self.index_map
        except ValueError:
            return False


def _as_config(config) -> Config:
    if isinstance(config, int):
        return (config,)
    return tuple(int(s) for s in config)


def enumerate_sector(n_sites: int, n_excitations: int) -> SectorBasis:
    """Enumerate the sector with ``n_excitations`` up spins.

    Parameters
    ----------
    n_sites : int
        Chain length N (positive).
    n_excitations : int
        Number of up spins k, with 0 <= k <= N.

    Returns
    -------
    SectorBasis
        Basis of binomial(N, k) configurations in lexicographic order.
    """
    if n_sites < 1:
        raise ValueError(f"n_sites must be positive, got {n_sites}")
    if not 0 <= n_excitations <= n_sites:
        raise ValueError(
            f"n_excitations must lie in [0, {n_sites}], got {n_excitations}"
        )
    configs = tuple(
        itertools.combinations(range(1, n_sites + 1), n_excitations)
    )
    assert len(configs) == math.comb(n_sites, n_excitations)
    index_map = {c: i for i, c in enumerate(configs)}
    return SectorBasis(n_sites, n_excitations, configs, index_map)
