"""Shared helpers: independent brute-force oracles used across the suite."""

import numpy as np
import pytest

from defectchain import ChainSpec


def diagonal_energy_from_bits(chain: ChainSpec, bitmask: int) -> float:
    """Energy of a product configuration read term by term off a bitmask.

    Site n is up when bit (n - 1) is set.  This walks the Zeeman and bond
    terms directly and never uses the closed-form ground energy or the
    sector assembly, so it serves as an independent oracle for diagonals.
    """
    spin = lambda n: 1.0 if (bitmask >> (n - 1)) & 1 else -1.0
    energy = sum(
        chain.level_spacing(n) / 2.0 * spin(n) for n in range(1, chain.n_sites + 1)
    )
    bond = chain.coupling * chain.anisotropy / 4.0
    energy += bond * sum(spin(n) * spin(n + 1) for n in range(1, chain.n_sites))
    return energy


def config_bitmask(config) -> int:
    return sum(1 << (site - 1) for site in config)


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
