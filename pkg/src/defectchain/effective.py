"""Closed-form predictions for the defect-resonant subspaces.

Each constructor reduces one defect arrangement to its small effective
matrix (degenerate perturbation theory over the resonant configurations,
with every other state entering only as a virtual intermediary) and
reports level energies, the relevant gap, the oscillation period and the
instants at which maximally entangled states appear.

Throughout, B is the hop energy scale, Delta the anisotropy, g the defect
offset, and E1 = base_spacing - B*Delta the one-excitation band center.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .basis import Config
from .hamiltonian import ChainSpec

DEFAULT_N_TIMES = 4

# angle whose cosine is -1/3; the three-level populations all equal 1/3
# when the center-to-edge phase reaches it
W_ANGLE = math.acos(-1.0 / 3.0)


@dataclass(frozen=True)
class EffectivePrediction:
    """Perturbative output for one defect scenario.

    ``effective_energies`` is empty when the scenario only supports a
    gap/period law (separations with two or more intermediate sites).
    ``components`` lists the resonant configurations the model lives on,
    in the same order as the rows of ``effective_matrix``.
    """

    scenario: str
    components: tuple[Config, ...]
    effective_energies: tuple[float, ...]
    gap: float
    period: float
    entanglement_times: tuple[float, ...]
    effective_matrix: np.ndarray | None = None
    warnings: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.gap <= 0:
            raise ValueError(f"gap must be positive, got {self.gap}")
        if self.entanglement_times and np.any(np.diff(self.entanglement_times) <= 0):
            raise ValueError("entanglement times must be strictly increasing")


def _alternating_instants(gap: float, n_times: int) -> tuple[float, ...]:
    """t_k = (pi/2 + k*pi)/gap: the equal-population instants of a
    resonant two-level oscillation."""
    return tuple((math.pi / 2 + k * math.pi) / gap for k in range(n_times))


def _require_offset(chain: ChainSpec, site: int) -> float:
    if site not in chain.defects:
        raise ValueError(f"site {site} carries no defect offset")
    return chain.defects[site]


def _warn_if(condition: bool, message: str, warnings: list[str]) -> None:
    if condition:
        warnings.append(message)


def one_excitation_pair(
    chain: ChainSpec,
    n0: int,
    m0: int,
    n_times: int = DEFAULT_N_TIMES,
    second_order_sign: int = +1,
) -> EffectivePrediction:
    """Two equal defects sharing one excitation: the resonant doublet.

    The defect separation sets the perturbation order: with mu sites
    between the defects the gap is B*(B/(2g))^mu and the period grows as
    (2g/B)^mu.  Explicit level energies are produced for mu = 0 and 1:

    * mu = 0: first-order doublet E1 + g +- B/2, both levels pushed up by
      B^2/[4(g + B/2)] from repulsion against the band below (the sign is
      fixed by matching exact diagonalization deep in the g >> B regime;
      ``second_order_sign=-1`` selects the rejected downward candidate
      for comparison studies).
    * mu = 1: second-order doublet with diagonal E1 + g + B^2/(2g) and
      coupling B^2/(4g).
    """
    if second_order_sign not in (+1, -1):
        raise ValueError("second_order_sign must be +1 or -1")
    for site in (n0, m0):
        if not 1 <= site <= chain.n_sites:
            raise ValueError(f"site {site} outside 1..{chain.n_sites}")
    if m0 <= n0:
        raise ValueError(f"need n0 < m0, got {n0}, {m0}")
    g = _require_offset(chain, n0)
    if abs(_require_offset(chain, m0) - g) > 1e-12 * max(1.0, abs(g)):
        raise ValueError(
            f"defects at {n0} and {m0} must carry equal offsets, "
            f"got {g} and {chain.defects[m0]}"
        )
    warnings: list[str] = []
    b = chain.coupling
    _warn_if(g < 10 * b, f"offset g={g} is not large against the coupling {b}", warnings)
    mu = m0 - n0 - 1
    e1 = chain.single_excitation_energy

    gap = b * (b / (2.0 * g)) ** mu
    energies: tuple[float, ...] = ()
    matrix = None
    if mu == 0:
        shift = second_order_sign * b ** 2 / (4.0 * (g + b / 2.0))
        diagonal = e1 + g + shift
        matrix = np.array([[diagonal, b / 2.0], [b / 2.0, diagonal]])
        energies = (diagonal - b / 2.0, diagonal + b / 2.0)
    elif mu == 1:
        diagonal = e1 + g + b ** 2 / (2.0 * g)
        coupling = b ** 2 / (4.0 * g)
        matrix = np.array([[diagonal, coupling], [coupling, diagonal]])
        energies = (diagonal - coupling, diagonal + coupling)

    return EffectivePrediction(
        scenario="epr-one-excitation",
        components=((n0,), (m0,)),
        effective_energies=energies,
        gap=gap,
        period=2.0 * math.pi / gap,
        entanglement_times=_alternating_instants(gap, n_times),
        effective_matrix=matrix,
        warnings=tuple(warnings),
        notes=() if mu <= 1 else ("gap/period law only for this separation",),
    )


def two_level_probabilities(pred: EffectivePrediction, t):
    """(p_stay, p_transfer) = ((1 + cos(gap t))/2, (1 - cos(gap t))/2)."""
    if len(pred.components) != 2:
        raise ValueError(
            f"two-level formula needs a two-component prediction, "
            f"scenario {pred.scenario!r} has {len(pred.components)}"
        )
    c = np.cos(pred.gap * np.asarray(t, dtype=float))
    return (1.0 + c) / 2.0, (1.0 - c) / 2.0


def bound_pair_single_defect(
    chain: ChainSpec, n0: int, n_times: int = DEFAULT_N_TIMES
) -> EffectivePrediction:
    """Bound pairs sharing one defect: phi(n0-1, n0) and phi(n0, n0+1).

    Both pairs sit at 2*E1 + B*Delta + g, split only in second order:
    the coupling s = B^2/[4(B*Delta + g)] runs through the dissociated
    state phi(n0-1, n0+1), and each pair is additionally pushed up by
    r = B/(4*Delta) (virtual hop of its outer excitation away from the
    defect) plus s.  Level energies are the common diagonal +- s, so the
    gap is B^2/[2(B*Delta + g)].
    """
    g = _require_offset(chain, n0)
    warnings: list[str] = []
    b, delta = chain.coupling, chain.anisotropy
    _warn_if(
        g < 10 * b / (2 * delta),
        f"offset g={g} is not large against the pair bandwidth {b / (2 * delta)}",
        warnings,
    )
    _warn_if(
        not 3 <= n0 <= chain.n_sites - 2,
        f"defect at {n0} is too close to the chain ends for bulk formulas",
        warnings,
    )
    e1 = chain.single_excitation_energy
    r = b / (4.0 * delta)
    s = b ** 2 / (4.0 * (b * delta + g))
    diagonal = 2.0 * e1 + g + b * delta + r + s
    gap = 2.0 * s
    return EffectivePrediction(
        scenario="epr-bound-pair",
        components=((n0 - 1, n0), (n0, n0 + 1)),
        effective_energies=(diagonal - s, diagonal + s),
        gap=gap,
        period=2.0 * math.pi / gap,
        entanglement_times=_alternating_instants(gap, n_times),
        effective_matrix=np.array([[diagonal, s], [s, diagonal]]),
        warnings=tuple(warnings),
    )


def first_order_epr(
    chain: ChainSpec, n0: int, n_times: int = DEFAULT_N_TIMES
) -> EffectivePrediction:
    """Bound pair phi(n0, n0+1) resonant with the split pair phi(n0, n0+2).

    Requires offsets (g, g, g + B*Delta) on (n0, n0+1, n0+2): raising the
    third defect by exactly B*Delta compensates the bond energy lost when
    the pair splits, so the two configurations are degenerate and a single
    hop of amplitude B/2 connects them.  Gap B, period 2*pi/B, far faster
    than any second-order pair oscillation; in exchange g must be large
    against B itself, not merely against the pair bandwidth.
    """
    g = _require_offset(chain, n0)
    b, delta = chain.coupling, chain.anisotropy
    expected = {n0: g, n0 + 1: g, n0 + 2: g + b * delta}
    for site, offset in expected.items():
        actual = _require_offset(chain, site)
        if abs(actual - offset) > 1e-12 * max(1.0, abs(offset)):
            raise ValueError(
                f"first-order resonance needs offset {offset} at site {site}, got {actual}"
            )
    warnings: list[str] = []
    _warn_if(g < 10 * b, f"offset g={g} is not large against the coupling {b}", warnings)
    e1 = chain.single_excitation_energy
    diagonal = 2.0 * e1 + b * delta + 2.0 * g
    gap = b
    return EffectivePrediction(
        scenario="epr-first-order",
        components=((n0, n0 + 1), (n0, n0 + 2)),
        effective_energies=(diagonal - b / 2.0, diagonal + b / 2.0),
        gap=gap,
        period=2.0 * math.pi / gap,
        entanglement_times=_alternating_instants(gap, n_times),
        effective_matrix=np.array([[diagonal, b / 2.0], [b / 2.0, diagonal]]),
        warnings=tuple(warnings),
        notes=("first-order degenerate model built from the resonance condition",),
    )


def w_effective_matrix(chain: ChainSpec, g: float) -> np.ndarray:
    """Tridiagonal matrix over the three bound pairs on four equal defects.

    r = B/(4*Delta) couples neighboring pairs (and shifts the middle pair,
    which has two such channels); the edge pairs instead pick up
    s = B^2/[4(B*Delta + g)] from virtual exits toward the clean chain.
    """
    b, delta = chain.coupling, chain.anisotropy
    r = b / (4.0 * delta)
    s = b ** 2 / (4.0 * (b * delta + g))
    e0 = 2.0 * chain.single_excitation_energy + b * delta + 2.0 * g
    return np.array(
        [
            [e0 + r + s, r, 0.0],
            [r, e0 + 2.0 * r, r],
            [0.0, r, e0 + r + s],
        ]
    )


def w_level_energies(chain: ChainSpec, g: float) -> tuple[float, float, float]:
    """Closed-form ascending eigenvalues of :func:`w_effective_matrix`.

    The middle level belongs to the antisymmetric edge-pair combination
    and is never populated from the symmetric middle-pair start, so only
    the outer splitting drives the dynamics.
    """
    b, delta = chain.coupling, chain.anisotropy
    e0 = 2.0 * chain.single_excitation_energy + b * delta + 2.0 * g
    u = math.sqrt(8.0 * b ** 2 * delta ** 2 + 16.0 * b * delta * g + 9.0 * g ** 2)
    denominator = 8.0 * delta * (b * delta + g)
    low = e0 + (4.0 * b ** 2 * delta + 3.0 * b * g - b * u) / denominator
    mid = e0 + b * (2.0 * b * delta + g) / (4.0 * delta * (b * delta + g))
    high = e0 + (4.0 * b ** 2 * delta + 3.0 * b * g + b * u) / denominator
    return low, mid, high


def w_four_defects(
    chain: ChainSpec, n0: int, n_times: int = DEFAULT_N_TIMES
) -> EffectivePrediction:
    """Four equal defects hosting three resonant bound pairs.

    Starting from the middle pair phi(n0+1, n0+2), the populations of the
    three pairs all reach 1/3 whenever cos[(E3 - E1) t] = -1/3, producing
    a W state over the pair positions.  The instants alternate around the
    odd multiples of the half period:

        t_k = [(-1)^k * arccos(-1/3) + 2*pi*(k - k//2)] / (E3 - E1).
    """
    g = _require_offset(chain, n0)
    sites = (n0, n0 + 1, n0 + 2, n0 + 3)
    for site in sites:
        actual = _require_offset(chain, site)
        if abs(actual - g) > 1e-12 * max(1.0, abs(g)):
            raise ValueError(
                f"four-defect W needs equal offsets; site {site} has {actual}, expected {g}"
            )
    warnings: list[str] = []
    b, delta = chain.coupling, chain.anisotropy
    _warn_if(
        g < 10 * b / (2 * delta),
        f"offset g={g} is not large against the pair bandwidth {b / (2 * delta)}",
        warnings,
    )
    _warn_if(
        not (n0 >= 3 and n0 + 3 <= chain.n_sites - 2),
        f"defect block {sites} is too close to the chain ends for bulk formulas",
        warnings,
    )
    energies = w_level_energies(chain, g)
    gap = energies[2] - energies[0]
    instants = tuple(
        ((-1) ** k * W_ANGLE + 2.0 * math.pi * (k - k // 2)) / gap
        for k in range(n_times)
    )
    return EffectivePrediction(
        scenario="w-four-defects",
        components=((n0, n0 + 1), (n0 + 1, n0 + 2), (n0 + 2, n0 + 3)),
        effective_energies=energies,
        gap=gap,
        period=2.0 * math.pi / gap,
        entanglement_times=instants,
        effective_matrix=w_effective_matrix(chain, g),
        warnings=tuple(warnings),
    )


def w_probabilities(pred: EffectivePrediction, t):
    """(p_center, p_side): middle-pair and either-edge-pair populations.

    p_center = (1 + cos(gap t))/2 and p_side = (1 - cos(gap t))/4, so the
    three-level closure p_center + 2*p_side = 1 holds identically.
    """
    if len(pred.components) != 3:
        raise ValueError(
            f"three-level formula needs a W prediction, "
            f"scenario {pred.scenario!r} has {len(pred.components)} components"
        )
    c = np.cos(pred.gap * np.asarray(t, dtype=float))
    return (1.0 + c) / 2.0, (1.0 - c) / 4.0
