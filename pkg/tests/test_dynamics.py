import numpy as np
import pytest

from defectchain import (
    ChainSpec,
    NumericalError,
    QuenchSchedule,
    StateVector,
    build_sector_hamiltonian,
    decompose,
    enumerate_sector,
    evolve,
    evolve_schedule,
    one_excitation_pair,
    probability_trace,
    w_effective_matrix,
    w_level_energies,
)


def doublet_chain(g=20.0, mu=0, n_sites=10, n0=4):
    m0 = n0 + 1 + mu
    return ChainSpec(n_sites, 1.0, 10.0, 20.0, {n0: g, m0: g}), n0, m0


class TestDecompose:
    def test_symmetric_two_by_two(self):
        a, b = 3.0, 0.5
        dec = decompose(np.array([[a, b], [b, a]]))
        assert dec.eigenvalues == pytest.approx([a - b, a + b], abs=1e-14)
        expected = np.array([1.0, -1.0]) / np.sqrt(2)
        overlap = abs(float(expected @ dec.eigenvectors[:, 0]))
        assert overlap == pytest.approx(1.0, abs=1e-14)

    def test_w_block_matches_closed_forms(self):
        chain = ChainSpec(12, 1.0, 10.0, 20.0, {s: 10.0 for s in (3, 4, 5, 6)})
        matrix = w_effective_matrix(chain, 10.0)
        closed = np.array(w_level_energies(chain, 10.0))
        numeric = np.linalg.eigvalsh(matrix)
        scale = max(1.0, float(np.max(np.abs(closed))))
        assert np.max(np.abs(numeric - closed)) <= 1e-12 * scale

    def test_clean_one_magnon_sector_vs_direct_tridiagonal(self):
        # oracle: the one-excitation block written down by hand
        chain = ChainSpec(12, 1.0, 10.0, 20.0)
        n, b = chain.n_sites, chain.coupling
        diag = np.full(n, chain.single_excitation_energy)
        diag[0] = diag[-1] = chain.base_spacing - b * chain.anisotropy / 2.0
        tri = np.diag(diag) + np.diag(np.full(n - 1, b / 2.0), 1) + np.diag(
            np.full(n - 1, b / 2.0), -1
        )
        oracle = np.linalg.eigvalsh(tri)
        dec = decompose(build_sector_hamiltonian(chain, enumerate_sector(12, 1)))
        assert dec.eigenvalues == pytest.approx(oracle, abs=1e-12)
        e1 = chain.single_excitation_energy
        bulk = dec.eigenvalues[np.abs(dec.eigenvalues - e1) <= b]
        assert len(bulk) == 10

    def test_contract_quantities(self):
        chain = ChainSpec(10, 1.0, 10.0, 20.0, {4: 15.0})
        h = build_sector_hamiltonian(chain, enumerate_sector(10, 2))
        dec = decompose(h)
        scale = max(1.0, float(np.linalg.norm(h.matrix, np.inf)))
        residual = np.max(np.abs(h.matrix @ dec.eigenvectors - dec.eigenvectors * dec.eigenvalues))
        gram = np.max(np.abs(dec.eigenvectors.T @ dec.eigenvectors - np.eye(h.dimension)))
        assert residual <= 1e-10 * scale
        assert gram <= 1e-10
        assert np.all(np.diff(dec.eigenvalues) >= 0)

    def test_rejects_bad_matrices(self):
        with pytest.raises(ValueError):
            decompose(np.array([[0.0, 1.0], [0.5, 0.0]]))
        with pytest.raises(ValueError):
            decompose(np.array([[np.nan, 0.0], [0.0, 1.0]]))
        with pytest.raises(ValueError):
            decompose(np.zeros((2, 3)))


class TestStateVector:
    def test_norm_enforced(self):
        basis = enumerate_sector(4, 1)
        with pytest.raises(ValueError):
            StateVector(np.array([1.0, 1.0, 0.0, 0.0]), basis)

    def test_from_components_normalizes(self):
        basis = enumerate_sector(4, 1)
        psi = StateVector.from_components(basis, [(1,), (3,)], [1.0, 1.0j])
        assert np.linalg.norm(psi.amplitudes) == pytest.approx(1.0, abs=1e-15)
        assert psi.probability((1,)) == pytest.approx(0.5, abs=1e-15)

    def test_dimension_mismatch(self):
        basis = enumerate_sector(4, 1)
        with pytest.raises(ValueError):
            StateVector(np.array([1.0, 0.0]), basis)


class TestEvolve:
    def test_time_zero_is_identity(self):
        chain, n0, _ = doublet_chain()
        basis = enumerate_sector(10, 1)
        dec = decompose(build_sector_hamiltonian(chain, basis))
        psi0 = StateVector.from_config(basis, (n0,))
        psi = evolve(dec, psi0, 0.0)
        assert np.array_equal(psi.amplitudes, psi0.amplitudes)

    def test_eigenvector_is_stationary(self):
        chain, _, _ = doublet_chain()
        basis = enumerate_sector(10, 1)
        dec = decompose(build_sector_hamiltonian(chain, basis))
        mode = StateVector(dec.eigenvectors[:, 3].astype(complex), basis)
        for t in (0.7, 13.0, 400.0):
            psi = evolve(dec, mode, t)
            assert np.abs(psi.amplitudes) == pytest.approx(
                np.abs(mode.amplitudes), abs=1e-12
            )

    def test_defect_swap_at_half_period(self):
        chain, n0, m0 = doublet_chain(g=20.0, mu=0)
        basis = enumerate_sector(10, 1)
        pred = one_excitation_pair(chain, n0, m0)
        dec = decompose(build_sector_hamiltonian(chain, basis))
        psi0 = StateVector.from_config(basis, (n0,))
        psi = evolve(dec, psi0, pred.period / 2.0)
        assert psi.probability((n0,)) < 0.02
        assert psi.probability((m0,)) > 0.98

    def test_unitarity(self):
        chain, n0, _ = doublet_chain(mu=1)
        basis = enumerate_sector(10, 1)
        dec = decompose(build_sector_hamiltonian(chain, basis))
        psi0 = StateVector.from_config(basis, (n0,))
        for t in (0.0, 1.0, 97.3, 5000.0):
            psi = evolve(dec, psi0, t)
            assert abs(np.linalg.norm(psi.amplitudes) - 1.0) <= 1e-10

    def test_composition(self):
        chain, n0, _ = doublet_chain()
        basis = enumerate_sector(10, 1)
        dec = decompose(build_sector_hamiltonian(chain, basis))
        psi0 = StateVector.from_config(basis, (n0,))
        one_shot = evolve(dec, psi0, 5.3 + 11.9)
        stepped = evolve(dec, evolve(dec, psi0, 5.3), 11.9)
        assert np.max(np.abs(one_shot.amplitudes - stepped.amplitudes)) <= 1e-9

    def test_energy_conservation(self):
        chain, n0, _ = doublet_chain()
        basis = enumerate_sector(10, 1)
        h = build_sector_hamiltonian(chain, basis)
        dec = decompose(h)
        psi0 = StateVector.from_config(basis, (n0,))
        e0 = np.real(np.conj(psi0.amplitudes) @ h.matrix @ psi0.amplitudes)
        scale = float(np.linalg.norm(h.matrix, np.inf))
        for t in (2.0, 17.0, 300.0):
            psi = evolve(dec, psi0, t)
            e = np.real(np.conj(psi.amplitudes) @ h.matrix @ psi.amplitudes)
            assert abs(e - e0) <= 1e-9 * scale

    def test_two_level_closed_form_is_exact(self):
        # isolated resonant doublet: numerically evolved populations equal
        # (1 +- cos(gap t))/2 to near machine precision
        gap = 0.34
        h = np.array([[1.0, gap / 2.0], [gap / 2.0, 1.0]])
        dec = decompose(h)
        basis = enumerate_sector(2, 1)
        psi0 = StateVector.from_config(basis, (1,))
        for t in np.linspace(0.0, 4 * np.pi / gap, 57):
            psi = evolve(dec, psi0, t)
            assert psi.probability((1,)) == pytest.approx(
                (1 + np.cos(gap * t)) / 2, abs=1e-12
            )
            assert psi.probability((2,)) == pytest.approx(
                (1 - np.cos(gap * t)) / 2, abs=1e-12
            )

    def test_dimension_mismatch_rejected(self):
        chain, n0, _ = doublet_chain()
        dec = decompose(build_sector_hamiltonian(chain, enumerate_sector(10, 1)))
        other = StateVector.from_config(enumerate_sector(10, 2), (4, 5))
        with pytest.raises(ValueError):
            evolve(dec, other, 1.0)


class TestProbabilityTrace:
    def test_initial_condition_and_closure(self):
        chain = ChainSpec(12, 1.0, 10.0, 20.0, {s: 10.0 for s in (3, 4, 5, 6)})
        basis = enumerate_sector(12, 2)
        dec = decompose(build_sector_hamiltonian(chain, basis))
        psi0 = StateVector.from_config(basis, (4, 5))
        times = np.linspace(0.0, 30.0, 121)
        trace = probability_trace(
            dec, psi0, [(4, 5), (3, 4), (5, 6)], times, check_closure=True
        )
        assert trace.probabilities[0] == pytest.approx([1.0, 0.0, 0.0], abs=1e-12)
        assert trace.probability_labels == ("p_4-5", "p_3-4", "p_5-6")
        assert np.all(trace.probabilities >= 0.0)
        assert np.all(trace.probabilities <= 1.0 + 1e-12)

    def test_unknown_tracked_config_rejected(self):
        chain, n0, _ = doublet_chain()
        basis = enumerate_sector(10, 1)
        dec = decompose(build_sector_hamiltonian(chain, basis))
        psi0 = StateVector.from_config(basis, (n0,))
        with pytest.raises(ValueError):
            probability_trace(dec, psi0, [(11,)], [0.0, 1.0])

    def test_time_validation(self):
        chain, n0, _ = doublet_chain()
        basis = enumerate_sector(10, 1)
        dec = decompose(build_sector_hamiltonian(chain, basis))
        psi0 = StateVector.from_config(basis, (n0,))
        with pytest.raises(ValueError):
            probability_trace(dec, psi0, [(n0,)], [-1.0, 0.0])
        with pytest.raises(ValueError):
            probability_trace(dec, psi0, [(n0,)], [2.0, 1.0])


class TestSchedules:
    def test_single_segment_equals_plain_evolution(self):
        chain, n0, m0 = doublet_chain()
        basis = enumerate_sector(10, 1)
        dec = decompose(build_sector_hamiltonian(chain, basis))
        psi0 = StateVector.from_config(basis, (n0,))
        times = np.linspace(0.0, 12.0, 49)
        plain = probability_trace(dec, psi0, [(n0,), (m0,)], times)
        scheduled = evolve_schedule(
            QuenchSchedule(((chain, np.inf),)), psi0, times, [(n0,), (m0,)]
        )
        assert np.max(np.abs(plain.probabilities - scheduled.probabilities)) <= 1e-12

    def test_zero_duration_first_segment(self):
        chain, n0, m0 = doublet_chain()
        detuned = chain.with_detuned(m0, 13.0)
        basis = enumerate_sector(10, 1)
        psi0 = StateVector.from_config(basis, (n0,))
        times = np.linspace(0.0, 8.0, 33)
        sched = QuenchSchedule(((chain, 0.0), (detuned, np.inf)))
        direct = evolve_schedule(QuenchSchedule(((detuned, np.inf),)), psi0, times, [(n0,)])
        via_zero = evolve_schedule(sched, psi0, times, [(n0,)])
        assert np.max(np.abs(direct.probabilities - via_zero.probabilities)) <= 1e-12

    def test_state_continuous_across_boundary(self):
        chain, n0, m0 = doublet_chain()
        sched = QuenchSchedule.detune_at(chain, 2.0, m0, 20.0)
        basis = enumerate_sector(10, 1)
        psi0 = StateVector.from_config(basis, (n0,))
        eps = 1e-9
        trace = evolve_schedule(sched, psi0, [2.0 - eps, 2.0, 2.0 + eps], [(n0,), (m0,)])
        assert np.max(np.abs(trace.probabilities[0] - trace.probabilities[1])) < 1e-6
        assert np.max(np.abs(trace.probabilities[2] - trace.probabilities[1])) < 1e-6

    def test_detuning_quench_freezes_populations(self):
        # oracle-computed behavior: after a 20B detuning of one defect at
        # the equal-population instant, populations stay pinned near 1/2
        # (residual wobble about B/(2*sqrt(B^2 + detuning^2)) ~ 0.025),
        # while the unquenched chain keeps swinging through [0, 1]
        chain, n0, m0 = doublet_chain(g=20.0, mu=0)
        basis = enumerate_sector(10, 1)
        pred = one_excitation_pair(chain, n0, m0)
        t0 = pred.entanglement_times[0]
        psi0 = StateVector.from_config(basis, (n0,))
        times = np.linspace(t0, t0 + 10 * pred.period, 4001)

        sched = QuenchSchedule.detune_at(chain, t0, m0, 20.0)
        frozen = evolve_schedule(sched, psi0, times, [(n0,), (m0,)])
        deviation = np.max(np.abs(frozen.probabilities - 0.5))
        assert deviation < 0.03

        dec = decompose(build_sector_hamiltonian(chain, basis))
        free = probability_trace(dec, psi0, [(n0,), (m0,)], times)
        assert np.max(free.probabilities[:, 0]) > 0.99
        assert np.min(free.probabilities[:, 0]) < 0.01

    def test_segment_consistency_enforced(self):
        chain, _, _ = doublet_chain()
        other = ChainSpec(11, 1.0, 10.0, 20.0)
        with pytest.raises(ValueError):
            QuenchSchedule(((chain, 1.0), (other, np.inf)))
        with pytest.raises(ValueError):
            QuenchSchedule(((chain, -1.0),))
        with pytest.raises(ValueError):
            QuenchSchedule(())


def test_closure_check_raises_on_violation():
    chain, n0, _ = doublet_chain()
    basis = enumerate_sector(10, 1)
    dec = decompose(build_sector_hamiltonian(chain, basis))
    broken = SpectralDecompositionBroken(dec)
    psi0 = StateVector.from_config(basis, (n0,))
    with pytest.raises(NumericalError):
        probability_trace(broken, psi0, [(n0,)], [0.0, 1.0], check_closure=True)


class SpectralDecompositionBroken:
    """Decomposition whose eigenvectors lost a column of weight."""

    def __init__(self, dec):
        vectors = dec.eigenvectors.copy()
        vectors[:, 0] *= 0.9
        self.eigenvalues = dec.eigenvalues
        self.eigenvectors = vectors
        self.source_dimension = dec.source_dimension
