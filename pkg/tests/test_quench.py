import numpy as np
import pytest

import quenchlab as ql

from conftest import correlated_point, long_time_grid, neel_point, random_state


class TestPrepareQuench:
    def test_diagonal_hamiltonian_gives_delta_coefficients(self):
        eig = ql.diagonalize(np.diag([0.3, 1.1, 2.9]))
        state = ql.prepare_quench(eig, 1)
        np.testing.assert_allclose(state.coeffs, [0.0, 1.0, 0.0], atol=1e-14)
        np.testing.assert_allclose(state.mean_energy, 1.1, atol=1e-14)

    def test_normalized_for_every_origin(self):
        _, _, eig, _, _ = correlated_point(9)
        for origin in (0, 3, np.arange(1.0, 10.0)):
            state = ql.prepare_quench(eig, origin)
            np.testing.assert_allclose(np.sum(state.coeffs**2), 1.0, atol=1e-10)

    def test_mean_energy_equals_diagonal_entry(self, n12_correlated):
        sector, ham, eig, state, _ = n12_correlated
        np.testing.assert_allclose(state.mean_energy, ham.entries[0, 0], atol=1e-10)

    def test_origin_errors(self):
        _, _, eig, _, _ = correlated_point(8)
        with pytest.raises(ql.ParameterError):
            ql.prepare_quench(eig, 99)
        with pytest.raises(ql.ParameterError):
            ql.prepare_quench(eig, np.zeros(8))


class TestIprAndMoments:
    def test_localized_state(self):
        eig = ql.diagonalize(np.diag([0.0, 1.0, 2.0]))
        state = ql.prepare_quench(eig, 2)
        assert ql.ipr(state) == pytest.approx(1.0, abs=1e-12)

    def test_uniform_state(self):
        n = 64
        coeffs = np.full(n, 1 / np.sqrt(n))
        state = ql.QuenchState(coeffs, "uniform", 0.0, coeffs**2)
        assert ql.ipr(state) == pytest.approx(1 / n, abs=1e-14)
        mom = ql.moments(state)
        for order, value in ((3, mom.i3), (4, mom.i4), (6, mom.i6), (8, mom.i8)):
            assert value == pytest.approx(n ** (1 - order / 2), rel=1e-12)

    def test_i4_equals_ipr_for_random_states(self):
        _, _, eig, _, _ = neel_point(9)
        for seed in range(100):
            state = random_state(eig, seed)
            mom = ql.moments(state)
            assert mom.i2 == pytest.approx(1.0, abs=1e-10)
            assert mom.i4 == pytest.approx(ql.ipr(state), abs=1e-14)
            assert mom.i8 <= mom.i4**2 + 1e-15


class TestSurvivalProbability:
    def test_starts_at_one_and_bounded(self, n12_correlated):
        _, _, eig, state, _ = n12_correlated
        series = ql.survival_probability_series(
            state, eig.energies, np.linspace(0, 50, 500)
        )
        assert series.values[0] == pytest.approx(1.0, abs=1e-12)
        assert np.all(series.values >= -1e-12)
        assert np.all(series.values <= 1 + 1e-12)

    def test_two_level_cosine(self):
        gap = 1.3
        coeffs = np.array([1.0, 1.0]) / np.sqrt(2)
        state = ql.QuenchState(coeffs, "two-level", gap / 2, coeffs**2)
        t = np.linspace(0, 20, 101)
        series = ql.survival_probability_series(state, np.array([0.0, gap]), t)
        np.testing.assert_allclose(series.values, np.cos(gap * t / 2) ** 2, atol=1e-12)

    def test_long_time_mean_is_i4(self):
        _, _, eig, state, _ = correlated_point(8)
        series = ql.survival_probability_series(state, eig.energies, long_time_grid())
        assert abs(series.mean() - ql.ipr(state)) < 1e-3


class TestExpectationSeries:
    def test_t0_is_product_basis_expectation(self, n12_correlated):
        sector, _, eig, state, obs = n12_correlated
        series = ql.expectation_series(state, obs, eig.energies, np.array([0.0, 1.0]))
        direct = float(obs.diag_product_basis @ state.product_vector**2)
        assert abs(series.values[0] - direct) < 1e-10

    def test_sector_identity_sigma_z_vs_survival(self, n12_correlated):
        _, _, eig, state, obs = n12_correlated
        t = np.linspace(0, 200, 2000)
        sz = ql.expectation_series(state, obs, eig.energies, t)
        p0 = ql.survival_probability_series(state, eig.energies, t)
        assert np.max(np.abs(sz.values - (2 * p0.values - 1))) < 1e-10

    def test_time_mean_equals_de_average(self, n10_correlated):
        _, _, eig, state, obs = n10_correlated
        series = ql.expectation_series(state, obs, eig.energies, long_time_grid())
        assert abs(series.mean() - ql.de_average(state, obs)) < 1e-2

    def test_bounded_for_pauli(self, n10_correlated):
        _, _, eig, state, obs = n10_correlated
        series = ql.expectation_series(
            state, obs, eig.energies, np.linspace(0, 100, 1000)
        )
        assert np.all(np.abs(series.values) <= 1 + 1e-12)


class TestDiagonalEnsemble:
    def test_identity_observable(self, n10_correlated):
        _, _, eig, state, _ = n10_correlated
        ident = ql.rotate_observable(np.ones(eig.dimension), eig)
        assert ql.de_average(state, ident) == pytest.approx(1.0, abs=1e-12)
        assert ql.de_fluctuations(state, ident) == pytest.approx(0.0, abs=1e-12)
        assert ql.two_time_average(state, ident) == pytest.approx(1.0, abs=1e-12)

    def test_localized_state_reads_diagonal(self):
        eig = ql.diagonalize(np.diag([0.0, 1.0, 2.0]))
        state = ql.prepare_quench(eig, 1)
        obs = ql.rotate_observable(np.array([0.2, 0.5, 0.9]), eig)
        assert ql.de_average(state, obs) == pytest.approx(0.5, abs=1e-12)

    def test_de_average_close_to_microcanonical(self, n12_correlated):
        _, _, eig, state, obs = n12_correlated
        mc = ql.microcanonical_average(
            obs, eig, state.mean_energy, 0.1 * eig.spectral_width
        )
        assert abs(ql.de_average(state, obs) - mc) < 0.1

    def test_fluctuations_match_series_variance(self, n10_correlated):
        _, _, eig, state, obs = n10_correlated
        report = ql.detect_degeneracies(eig.energies)
        assert report.gap_collisions == 0
        series = ql.expectation_series(state, obs, eig.energies, long_time_grid())
        d2 = ql.de_fluctuations(state, obs)
        assert d2 >= 0.0
        assert abs(d2 - series.variance()) < 0.1 * d2

    def test_nonergodic_fluctuation_law_exact(self, n12_correlated):
        _, _, eig, state, obs = n12_correlated
        mom = ql.moments(state)
        expected = 4.0 * (mom.i4**2 - mom.i8)
        assert abs(ql.de_fluctuations(state, obs) - expected) < 1e-10

    def test_two_time_matches_direct_integration(self, n10_correlated):
        _, _, eig, state, obs = n10_correlated
        t = long_time_grid()
        c, o, e = state.coeffs, obs.eigen_matrix, eig.energies
        oc = o @ c
        total = 0.0 + 0.0j
        for lo in range(0, t.size, 4096):
            block = t[lo : lo + 4096]
            phase = np.exp(-1j * np.outer(e, block))
            evolved = o @ (phase * oc[:, None])
            total += np.sum((c[:, None] * phase.conj() * evolved).sum(axis=0))
        oracle = (total / t.size).real
        assert abs(ql.two_time_average(state, obs) - oracle) < 1e-2

    def test_anticorrelated_two_time(self, n12_correlated):
        _, _, eig, state, obs = n12_correlated
        tt = ql.two_time_average(state, obs)
        assert abs(tt - (-1.0)) < 5 * ql.ipr(state)

    def test_degeneracy_warning_emitted(self):
        eig = ql.diagonalize(np.diag([0.0, 0.0, 1.0]))
        state = ql.prepare_quench(eig, np.array([1.0, 1.0, 1.0]))
        obs = ql.rotate_observable(np.array([1.0, -1.0, 0.5]), eig)
        report = ql.detect_degeneracies(eig.energies)
        with pytest.warns(UserWarning):
            ql.de_fluctuations(state, obs, report)
        with pytest.warns(UserWarning):
            ql.two_time_average(state, obs, report)


class TestSurvivalObservable:
    def test_trace_and_de_values(self, n10_correlated):
        _, _, eig, state, _ = n10_correlated
        proj = ql.survival_probability_observable(state)
        mom = ql.moments(state)
        assert np.trace(proj.eigen_matrix) == pytest.approx(1.0, abs=1e-10)
        assert ql.de_average(state, proj) == pytest.approx(mom.i4, abs=1e-12)
        expected = mom.i4**2 - mom.i8
        assert ql.de_fluctuations(state, proj) == pytest.approx(expected, abs=1e-10)
