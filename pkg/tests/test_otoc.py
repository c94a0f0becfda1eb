import numpy as np
import pytest

import quenchlab as ql

from conftest import correlated_point, long_time_grid, neel_point


def synthetic_pair(c, w_down, delta_w, v_down, delta_v):
    """Observables of the exact rank-1 plus identity form over coefficients c."""
    d = c.size
    w = delta_w * np.outer(c, c) + w_down * np.eye(d)
    v = delta_v * np.outer(c, c) + v_down * np.eye(d)
    return ql.PauliObservablePair(
        ql.ObservableMatrix(np.diag(w).copy(), w),
        ql.ObservableMatrix(np.diag(v).copy(), v),
        w_down, delta_w, v_down, delta_v,
    )


def synthetic_state(c):
    return ql.QuenchState(c.copy(), "synthetic", 0.0, c**2)


class TestOtocSeries:
    def test_f0_is_one_for_pauli(self, n10_correlated):
        _, _, eig, state, _ = n10_correlated
        pair = ql.sigma_z_pair(eig)
        series = ql.otoc_series(state, pair, eig, np.array([0.0]))
        assert series.values[0] == pytest.approx(1.0, abs=1e-10)

    def test_no_dynamics_when_everything_diagonal(self):
        eig = ql.diagonalize(np.diag([0.1, 0.7, 1.9]))
        state = ql.prepare_quench(eig, np.array([0.6, 0.8, 0.0]))
        w = ql.rotate_observable(np.array([1.0, -1.0, 2.0]), eig)
        pair = ql.PauliObservablePair(w, w, 0.0, 0.0, 0.0, 0.0)
        series = ql.otoc_series(state, pair, eig, np.linspace(0, 5, 20))
        expected = float(
            state.coeffs @ np.linalg.matrix_power(w.eigen_matrix, 4) @ state.coeffs
        )
        np.testing.assert_allclose(series.values, expected, atol=1e-12)

    def test_matches_full_matrix_oracle(self):
        # independent oracle: build W(t) as a dense matrix product
        rng = np.random.default_rng(11)
        h = rng.standard_normal((6, 6))
        h = 0.5 * (h + h.T)
        eig = ql.diagonalize(h)
        state = ql.prepare_quench(eig, 2)
        w = ql.rotate_observable(rng.standard_normal(6), eig)
        v = ql.rotate_observable(rng.standard_normal(6), eig)
        pair = ql.PauliObservablePair(w, v, 0.0, 0.0, 0.0, 0.0)
        times = np.linspace(0.0, 7.0, 20)
        series = ql.otoc_series(state, pair, eig, times)
        for i, t in enumerate(times):
            phase = np.diag(np.exp(1j * eig.energies * t))
            wt = phase @ w.eigen_matrix @ phase.conj()
            full = wt @ v.eigen_matrix @ wt @ v.eigen_matrix
            oracle = state.coeffs @ full @ state.coeffs
            assert abs(series.values[i] - oracle.real) < 1e-10
        assert series.max_imag_residual < 1e-8

    def test_time_mean_matches_ed_average(self, n10_correlated):
        _, _, eig, state, _ = n10_correlated
        pair = ql.sigma_z_pair(eig)
        series = ql.otoc_series(state, pair, eig, long_time_grid())
        fbar = ql.otoc_time_average_ed(state, pair)
        assert abs(np.mean(series.values) - fbar) < 2e-2


class TestOtocTimeAverage:
    def test_identity_pair(self, n10_correlated):
        _, _, eig, state, _ = n10_correlated
        ident = ql.rotate_observable(np.ones(eig.dimension), eig)
        pair = ql.PauliObservablePair(ident, ident, 1.0, 0.0, 1.0, 0.0)
        assert ql.otoc_time_average_ed(state, pair) == pytest.approx(1.0, abs=1e-12)

    def test_matches_triple_loop_oracle(self):
        rng = np.random.default_rng(4)
        d = 7
        c = rng.standard_normal(d)
        c /= np.linalg.norm(c)
        w = rng.standard_normal((d, d))
        w = 0.5 * (w + w.T)
        v = rng.standard_normal((d, d))
        v = 0.5 * (v + v.T)
        oracle = 0.0
        for m in range(d):
            for n in range(d):
                f1 = sum(w[m, m] * v[m, b] * w[b, b] * v[b, n] for b in range(d))
                f2 = sum(w[m, b] * v[b, b] * w[b, m] * v[m, n] for b in range(d))
                f3 = w[m, m] ** 2 * v[m, m] * v[m, n]
                oracle += c[m] * c[n] * (f1 + f2 - f3)
        pair = ql.PauliObservablePair(
            ql.ObservableMatrix(np.diag(w).copy(), w),
            ql.ObservableMatrix(np.diag(v).copy(), v),
            0.0, 0.0, 0.0, 0.0,
        )
        value = ql.otoc_time_average_ed(synthetic_state(c), pair)
        assert value == pytest.approx(oracle, abs=1e-12)

    def test_invariant_under_eigenvector_sign_flips(self, n10_correlated):
        _, _, eig, state, obs = n10_correlated
        pair = ql.PauliObservablePair(obs, obs, -1.0, 2.0, -1.0, 2.0)
        base = ql.otoc_time_average_ed(state, pair)
        rng = np.random.default_rng(9)
        signs = rng.choice([-1.0, 1.0], size=eig.dimension)
        flipped_obs = ql.ObservableMatrix(
            obs.diag_product_basis.copy(),
            signs[:, None] * obs.eigen_matrix * signs[None, :],
        )
        flipped_state = ql.QuenchState(
            signs * state.coeffs, state.origin, state.mean_energy,
            state.product_vector.copy(),
        )
        flipped_pair = ql.PauliObservablePair(
            flipped_obs, flipped_obs, -1.0, 2.0, -1.0, 2.0
        )
        assert ql.otoc_time_average_ed(flipped_state, flipped_pair) == pytest.approx(
            base, abs=1e-12
        )


class TestOtocTheory:
    def test_reduces_to_constant_when_deltas_vanish(self):
        mom = ql.MomentVector(1.0, 0.1, 0.2, 0.05, 0.01)
        value = ql.otoc_theory(0.7, 0.0, -0.4, 0.0, mom)
        assert value == pytest.approx(0.7**2 * 0.4**2, abs=1e-14)

    def test_pauli_large_system_limit_is_unity(self):
        mom = ql.MomentVector(1.0, 0.0, 0.0, 0.0, 0.0)
        assert ql.otoc_theory(-1.0, 2.0, -1.0, 2.0, mom) == pytest.approx(1.0)

    def test_large_system_limit_general_scalars(self):
        # with vanishing moments only the constant block survives
        mom = ql.MomentVector(1.0, 0.0, 0.0, 0.0, 0.0)
        rng = np.random.default_rng(8)
        for _ in range(5):
            w, dw, v, dv = rng.standard_normal(4)
            constant = w**2 * v**2 + 2 * w**2 * dv * v + w**2 * dv**2
            assert ql.otoc_theory(w, dw, v, dv, mom) == pytest.approx(
                constant, abs=1e-12
            )

    def test_pinned_regression_value(self):
        # independent term-by-term expansion for sigma_z scalars:
        # 1 - 8 I4 + 16 I4^2 - 8 I8 at I4 = 0.1, I8 = 0.01
        mom = ql.MomentVector(1.0, 0.0, 0.1, 0.0, 0.01)
        assert ql.otoc_theory(-1.0, 2.0, -1.0, 2.0, mom) == pytest.approx(
            0.28, abs=1e-14
        )

    @pytest.mark.parametrize(
        "scalars",
        [(-1.0, 2.0, -1.0, 2.0), (0.0, 1.0, 0.0, 1.0), (0.3, 0.7, 0.5, -1.2)],
    )
    def test_exact_for_rank_one_observables(self, scalars):
        # With W, V built exactly in the rank-1 plus identity form, the
        # dephasing average equals the closed form identically; this pins
        # the linear-in-delta_w reading of the mixed term.
        w_down, delta_w, v_down, delta_v = scalars
        rng = np.random.default_rng(5)
        c = rng.standard_normal(60)
        c /= np.linalg.norm(c)
        state = synthetic_state(c)
        pair = synthetic_pair(c, w_down, delta_w, v_down, delta_v)
        mom = ql.moments(state)
        ed = ql.otoc_time_average_ed(state, pair)
        theory = ql.otoc_theory(w_down, delta_w, v_down, delta_v, mom)
        assert ed == pytest.approx(theory, abs=1e-12)

    def test_sector_exactness_for_correlated_quench(self):
        for n in (8, 10, 12):
            _, _, eig, state, obs = correlated_point(n)
            pair = ql.PauliObservablePair(obs, obs, -1.0, 2.0, -1.0, 2.0)
            ed = ql.otoc_time_average_ed(state, pair)
            theory = ql.otoc_theory(-1.0, 2.0, -1.0, 2.0, ql.moments(state))
            assert abs(ed - theory) < 1e-12


class TestOtocResult:
    def test_bundle(self, n10_correlated):
        _, _, eig, state, _ = n10_correlated
        pair = ql.sigma_z_pair(eig)
        result = ql.otoc_result(state, pair, eig, times=np.linspace(0, 10, 50))
        assert result.f_series is not None
        assert result.otoc_bar == pytest.approx(2 * (1 - result.f_bar_ed), abs=1e-14)

    def test_survival_pair_scalars(self, n10_correlated):
        _, _, eig, state, _ = n10_correlated
        pair = ql.survival_pair(state)
        mom = ql.moments(state)
        ed = ql.otoc_time_average_ed(state, pair)
        assert ed == pytest.approx(2 * mom.i4**2 - mom.i8, abs=1e-12)

    def test_neel_scrambling_trend(self):
        values = []
        for n in (8, 10, 12):
            _, _, eig, state, obs = neel_point(n)
            pair = ql.PauliObservablePair(obs, obs, -1.0, 2.0, -1.0, 2.0)
            values.append(ql.otoc_time_average_ed(state, pair))
        assert values[0] > values[1] > values[2]
