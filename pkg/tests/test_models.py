import numpy as np
import pytest

import quenchlab as ql


def total_sz_matrix(basis):
    return np.diag(ql.total_sz_diag(basis))


class TestNnXxx:
    def test_two_site_hand_matrix(self):
        # <ud|H|ud> = Bz - J, <du|H|du> = -Bz - J, flip-flop 2J.
        sector = ql.enumerate_sector(2, 1)
        ham = ql.build_nn_xxx(ql.NnXxxParams(2, 0.05, 1.0), sector)
        expected = np.array([[-0.95, 2.0], [2.0, -1.05]])
        np.testing.assert_array_equal(ham.entries, expected)

    def test_exactly_symmetric(self):
        sector = ql.enumerate_sector(7, 3)
        ham = ql.build_nn_xxx(ql.NnXxxParams(7, 0.31, -0.7, 1.3), sector)
        assert np.array_equal(ham.entries, ham.entries.T)

    def test_full_space_commutes_with_total_sz(self):
        basis = ql.enumerate_sector(8, "all")
        ham = ql.build_nn_xxx(ql.NnXxxParams(8, 0.05, 1.0, 0.8), basis)
        sz = total_sz_matrix(basis)
        comm = ham.entries @ sz - sz @ ham.entries
        assert np.max(np.abs(comm)) < 1e-12

    def test_sector_spectra_are_submultiset_of_full(self):
        params = ql.NnXxxParams(8, 0.05, 1.0, 0.8)
        full = np.sort(
            np.linalg.eigvalsh(
                ql.build_nn_xxx(params, ql.enumerate_sector(8, "all")).entries
            )
        )
        sector_all = np.sort(
            np.concatenate(
                [
                    np.linalg.eigvalsh(
                        ql.build_nn_xxx(params, ql.enumerate_sector(8, k)).entries
                    )
                    for k in range(9)
                ]
            )
        )
        np.testing.assert_allclose(sector_all, full, atol=1e-10)

    def test_sector_mismatch_raises(self):
        sector = ql.enumerate_sector(6, 2)
        with pytest.raises(ql.ParameterError):
            ql.build_nn_xxx(ql.NnXxxParams(7, 0.05, 1.0, 0.8), sector)

    def test_param_validation(self):
        with pytest.raises(ql.ParameterError):
            ql.NnXxxParams(6, 0.05, 0.0)
        with pytest.raises(ql.ParameterError):
            ql.NnXxxParams(2, 0.05, 1.0, j_prime=0.8)


class TestMixedFieldChain:
    def test_two_site_hand_matrix(self):
        params = ql.MixedFieldChainParams(
            n_sites=2, b_z_system=0.8, b_x_bath=0.3, b_z_bath=0.0,
            j_x=1.0, j_z=0.1, j_x_sb=0.8, attach_site=2,
        )
        ham = ql.build_mixed_field_chain(params)
        # basis order dd, ud, du, uu (bit 0 = system); sigma_x on the bath
        # spin links dd-du and ud-uu; the XX bond links ud-du with amp 0.8.
        expected = np.array(
            [
                [-0.8, 0.0, 0.3, 0.0],
                [0.0, 0.8, 0.8, 0.3],
                [0.3, 0.8, -0.8, 0.0],
                [0.0, 0.3, 0.0, 0.8],
            ]
        )
        np.testing.assert_array_equal(ham.entries, expected)

    def test_conservation_restored_without_transverse_field(self):
        params = ql.MixedFieldChainParams(6, 0.8, 0.0, 0.2, 1.0, 0.1, 0.8, 5)
        ham = ql.build_mixed_field_chain(params)
        sz = total_sz_matrix(ham.basis)
        assert np.max(np.abs(ham.entries @ sz - sz @ ham.entries)) == 0.0

    def test_symmetric_for_random_params(self):
        rng = np.random.default_rng(0)
        for _ in range(3):
            b = rng.standard_normal(6)
            params = ql.MixedFieldChainParams(
                6, b[0], b[1], b[2], b[3], b[4], b[5], attach_site=4
            )
            ham = ql.build_mixed_field_chain(params)
            assert np.array_equal(ham.entries, ham.entries.T)

    def test_attach_site_validation(self):
        with pytest.raises(ql.ParameterError):
            ql.MixedFieldChainParams(4, 0.8, 0.3, 0.0, 1.0, 0.1, 0.8, attach_site=5)

    def test_bath_builder_matches_chain_block(self):
        # With the system decoupled (j_x_sb = 0) the full spectrum is the
        # bath spectrum shifted by the free system level +-b_z_system.
        params = ql.MixedFieldChainParams(5, 0.8, 0.3, 0.1, 1.0, 0.1, 0.0, 5)
        full = np.sort(np.linalg.eigvalsh(ql.build_mixed_field_chain(params).entries))
        bath = np.linalg.eigvalsh(ql.build_mixed_field_bath(params).entries)
        combined = np.sort(np.concatenate([bath + 0.8, bath - 0.8]))
        np.testing.assert_allclose(full, combined, atol=1e-10)

    def test_embed_bath_vector(self):
        vec = np.arange(1.0, 9.0)
        full = ql.embed_bath_vector(vec, 4)
        assert full.size == 16
        # site-0-up entries carry the bath amplitudes, the rest vanish
        np.testing.assert_array_equal(full[1::2], vec)
        assert np.all(full[0::2] == 0.0)


class TestSpinBoson:
    def test_three_by_three_hand_matrix(self):
        params = ql.SpinBosonParams(2, omega_z=0.6, omega_0=0.25, g=0.1)
        ham = ql.build_spin_boson(params)
        expected = np.array(
            [
                [0.3, 0.1, 0.1],
                [0.1, -0.3 + 0.25, 0.0],
                [0.1, 0.0, -0.3 + 0.5],
            ]
        )
        np.testing.assert_allclose(ham.entries, expected, atol=0)

    def test_dimension(self):
        for n in (2, 7, 40):
            ham = ql.build_spin_boson(ql.SpinBosonParams(n, 0.6, 1.0 / n, 0.01))
            assert ham.dimension == n + 1

    def test_seed_determinism(self):
        params = ql.SpinBosonParams(30, 0.6, 1 / 30, 0.02, random_couplings=True, seed=42)
        a = ql.build_spin_boson(params).entries
        b = ql.build_spin_boson(params).entries
        assert np.array_equal(a, b)
        other = ql.SpinBosonParams(30, 0.6, 1 / 30, 0.02, random_couplings=True, seed=43)
        assert not np.array_equal(a, ql.build_spin_boson(other).entries)

    def test_decoupled_eigenvalues_are_bare_levels(self):
        n, wz, w0 = 20, 0.6, 0.05
        ham = ql.build_spin_boson(ql.SpinBosonParams(n, wz, w0, g=0.0))
        levels = np.sort(
            np.concatenate([[wz / 2], -wz / 2 + w0 * np.arange(1, n + 1)])
        )
        np.testing.assert_allclose(np.linalg.eigvalsh(ham.entries), levels, atol=1e-12)

    def test_symmetric(self):
        ham = ql.build_spin_boson(
            ql.SpinBosonParams(25, 0.6, 0.04, 0.03, random_couplings=True, seed=7)
        )
        assert np.array_equal(ham.entries, ham.entries.T)


def test_sigma_z_system_diag():
    sector = ql.enumerate_sector(4, 2)
    diag = ql.sigma_z_system_diag(sector)
    expected = np.where((sector.config_bits & 1) == 1, 1.0, -1.0)
    np.testing.assert_array_equal(diag, expected)
    sb = ql.SpinBosonBasis(3)
    np.testing.assert_array_equal(ql.sigma_z_system_diag(sb), [1.0, -1.0, -1.0, -1.0])
