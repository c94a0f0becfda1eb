"""Shared builders for the test suite, cached per session."""

from functools import lru_cache

import numpy as np
import pytest

import quenchlab as ql

#: Fig. 3-style chain parameters used throughout the suite.
BZ, J, JP = 0.05, 1.0, 0.8


@lru_cache(maxsize=None)
def nn_xxx_point(n_sites: int, origin_bits: int):
    """Sector basis, eigensystem, quench state and sigma_z observable for the
    chain at the standard parameters, quenched from ``origin_bits``."""
    k = origin_bits.bit_count()
    sector = ql.enumerate_sector(n_sites, k)
    ham = ql.build_nn_xxx(
        ql.NnXxxParams(n_sites=n_sites, b_z_system=BZ, j=J, j_prime=JP), sector
    )
    eig = ql.diagonalize(ham)
    state = ql.prepare_quench(eig, ql.SpinConfiguration(origin_bits, n_sites))
    obs = ql.rotate_observable(ql.sigma_z_system_diag(sector), eig)
    return sector, ham, eig, state, obs


def correlated_point(n_sites: int):
    """Correlated quench: system up, bath all down (k = 1)."""
    return nn_xxx_point(n_sites, 1)


def neel_point(n_sites: int):
    """Neel quench: system up, bath alternating starting up."""
    return nn_xxx_point(n_sites, ql.neel_bits(n_sites))


def random_state(eigensystem, seed: int) -> ql.QuenchState:
    """A random normalized quench state over a given eigensystem."""
    rng = np.random.default_rng(seed)
    vec = rng.standard_normal(eigensystem.dimension)
    vec /= np.linalg.norm(vec)
    return ql.prepare_quench(eigensystem, vec)


def long_time_grid(t_max: float = 1e4, n: int = 40001) -> np.ndarray:
    return np.linspace(0.0, t_max, n)


@pytest.fixture(scope="session")
def n12_correlated():
    return correlated_point(12)


@pytest.fixture(scope="session")
def n10_correlated():
    return correlated_point(10)
