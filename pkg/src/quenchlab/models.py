"""Dense real-symmetric Hamiltonians for the three model families.

All builders use the convention sigma_z |up> = +|up>, and expand the
Heisenberg exchange sigma.sigma = sx sx + sy sy + sz sz, which gives a
diagonal contribution J s_i s_j (s = +-1) and a flip-flop amplitude 2J on
antiparallel pairs.  XX couplings written with raising/lowering operators,
J (s+ s- + s- s+), carry flip-flop amplitude J instead.  Both chains are
open; the system spin sits at site 0 at one end (the mixed-field chain
attaches it mid-chain instead).

Matrices are assembled symmetrically entry by entry, never symmetrized after
the fact, so entries(i, j) == entries(j, i) holds bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import SectorBasis, SpinBosonBasis, enumerate_sector
from .errors import ParameterError


@dataclass(frozen=True)
class NnXxxParams:
    """Heisenberg chain with nearest and next-nearest exchange and a system bias.

    ``b_z_system`` acts on site 0 only; ``j`` couples all nearest-neighbour
    pairs (including the system bond 0-1) and ``j_prime`` all next-nearest
    pairs.  Total magnetization is conserved.
    """

    n_sites: int
    b_z_system: float
    j: float
    j_prime: float = 0.0

    def __post_init__(self) -> None:
        if self.n_sites < 2:
            raise ParameterError(f"n_sites must be >= 2, got {self.n_sites}")
        if self.j == 0:
            raise ParameterError("nearest-neighbour coupling j must be nonzero")
        if self.n_sites < 3 and self.j_prime != 0:
            raise ParameterError("next-nearest coupling requires n_sites >= 3")


@dataclass(frozen=True)
class MixedFieldChainParams:
    """Mixed-field chain: Ising + XX bath with a transverse field, system
    spin coupled by an XX term to a single bath site.

    ``attach_site`` uses the 1-based chain labelling in which the system is
    site 1 and the bath occupies sites 2..n_sites; the default couples the
    system to site 5.  The transverse bath field breaks excitation-number
    conservation, so this model lives on the full 2^N space.
    """

    n_sites: int
    b_z_system: float
    b_x_bath: float
    b_z_bath: float
    j_x: float
    j_z: float
    j_x_sb: float
    attach_site: int = 5

    def __post_init__(self) -> None:
        if self.n_sites < 2:
            raise ParameterError(f"n_sites must be >= 2, got {self.n_sites}")
        if not 2 <= self.attach_site <= self.n_sites:
            raise ParameterError(
                f"attach_site must be in 2..{self.n_sites}, got {self.attach_site}"
            )


@dataclass(frozen=True)
class SpinBosonParams:
    """Spin coupled to N boson modes in the rotating-wave approximation.

    Mode frequencies are omega_n = n * omega_0.  With ``random_couplings``
    the mode couplings g_n are drawn i.i.d. from a zero-mean normal with
    standard deviation ``g``, reproducibly from ``seed``; otherwise g_n = g.
    """

    n_modes: int
    omega_z: float
    omega_0: float
    g: float
    random_couplings: bool = False
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.n_modes < 2:
            raise ParameterError(f"n_modes must be >= 2, got {self.n_modes}")
        if self.omega_0 <= 0:
            raise ParameterError(f"omega_0 must be positive, got {self.omega_0}")

    def couplings(self) -> np.ndarray:
        """The coupling vector g_n, n = 1..n_modes."""
        if not self.random_couplings:
            return np.full(self.n_modes, float(self.g))
        rng = np.random.default_rng(self.seed)
        return rng.normal(0.0, abs(self.g), size=self.n_modes)


@dataclass(frozen=True)
class HamiltonianMatrix:
    """A dense real-symmetric Hamiltonian together with its basis."""

    basis: SectorBasis | SpinBosonBasis
    entries: np.ndarray

    def __post_init__(self) -> None:
        self.entries.setflags(write=False)

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]


def _spin_values(bits: np.ndarray, site: int) -> np.ndarray:
    """s_i = +-1 for each configuration."""
    return 2.0 * ((bits >> site) & 1) - 1.0


def _add_zz(h: np.ndarray, bits: np.ndarray, i: int, j: int, coeff: float) -> None:
    diag = coeff * _spin_values(bits, i) * _spin_values(bits, j)
    h[np.arange(bits.size), np.arange(bits.size)] += diag


def _add_z(h: np.ndarray, bits: np.ndarray, site: int, coeff: float) -> None:
    h[np.arange(bits.size), np.arange(bits.size)] += coeff * _spin_values(bits, site)


def _add_flipflop(
    h: np.ndarray, basis: SectorBasis, i: int, j: int, amp: float
) -> None:
    """amp * (s+_i s-_j + s-_i s+_j): hops the excitation between sites i, j."""
    bits = basis.config_bits
    anti = ((bits >> i) & 1) != ((bits >> j) & 1)
    cols = np.nonzero(anti)[0]
    if cols.size == 0:
        return
    # Both orientations appear in the mask, so one pass fills (row, col) and
    # (col, row) with identical amplitudes.
    partners = bits[cols] ^ ((1 << i) | (1 << j))
    rows = np.searchsorted(basis.config_bits, partners)
    np.add.at(h, (rows, cols), amp)


def _add_x(h: np.ndarray, basis: SectorBasis, site: int, coeff: float) -> None:
    """coeff * sigma_x on ``site``; requires the full-space basis."""
    bits = basis.config_bits
    cols = np.arange(bits.size)
    partners = bits ^ (1 << site)
    rows = np.searchsorted(basis.config_bits, partners)
    np.add.at(h, (rows, cols), coeff)


def build_nn_xxx(params: NnXxxParams, sector: SectorBasis) -> HamiltonianMatrix:
    """Nearest plus next-nearest Heisenberg chain, projected to ``sector``."""
    if sector.n_sites != params.n_sites:
        raise ParameterError(
            f"sector is over {sector.n_sites} sites, params specify {params.n_sites}"
        )
    n = params.n_sites
    d = sector.size
    h = np.zeros((d, d))
    bits = sector.config_bits
    _add_z(h, bits, 0, params.b_z_system)
    for i in range(n - 1):
        _add_zz(h, bits, i, i + 1, params.j)
        _add_flipflop(h, sector, i, i + 1, 2.0 * params.j)
    if params.j_prime != 0.0:
        for i in range(n - 2):
            _add_zz(h, bits, i, i + 2, params.j_prime)
            _add_flipflop(h, sector, i, i + 2, 2.0 * params.j_prime)
    return HamiltonianMatrix(sector, h)


def build_mixed_field_chain(params: MixedFieldChainParams) -> HamiltonianMatrix:
    """Mixed-field chain on the full 2^N space (no excitation conservation)."""
    basis = enumerate_sector(params.n_sites, "all")
    n = params.n_sites
    d = basis.size
    h = np.zeros((d, d))
    bits = basis.config_bits
    _add_z(h, bits, 0, params.b_z_system)
    for site in range(1, n):
        if params.b_z_bath != 0.0:
            _add_z(h, bits, site, params.b_z_bath)
        if params.b_x_bath != 0.0:
            _add_x(h, basis, site, params.b_x_bath)
    for site in range(1, n - 1):
        _add_zz(h, bits, site, site + 1, params.j_z)
        _add_flipflop(h, basis, site, site + 1, params.j_x)
    _add_flipflop(h, basis, 0, params.attach_site - 1, params.j_x_sb)
    return HamiltonianMatrix(basis, h)


def build_mixed_field_bath(params: MixedFieldChainParams) -> HamiltonianMatrix:
    """The bath part of the mixed-field chain alone, on its own 2^(N-1) space.

    Bath site k (chain site k+1) maps to bit k of the bath basis.  Used to
    prepare bath-eigenstate initial states.
    """
    nb = params.n_sites - 1
    basis = enumerate_sector(nb, "all")
    h = np.zeros((basis.size, basis.size))
    bits = basis.config_bits
    for site in range(nb):
        if params.b_z_bath != 0.0:
            _add_z(h, bits, site, params.b_z_bath)
        if params.b_x_bath != 0.0:
            _add_x(h, basis, site, params.b_x_bath)
    for site in range(nb - 1):
        _add_zz(h, bits, site, site + 1, params.j_z)
        _add_flipflop(h, basis, site, site + 1, params.j_x)
    return HamiltonianMatrix(basis, h)


def embed_bath_vector(bath_vec: np.ndarray, n_sites: int) -> np.ndarray:
    """Tensor |up>_system with a bath vector, as a full 2^N product-basis vector.

    ``bath_vec[b]`` is the amplitude of the bath bit pattern b over sites
    1..n_sites-1; the returned vector has support only on configurations with
    site 0 up.
    """
    nb = n_sites - 1
    if bath_vec.size != (1 << nb):
        raise ParameterError(
            f"bath vector has size {bath_vec.size}, expected {1 << nb}"
        )
    full = np.zeros(1 << n_sites)
    full[1 + (np.arange(1 << nb) << 1)] = bath_vec
    return full


def build_spin_boson(params: SpinBosonParams) -> HamiltonianMatrix:
    """Rotating-wave spin-boson Hamiltonian on the single-excitation manifold.

    Diagonal: +omega_z/2 for |up,0>, -omega_z/2 + n*omega_0 for |down,1_n>;
    off-diagonal g_n couples |up,0> to |down,1_n>.
    """
    basis = SpinBosonBasis(params.n_modes)
    d = basis.size
    h = np.zeros((d, d))
    modes = params.omega_0 * np.arange(1, params.n_modes + 1)
    h[0, 0] = 0.5 * params.omega_z
    h[np.arange(1, d), np.arange(1, d)] = -0.5 * params.omega_z + modes
    g = params.couplings()
    h[0, 1:] = g
    h[1:, 0] = g
    return HamiltonianMatrix(basis, h)


def sigma_z_system_diag(basis: SectorBasis | SpinBosonBasis) -> np.ndarray:
    """Product-basis diagonal of sigma_z on the system spin (+1 up, -1 down)."""
    if isinstance(basis, SpinBosonBasis):
        return np.where(basis.up_mask(), 1.0, -1.0)
    return np.where(basis.up_mask(0), 1.0, -1.0)


def total_sz_diag(basis: SectorBasis) -> np.ndarray:
    """Product-basis diagonal of the total magnetization sum_i sigma_z_i."""
    bits = basis.config_bits
    count = np.zeros_like(bits)
    work = bits.copy()
    while np.any(work):
        count += work & 1
        work >>= 1
    return 2.0 * count - basis.n_sites
