"""Product-state bases with stable index maps.

Spin configurations are encoded as integer bit patterns, bit i = 1 meaning
site i is in the up state, so the excitation count of a configuration is its
population count.  Site 0 is the system spin throughout; sites 1..N-1 form
the bath.  Three bases are provided:

- the full 2^N product space,
- fixed-magnetization sectors (fixed excitation count k, dimension C(N, k)),
- the spin-boson single-excitation manifold {|up,0>, |down,1_n>}.

Configurations are always ordered by ascending bit-pattern value, which makes
indices a pure function of the inputs and therefore reproducible across runs
and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import BasisLookupError, CapacityError, ParameterError

#: Hard cap on chain length; the full space at 24 sites is ~16M configurations.
MAX_SITES = 24


def _popcount(bits: np.ndarray | int) -> np.ndarray | int:
    """Population count, vectorized over integer arrays."""
    if isinstance(bits, (int, np.integer)):
        return int(bits).bit_count()
    bits = np.asarray(bits)
    count = np.zeros_like(bits)
    work = bits.copy()
    while np.any(work):
        count += work & 1
        work >>= 1
    return count


@dataclass(frozen=True)
class SpinConfiguration:
    """A single product state of n_sites spins, bit i = 1 for site i up."""

    bits: int
    n_sites: int

    def __post_init__(self) -> None:
        if not 0 < self.n_sites <= MAX_SITES:
            raise ParameterError(f"n_sites must be in 1..{MAX_SITES}, got {self.n_sites}")
        if not 0 <= self.bits < (1 << self.n_sites):
            raise ParameterError(
                f"bits {self.bits:#x} out of range for {self.n_sites} sites"
            )

    @property
    def n_excitations(self) -> int:
        return self.bits.bit_count()

    def site_up(self, site: int) -> bool:
        return bool((self.bits >> site) & 1)

    def __repr__(self) -> str:
        pattern = "".join(
            "u" if self.site_up(i) else "d" for i in range(self.n_sites)
        )
        return f"SpinConfiguration({pattern})"


class SectorBasis:
    """Ordered basis of spin configurations, either a fixed-k sector or all 2^N.

    ``config_bits`` is a strictly increasing int64 array; ``locate`` inverts
    positional access.  Immutable after construction and safe to share across
    workers.
    """

    def __init__(self, n_sites: int, n_excitations: int | str, config_bits: np.ndarray):
        self.n_sites = n_sites
        self.n_excitations = n_excitations
        self.config_bits = config_bits
        self.config_bits.setflags(write=False)
        self._site0_up = ((config_bits & 1) == 1)
        self._site0_up.setflags(write=False)

    @property
    def size(self) -> int:
        return int(self.config_bits.size)

    def __len__(self) -> int:
        return self.size

    def config(self, index: int) -> SpinConfiguration:
        """The configuration stored at ordinal ``index``."""
        return SpinConfiguration(int(self.config_bits[index]), self.n_sites)

    def up_mask(self, site: int = 0) -> np.ndarray:
        """Boolean mask of configurations with ``site`` in the up state."""
        if site == 0:
            return self._site0_up
        return ((self.config_bits >> site) & 1) == 1

    def locate_bits(self, bits: int | np.ndarray) -> int | np.ndarray:
        """Ordinal(s) of raw bit pattern(s); assumes membership (use locate to check)."""
        idx = np.searchsorted(self.config_bits, bits)
        return int(idx) if np.isscalar(bits) or isinstance(bits, int) else idx

    def __repr__(self) -> str:
        return (
            f"SectorBasis(n_sites={self.n_sites}, "
            f"n_excitations={self.n_excitations}, size={self.size})"
        )


def enumerate_sector(n_sites: int, n_excitations: int | str) -> SectorBasis:
    """Enumerate a fixed-excitation sector (or the full space for "all").

    Configurations are listed by ascending bit-pattern value.  The sector of
    k excitations has dimension C(n_sites, k).
    """
    if not isinstance(n_sites, (int, np.integer)) or n_sites < 1:
        raise ParameterError(f"n_sites must be a positive integer, got {n_sites!r}")
    if n_sites > MAX_SITES:
        raise CapacityError(
            f"n_sites={n_sites} exceeds the supported maximum {MAX_SITES}"
        )
    if n_excitations == "all":
        bits = np.arange(1 << n_sites, dtype=np.int64)
        return SectorBasis(int(n_sites), "all", bits)
    k = n_excitations
    if not isinstance(k, (int, np.integer)) or not 0 <= k <= n_sites:
        raise ParameterError(
            f"n_excitations must be in 0..{n_sites} or 'all', got {n_excitations!r}"
        )
    size = comb(n_sites, int(k))
    bits = np.empty(size, dtype=np.int64)
    if k == 0:
        bits[0] = 0
    else:
        # Gosper's hack walks same-popcount patterns in ascending order.
        state = (1 << int(k)) - 1
        for i in range(size):
            bits[i] = state
            lowest = state & -state
            ripple = state + lowest
            state = ripple | (((state ^ ripple) >> 2) // lowest)
    return SectorBasis(int(n_sites), int(k), bits)


def locate(basis: SectorBasis, config: SpinConfiguration | int) -> int:
    """Ordinal of ``config`` in ``basis``; raises BasisLookupError if absent."""
    bits = config.bits if isinstance(config, SpinConfiguration) else int(config)
    idx = int(np.searchsorted(basis.config_bits, bits))
    if idx >= basis.size or int(basis.config_bits[idx]) != bits:
        raise BasisLookupError(
            f"configuration {bits:#x} is not in {basis!r}"
        )
    return idx


class SpinBosonBasis:
    """Single-excitation manifold of a spin coupled to N boson modes.

    Ordinal 0 is |up, vacuum>; ordinal n (1..N) is |down, one boson in mode n>.
    """

    def __init__(self, n_modes: int):
        if not isinstance(n_modes, (int, np.integer)) or n_modes < 2:
            raise ParameterError(f"n_modes must be an integer >= 2, got {n_modes!r}")
        self.n_modes = int(n_modes)

    @property
    def size(self) -> int:
        return self.n_modes + 1

    def __len__(self) -> int:
        return self.size

    def up_mask(self) -> np.ndarray:
        """Boolean mask selecting the single spin-up basis state."""
        mask = np.zeros(self.size, dtype=bool)
        mask[0] = True
        return mask

    def __repr__(self) -> str:
        return f"SpinBosonBasis(n_modes={self.n_modes})"
