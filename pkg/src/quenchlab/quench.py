"""Quench states, dephasing dynamics, and diagonal-ensemble diagnostics.

A quench state holds the expansion coefficients c_mu of an initial product
state over the eigenbasis.  All long-time quantities here are functions of
those coefficients and of the observable's eigenbasis matrix elements:

- survival probability      P0(t) = |sum_mu c_mu^2 exp(-i E_mu t)|^2
- expectation evolution     <O(t)> = sum_{mu,nu} c_mu c_nu exp(-i(E_mu-E_nu)t) O_mu_nu
- diagonal-ensemble average sum_mu c_mu^2 O_mu_mu
- long-time fluctuations    sum_{mu != nu} c_mu^2 c_nu^2 |O_mu_nu|^2
- two-time average          sum_{mu,nu} c_mu c_nu O_mu_mu O_mu_nu

The fluctuation and two-time formulas assume non-degenerate gaps and
energies respectively; pass a DegeneracyReport to get a warning attached
when that assumption is violated.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .basis import SpinConfiguration, locate
from .errors import ParameterError
from .spectral import DegeneracyReport, EigenSystem, ObservableMatrix

#: Time-grid block size for the series evaluators (memory control).
_BLOCK = 2048


@dataclass(frozen=True)
class QuenchState:
    """Eigenbasis expansion of an initial state, with bookkeeping."""

    coeffs: np.ndarray
    origin: str
    mean_energy: float
    product_vector: np.ndarray

    def __post_init__(self) -> None:
        self.coeffs.setflags(write=False)
        self.product_vector.setflags(write=False)

    @property
    def dimension(self) -> int:
        return self.coeffs.size


@dataclass(frozen=True)
class MomentVector:
    """Signed power sums I_n = sum_mu c_mu^n of the quench coefficients."""

    i2: float
    i3: float
    i4: float
    i6: float
    i8: float

    def as_dict(self) -> dict[str, float]:
        return {"i2": self.i2, "i3": self.i3, "i4": self.i4, "i6": self.i6, "i8": self.i8}


@dataclass(frozen=True)
class TimeSeries:
    """A sampled scalar signal on a strictly increasing time grid."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.times.size != self.values.size:
            raise ParameterError("times and values must have equal length")
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0):
            raise ParameterError("times must be strictly increasing")
        self.times.setflags(write=False)
        self.values.setflags(write=False)

    def mean(self) -> float:
        return float(np.mean(self.values))

    def variance(self) -> float:
        return float(np.var(self.values))


def prepare_quench(
    eigensystem: EigenSystem,
    origin: int | SpinConfiguration | np.ndarray,
) -> QuenchState:
    """Expand an initial state over the eigenbasis.

    ``origin`` may be an ordinal into the basis, a SpinConfiguration (located
    in the eigensystem's basis), or an explicit product-basis vector, which
    is normalized before expansion.
    """
    c = eigensystem.vectors
    d = c.shape[0]
    if isinstance(origin, SpinConfiguration):
        if eigensystem.basis is None:
            raise ParameterError("eigensystem carries no basis to locate the configuration in")
        index = locate(eigensystem.basis, origin)
        label = f"config:{origin.bits:#x}"
    elif isinstance(origin, (int, np.integer)):
        if not 0 <= origin < d:
            raise ParameterError(f"origin ordinal {origin} outside basis of size {d}")
        index = int(origin)
        label = f"ordinal:{index}"
    else:
        index = None
        label = "vector"
    if index is not None:
        product_vector = np.zeros(d)
        product_vector[index] = 1.0
        coeffs = c[index, :].copy()
    else:
        product_vector = np.asarray(origin, dtype=float)
        if product_vector.size != d:
            raise ParameterError(
                f"origin vector has size {product_vector.size}, basis dimension is {d}"
            )
        norm = float(np.linalg.norm(product_vector))
        if norm == 0.0:
            raise ParameterError("origin vector must be nonzero")
        product_vector = product_vector / norm
        coeffs = c.T @ product_vector
    coeffs = coeffs / np.linalg.norm(coeffs)
    mean_energy = float(np.sum(coeffs**2 * eigensystem.energies))
    return QuenchState(coeffs, label, mean_energy, product_vector)


def ipr(state: QuenchState) -> float:
    """Inverse participation ratio sum_mu c_mu^4 of the initial state."""
    return float(np.sum(state.coeffs**4))


def moments(state: QuenchState) -> MomentVector:
    """Signed coefficient power sums I_n for n = 2, 3, 4, 6, 8."""
    c = state.coeffs
    return MomentVector(
        i2=float(np.sum(c**2)),
        i3=float(np.sum(c**3)),
        i4=float(np.sum(c**4)),
        i6=float(np.sum(c**6)),
        i8=float(np.sum(c**8)),
    )


def survival_probability_series(
    state: QuenchState, energies: np.ndarray, times: np.ndarray
) -> TimeSeries:
    """P0(t) on a time grid; P0(0) = 1 and 0 <= P0 <= 1 up to rounding."""
    times = np.asarray(times, dtype=float)
    weights = state.coeffs**2
    values = np.empty(times.size)
    for lo in range(0, times.size, _BLOCK):
        block = times[lo : lo + _BLOCK]
        amp = np.exp(-1j * np.outer(block, energies)) @ weights
        values[lo : lo + block.size] = np.abs(amp) ** 2
    return TimeSeries(times, values)


def expectation_series(
    state: QuenchState,
    obs: ObservableMatrix,
    energies: np.ndarray,
    times: np.ndarray,
) -> TimeSeries:
    """<O(t)> on a time grid via phase vectors and one matrix contraction."""
    o = obs.eigen_matrix
    if o.shape[0] != state.dimension:
        raise ParameterError(
            f"observable dimension {o.shape[0]} != state dimension {state.dimension}"
        )
    times = np.asarray(times, dtype=float)
    c = state.coeffs
    values = np.empty(times.size)
    for lo in range(0, times.size, _BLOCK):
        block = times[lo : lo + _BLOCK]
        u = c[:, None] * np.exp(-1j * np.outer(energies, block))
        values[lo : lo + block.size] = np.einsum(
            "db,db->b", u, o @ u.conj()
        ).real
    return TimeSeries(times, values)


def de_average(state: QuenchState, obs: ObservableMatrix) -> float:
    """Diagonal-ensemble (infinite-time) average sum_mu c_mu^2 O_mu_mu."""
    return float(np.sum(state.coeffs**2 * obs.eigen_diag))


def _warn_on(report: DegeneracyReport | None, what: str) -> None:
    if report is None:
        return
    if what == "gaps" and report.gap_collisions > 0:
        warnings.warn(
            f"{report.gap_collisions} coinciding energy gaps detected; the "
            "dephasing formula assumes non-degenerate gaps",
            stacklevel=3,
        )
    if what == "levels" and report.groups:
        warnings.warn(
            f"{len(report.groups)} degenerate level groups detected; the "
            "dephasing formula assumes a non-degenerate spectrum",
            stacklevel=3,
        )


def de_fluctuations(
    state: QuenchState,
    obs: ObservableMatrix,
    degeneracies: DegeneracyReport | None = None,
) -> float:
    """Infinite-time variance sum_{mu != nu} c_mu^2 c_nu^2 |O_mu_nu|^2."""
    _warn_on(degeneracies, "gaps")
    w = state.coeffs**2
    sq = obs.eigen_matrix**2
    total = w @ sq @ w - float(np.sum(w**2 * obs.eigen_diag**2))
    return float(total)


def two_time_average(
    state: QuenchState,
    obs: ObservableMatrix,
    degeneracies: DegeneracyReport | None = None,
) -> float:
    """Long-time average of <O(t) O>: sum_{mu,nu} c_mu c_nu O_mu_mu O_mu_nu."""
    _warn_on(degeneracies, "levels")
    c = state.coeffs
    return float(np.sum(c * obs.eigen_diag * (obs.eigen_matrix @ c)))


def survival_probability_observable(state: QuenchState) -> ObservableMatrix:
    """The initial-state projector as an observable, (P0)_mu_nu = c_mu c_nu.

    The product-basis diagonal stored alongside is the projector's diagonal
    |<phi_a|psi(0)>|^2, which carries the full trace; the projector's
    product-basis off-diagonals never enter the dephasing formulas.
    """
    c = state.coeffs
    return ObservableMatrix(state.product_vector**2, np.outer(c, c))
