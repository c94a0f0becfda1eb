"""Out-of-time-ordered correlators for pure initial states.

F(t) = <W(t) V W(t) V> is evaluated in the eigenbasis with phase vectors;
its infinite-time average is assembled exactly (given non-degenerate
energies and gaps) from three dephasing contractions,

    Fbar = sum_{m,n} c_m c_n [ F1_mn + F2_mn - F3_mn ],
    F1_mn = W_mm sum_b V_mb W_bb V_bn,
    F2_mn = (sum_b W_mb^2 V_bb) V_mn         restricted by n = m pairing,
    F3_mn = W_mm^2 V_mm V_mn,

which reduces to vector/matrix products costing O(D^2).  A closed-form
prediction in terms of the observable scalars (O_down, Delta_O) and the
coefficient moments I_4, I_8 is provided for observables of the rank-1 plus
identity form O_mn = Delta_O c_m c_n + O_down delta_mn.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .models import sigma_z_system_diag
from .quench import (
    MomentVector,
    QuenchState,
    TimeSeries,
    _warn_on,
    moments,
    survival_probability_observable,
)
from .spectral import DegeneracyReport, EigenSystem, ObservableMatrix, rotate_observable

_BLOCK = 1024


@dataclass(frozen=True)
class PauliObservablePair:
    """Two system observables W, V with their up/down scalars.

    delta_w = W_upup - W_downdown; for the system sigma_z both observables
    have (w_down, delta_w) = (-1, 2).
    """

    w: ObservableMatrix
    v: ObservableMatrix
    w_down: float
    delta_w: float
    v_down: float
    delta_v: float


@dataclass(frozen=True)
class OtocSeries:
    """F(t) samples: real part plus the per-point imaginary residual."""

    times: np.ndarray
    values: np.ndarray
    imag_residual: np.ndarray

    @property
    def max_imag_residual(self) -> float:
        return float(np.max(self.imag_residual)) if self.imag_residual.size else 0.0

    def as_time_series(self) -> TimeSeries:
        return TimeSeries(self.times, self.values)


@dataclass(frozen=True)
class OtocResult:
    """Long-time OTOC summary for one state/observable pair."""

    f_series: OtocSeries | None
    f_bar_ed: float
    f_bar_theory: float

    @property
    def otoc_bar(self) -> float:
        return 2.0 * (1.0 - self.f_bar_ed)


def sigma_z_pair(eigensystem: EigenSystem) -> PauliObservablePair:
    """W = V = system sigma_z as an eigenbasis pair."""
    if eigensystem.basis is None:
        raise ParameterError("eigensystem carries no basis")
    obs = rotate_observable(sigma_z_system_diag(eigensystem.basis), eigensystem)
    return PauliObservablePair(obs, obs, w_down=-1.0, delta_w=2.0, v_down=-1.0, delta_v=2.0)


def survival_pair(state: QuenchState) -> PauliObservablePair:
    """W = V = the initial-state projector, which is exactly rank-1 in the
    eigenbasis with scalars (O_down, Delta_O) = (0, 1)."""
    obs = survival_probability_observable(state)
    return PauliObservablePair(obs, obs, w_down=0.0, delta_w=1.0, v_down=0.0, delta_v=1.0)


def otoc_series(
    state: QuenchState,
    pair: PauliObservablePair,
    eigensystem: EigenSystem,
    times: np.ndarray,
) -> OtocSeries:
    """F(t) = <W(t) V W(t) V> over a time grid.

    Each point costs two phase rotations and three matrix-vector products;
    the real part is returned and the imaginary residual recorded.
    """
    w = pair.w.eigen_matrix
    v = pair.v.eigen_matrix
    c = state.coeffs
    if w.shape[0] != c.size or v.shape[0] != c.size:
        raise ParameterError("observable and state dimensions disagree")
    times = np.asarray(times, dtype=float)
    energies = eigensystem.energies
    vc = v @ c
    values = np.empty(times.size)
    residual = np.empty(times.size)
    for lo in range(0, times.size, _BLOCK):
        block = times[lo : lo + _BLOCK]
        phase = np.exp(-1j * np.outer(energies, block))
        x = phase * vc[:, None]
        y = phase.conj() * (w @ x)
        x = phase * (v @ y)
        y = phase.conj() * (w @ x)
        f = c @ y
        values[lo : lo + block.size] = f.real
        residual[lo : lo + block.size] = np.abs(f.imag)
    return OtocSeries(times, values, residual)


def otoc_time_average_ed(
    state: QuenchState,
    pair: PauliObservablePair,
    degeneracies: DegeneracyReport | None = None,
) -> float:
    """Exact dephasing average of F(t) via diagonal-extraction contractions."""
    _warn_on(degeneracies, "levels")
    _warn_on(degeneracies, "gaps")
    w = pair.w.eigen_matrix
    v = pair.v.eigen_matrix
    c = state.coeffs
    w_diag = pair.w.eigen_diag
    v_diag = pair.v.eigen_diag
    vc = v @ c
    f1 = (c * w_diag) @ (v @ (w_diag * vc))
    f2 = np.sum(c * ((w**2) @ v_diag) * vc)
    f3 = np.sum(c * w_diag**2 * v_diag * vc)
    return float(f1 + f2 - f3)


def otoc_theory(
    w_down: float,
    delta_w: float,
    v_down: float,
    delta_v: float,
    mom: MomentVector,
) -> float:
    """Closed-form long-time F for rank-1 plus identity observables.

    Depends on the state only through I_4 (the IPR) and I_8; the constant
    part is what survives in the large-system limit.
    """
    i4 = mom.i4
    i8 = mom.i8
    constant = (
        w_down**2 * v_down**2
        + 2.0 * w_down**2 * delta_v * v_down
        + w_down**2 * delta_v**2
    )
    # The delta_w * w_down * delta_v**2 term is linear in delta_w; a
    # delta_w**2 reading of it breaks the exact rank-1 identity pinned in
    # the tests.
    linear = (
        4.0 * delta_w * w_down * delta_v * v_down
        + 2.0 * delta_w * w_down * v_down**2
        + 2.0 * delta_w * w_down * delta_v**2
        + delta_w**2 * v_down**2
        + delta_w**2 * delta_v * v_down
    )
    quadratic = 2.0 * delta_w**2 * delta_v * v_down + 2.0 * delta_w**2 * delta_v**2
    correction = delta_w**2 * delta_v**2 + delta_w**2 * delta_v * v_down
    return float(constant + i4 * linear + i4**2 * quadratic - i8 * correction)


def otoc_result(
    state: QuenchState,
    pair: PauliObservablePair,
    eigensystem: EigenSystem,
    times: np.ndarray | None = None,
    degeneracies: DegeneracyReport | None = None,
) -> OtocResult:
    """Bundle the series (optional), the exact dephasing average, and the
    closed-form prediction evaluated with the state's own moments."""
    series = None
    if times is not None:
        series = otoc_series(state, pair, eigensystem, times)
    f_ed = otoc_time_average_ed(state, pair, degeneracies)
    f_th = otoc_theory(
        pair.w_down, pair.delta_w, pair.v_down, pair.delta_v, moments(state)
    )
    return OtocResult(series, f_ed, f_th)
