"""How closely observable matrix elements follow the correlated-quench form.

For a system observable diagonal in the local excitation number the exact
eigenbasis elements are

    O_mu_nu = Delta_O * eta_mu_nu + O_down * delta_mu_nu,
    eta_mu_nu = sum over up-block configurations a of c_mu(a) c_nu(a),

and the correlated quench replaces eta by the single initial-state term
c_mu(0) c_nu(0).  This module measures that replacement: the rank-1
residual of the observable, the off-block part of eta, the completeness
relation of the up/down blocks, and coarse-grained off-diagonal profiles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyWindowError, ParameterError
from .quench import QuenchState
from .spectral import EigenSystem, ObservableMatrix


@dataclass(frozen=True)
class AnsatzReport:
    """Residual statistics of the rank-1 plus identity form."""

    residual_fro: float
    max_abs_residual: float
    eta_max_offblock: float
    completeness_max_dev: float


@dataclass(frozen=True)
class OffDiagonalProfile:
    """Coarse-grained |O_mu_nu|^2 versus energy difference, within a shell."""

    omega_bin_centers: np.ndarray
    mean_sq: np.ndarray
    pair_counts: np.ndarray
    diag_bin_centers: np.ndarray
    diag_running_mean: np.ndarray
    diag_counts: np.ndarray


def eta_overlap(
    eigensystem: EigenSystem,
    spin_up_block: np.ndarray,
    mu: int,
    nu: int,
) -> float:
    """eta = sum over up-block configurations a of c_mu(a) c_nu(a)."""
    c = eigensystem.vectors
    block = np.asarray(spin_up_block)
    return float(np.sum(c[block, mu] * c[block, nu]))


def _completeness_deviation(c: np.ndarray, sample_pairs: int = 2000) -> float:
    """Max deviation of sum_a c_mu(a) c_nu(a) from delta_mu_nu.

    Exact over all pairs for small dimensions, sampled (including the full
    diagonal) above that.
    """
    d = c.shape[1]
    if d <= 1024:
        gram = c.T @ c
        return float(np.max(np.abs(gram - np.eye(d))))
    rng = np.random.default_rng(0)
    mu = rng.integers(0, d, size=sample_pairs)
    nu = rng.integers(0, d, size=sample_pairs)
    vals = np.einsum("am,am->m", c[:, mu], c[:, nu])
    dev = np.max(np.abs(vals - (mu == nu)))
    diag = np.einsum("am,am->m", c, c)
    return float(max(dev, np.max(np.abs(diag - 1.0))))


def ansatz_residual(
    obs: ObservableMatrix,
    state: QuenchState,
    eigensystem: EigenSystem,
    delta_o: float,
    o_down: float,
) -> AnsatzReport:
    """Residual of O against Delta_O c_mu c_nu + O_down delta_mu_nu.

    The observable must take exactly the two values o_down and
    o_down + delta_o on the product basis, split by the system-spin
    orientation.  Also reports the up/down completeness deviation and the
    largest off-block eta contribution.
    """
    if eigensystem.basis is None:
        raise ParameterError("eigensystem carries no basis")
    up = eigensystem.basis.up_mask() if hasattr(eigensystem.basis, "up_mask") else None
    if up is None:
        raise ParameterError("basis does not expose a system-spin mask")
    expected = np.where(up, o_down + delta_o, o_down)
    if not np.allclose(obs.diag_product_basis, expected, atol=1e-12):
        raise ParameterError(
            "observable is not of the system-diagonal two-value form "
            f"(o_down={o_down}, delta_o={delta_o})"
        )
    c = eigensystem.vectors
    coeffs = state.coeffs
    o = obs.eigen_matrix
    d = o.shape[0]
    model = delta_o * np.outer(coeffs, coeffs) + o_down * np.eye(d)
    residual = o - model
    o_norm = float(np.linalg.norm(o))
    rel = float(np.linalg.norm(residual)) / o_norm if o_norm > 0 else 0.0
    up_rows = np.nonzero(up)[0]
    eta_full = c[up_rows, :].T @ c[up_rows, :]
    offblock = eta_full - np.outer(coeffs, coeffs)
    return AnsatzReport(
        residual_fro=rel,
        max_abs_residual=float(np.max(np.abs(residual))),
        eta_max_offblock=float(np.max(np.abs(offblock))),
        completeness_max_dev=_completeness_deviation(c),
    )


def default_shell(state: QuenchState, energies: np.ndarray) -> tuple[float, float]:
    """Energy shell of mean +- one standard deviation of the quench energy."""
    w = state.coeffs**2
    mean = float(np.sum(w * energies))
    std = float(np.sqrt(np.sum(w * (energies - mean) ** 2)))
    return mean - std, mean + std


def offdiagonal_profile(
    obs: ObservableMatrix,
    eigensystem: EigenSystem,
    e_shell: tuple[float, float],
    omega_bins: int = 50,
) -> OffDiagonalProfile:
    """Bin |O_mu_nu|^2 by energy difference for pairs whose mean energy lies
    in the shell, plus a running mean of the diagonal over the spectrum."""
    energies = eigensystem.energies
    lo, hi = e_shell
    d = energies.size
    if np.count_nonzero((energies >= lo) & (energies <= hi)) < 2:
        raise EmptyWindowError(f"shell [{lo}, {hi}] contains fewer than 2 levels")
    iu, ju = np.triu_indices(d, k=1)
    mean_e = 0.5 * (energies[iu] + energies[ju])
    keep = (mean_e >= lo) & (mean_e <= hi)
    iu, ju = iu[keep], ju[keep]
    omega = energies[ju] - energies[iu]
    sq = obs.eigen_matrix[iu, ju] ** 2
    omega_max = float(np.max(omega)) if omega.size else 1.0
    edges = np.linspace(0.0, omega_max, omega_bins + 1)
    which = np.clip(np.digitize(omega, edges) - 1, 0, omega_bins - 1)
    counts = np.bincount(which, minlength=omega_bins)
    sums = np.bincount(which, weights=sq, minlength=omega_bins)
    with np.errstate(invalid="ignore"):
        mean_sq = np.where(counts > 0, sums / np.maximum(counts, 1), np.nan)
    centers = 0.5 * (edges[:-1] + edges[1:])
    diag_edges = np.linspace(energies[0], energies[-1], omega_bins + 1)
    diag_which = np.clip(np.digitize(energies, diag_edges) - 1, 0, omega_bins - 1)
    diag_counts = np.bincount(diag_which, minlength=omega_bins)
    diag_sums = np.bincount(diag_which, weights=obs.eigen_diag, minlength=omega_bins)
    with np.errstate(invalid="ignore"):
        diag_mean = np.where(diag_counts > 0, diag_sums / np.maximum(diag_counts, 1), np.nan)
    diag_centers = 0.5 * (diag_edges[:-1] + diag_edges[1:])
    return OffDiagonalProfile(
        omega_bin_centers=centers,
        mean_sq=mean_sq,
        pair_counts=counts,
        diag_bin_centers=diag_centers,
        diag_running_mean=diag_mean,
        diag_counts=diag_counts,
    )
