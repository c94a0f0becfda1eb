"""Dense symmetric eigendecomposition and eigenbasis utilities.

Eigenvectors are stored column-wise, ``vectors[a, mu] = <phi_a|psi_mu>``, so
the expansion coefficients of product state a over the eigenbasis are the
row ``vectors[a, :]``.  Every eigenvector sign is fixed by making its
largest-magnitude component positive, which keeps repeated runs bitwise
stable on a given platform.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .basis import SectorBasis, SpinBosonBasis
from .errors import DiagonalizationError, EmptyWindowError, ParameterError
from .models import HamiltonianMatrix

#: Default degeneracy tolerance, relative to the spectral width.
DEGENERACY_TOL_REL = 1e-10


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenvalues and the orthonormal eigenvector matrix."""

    energies: np.ndarray
    vectors: np.ndarray
    basis: SectorBasis | SpinBosonBasis | None = None

    def __post_init__(self) -> None:
        self.energies.setflags(write=False)
        self.vectors.setflags(write=False)

    @property
    def dimension(self) -> int:
        return self.energies.size

    @property
    def spectral_width(self) -> float:
        return float(self.energies[-1] - self.energies[0])


@dataclass(frozen=True)
class ObservableMatrix:
    """An observable diagonal in the product basis, rotated to the eigenbasis."""

    diag_product_basis: np.ndarray
    eigen_matrix: np.ndarray

    def __post_init__(self) -> None:
        self.diag_product_basis.setflags(write=False)
        self.eigen_matrix.setflags(write=False)

    @property
    def eigen_diag(self) -> np.ndarray:
        return np.diagonal(self.eigen_matrix)


@dataclass(frozen=True)
class DegeneracyReport:
    """Nearly-degenerate level groups and coinciding energy gaps."""

    groups: tuple[tuple[int, ...], ...]
    gap_collisions: int
    tolerance: float

    @property
    def n_degenerate_levels(self) -> int:
        return sum(len(g) for g in self.groups)


@dataclass(frozen=True)
class SpectralDensity:
    """Histogram estimate of the density of states."""

    bin_centers: np.ndarray
    counts: np.ndarray
    density: np.ndarray = field(repr=False)


def diagonalize(h: HamiltonianMatrix | np.ndarray) -> EigenSystem:
    """Full eigendecomposition of a dense real-symmetric matrix.

    Returns ascending eigenvalues and sign-fixed orthonormal eigenvectors;
    raises DiagonalizationError if the LAPACK driver does not converge.
    """
    if isinstance(h, HamiltonianMatrix):
        matrix, basis = h.entries, h.basis
    else:
        matrix, basis = np.asarray(h), None
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 1:
        raise ParameterError(f"expected a square matrix, got shape {matrix.shape}")
    try:
        energies, vectors = np.linalg.eigh(matrix)
    except np.linalg.LinAlgError as exc:
        raise DiagonalizationError(
            f"eigensolver failed at dimension {matrix.shape[0]}: {exc}"
        ) from exc
    vectors = np.ascontiguousarray(vectors)
    # Fix each eigenvector sign: largest-magnitude component made positive.
    lead = np.abs(vectors).argmax(axis=0)
    signs = np.sign(vectors[lead, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    vectors *= signs
    return EigenSystem(energies, vectors, basis)


def rotate_observable(
    diag: np.ndarray, eigensystem: EigenSystem
) -> ObservableMatrix:
    """Rotate a product-basis-diagonal observable into the eigenbasis.

    O_mu_nu = sum_a c_mu(a) diag(a) c_nu(a).  The result is made exactly
    symmetric; trace and Frobenius norm are preserved up to rounding.
    """
    diag = np.asarray(diag, dtype=float)
    c = eigensystem.vectors
    if diag.size != c.shape[0]:
        raise ParameterError(
            f"diagonal has length {diag.size}, basis dimension is {c.shape[0]}"
        )
    rotated = c.T @ (diag[:, None] * c)
    rotated = 0.5 * (rotated + rotated.T)
    return ObservableMatrix(diag, rotated)


def detect_degeneracies(
    energies: np.ndarray, tol_rel: float = DEGENERACY_TOL_REL
) -> DegeneracyReport:
    """Group levels closer than tol_rel * spectral width; count gap collisions.

    Levels are clustered by adjacent spacing below the tolerance; singleton
    clusters are omitted.  gap_collisions counts adjacent coincidences in the
    sorted list of all pairwise gaps E_nu - E_mu (mu < nu) under the same
    tolerance, i.e. a cluster of m equal gaps contributes m - 1.
    """
    energies = np.asarray(energies, dtype=float)
    d = energies.size
    width = float(energies[-1] - energies[0]) if d > 1 else 0.0
    tol = tol_rel * width
    groups: list[tuple[int, ...]] = []
    if d > 1:
        close = np.diff(energies) <= tol
        start = 0
        for i in range(1, d + 1):
            if i == d or not close[i - 1]:
                if i - start >= 2:
                    groups.append(tuple(range(start, i)))
                start = i
    collisions = 0
    if d > 2:
        gaps = (energies[None, :] - energies[:, None])[
            np.triu_indices(d, k=1)
        ]
        gaps.sort()
        collisions = int(np.count_nonzero(np.diff(gaps) <= tol))
    return DegeneracyReport(tuple(groups), collisions, tol)


def microcanonical_average(
    obs: ObservableMatrix,
    eigensystem: EigenSystem,
    e_center: float,
    window: float,
) -> float:
    """Unweighted mean of O_mu_mu over levels within window/2 of e_center."""
    if window <= 0:
        raise ParameterError(f"window must be positive, got {window}")
    inside = np.abs(eigensystem.energies - e_center) <= 0.5 * window
    if not np.any(inside):
        raise EmptyWindowError(
            f"no levels within {window / 2} of E = {e_center}; enlarge the window"
        )
    return float(np.mean(obs.eigen_diag[inside]))


def density_of_states(energies: np.ndarray, n_bins: int) -> SpectralDensity:
    """Histogram of the spectrum; counts sum to the dimension."""
    if n_bins < 1:
        raise ParameterError(f"n_bins must be >= 1, got {n_bins}")
    energies = np.asarray(energies, dtype=float)
    counts, edges = np.histogram(energies, bins=n_bins)
    centers = 0.5 * (edges[:-1] + edges[1:])
    widths = np.diff(edges)
    return SpectralDensity(centers, counts, counts / widths)
