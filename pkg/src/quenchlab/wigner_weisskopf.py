"""Closed-form coefficients, IPR, and fluctuations for the constant-coupling
spin-boson model, used as an analytic oracle for the numerical pipeline.

The discrete level |up,0> coupled with constant strength g to a ladder of
modes decays at the rate gamma = 2 pi g^2 / omega_0.  Eigenstate weights are
Lorentzian around the resonant level; all energies and mode frequencies in
this module are measured relative to the unperturbed |up,0> level (so a
numerical spectrum must be shifted by that level before comparison).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi

import numpy as np

from .errors import ParameterError

_POLE_GUARD = 1e-12


@dataclass(frozen=True)
class WwParams:
    """Coupling g, decay rate gamma, and mode spacing omega_0.

    gamma is a derived quantity and must equal 2 pi g^2 / omega_0; the
    constructor checks the consistency to 1e-12 relative.
    """

    g: float
    gamma: float
    omega_0: float

    def __post_init__(self) -> None:
        if self.omega_0 <= 0:
            raise ParameterError(f"omega_0 must be positive, got {self.omega_0}")
        expected = 2.0 * pi * self.g**2 / self.omega_0
        if abs(self.gamma - expected) > 1e-12 * max(abs(expected), 1e-300):
            raise ParameterError(
                f"gamma={self.gamma} inconsistent with 2 pi g^2/omega_0 = {expected}"
            )

    @classmethod
    def from_gamma(cls, gamma: float, omega_0: float) -> "WwParams":
        """Build the parameter set from the decay rate instead of g."""
        g = np.sqrt(gamma * omega_0 / (2.0 * pi))
        return cls(g=float(g), gamma=2.0 * pi * float(g) ** 2 / omega_0, omega_0=omega_0)


def ww_coefficients(
    params: WwParams, energies: np.ndarray, modes: np.ndarray
) -> np.ndarray:
    """Analytic eigenstate coefficients at the given (resonance-referenced)
    eigenenergies.

    Returns an array of shape (len(energies), 1 + len(modes)); column 0 is
    the |up,0> weight g / sqrt(g^2 + gamma^2/4 + E^2) and column n the
    |down,1_n> weight with the extra factor g / (E - mode_n).  Energies
    falling on a mode frequency are poles of the formula and rejected.
    """
    energies = np.asarray(energies, dtype=float)
    modes = np.asarray(modes, dtype=float)
    gaps = energies[:, None] - modes[None, :]
    if np.any(np.abs(gaps) < _POLE_GUARD * params.omega_0):
        bad = np.argwhere(np.abs(gaps) < _POLE_GUARD * params.omega_0)[0]
        raise ParameterError(
            f"energy index {bad[0]} coincides with mode {bad[1]}; "
            "perturb or exclude the level"
        )
    norm = np.sqrt(params.g**2 + 0.25 * params.gamma**2 + energies**2)
    table = np.empty((energies.size, modes.size + 1))
    table[:, 0] = params.g / norm
    table[:, 1:] = (params.g**2 / gaps) / norm[:, None]
    return table


def ww_ipr(omega_0: float, gamma: float) -> float:
    """Continuum-limit inverse participation ratio omega_0 / (pi gamma)."""
    if omega_0 <= 0 or gamma <= 0:
        raise ParameterError("omega_0 and gamma must be positive")
    return omega_0 / (pi * gamma)


def ww_fluctuations(omega_0: float, gamma: float) -> float:
    """Continuum-limit long-time fluctuations of sigma_z,
    4 omega_0^2/(pi gamma)^2 - 10 omega_0^3/(pi gamma)^3, which is close to
    4 IPR^2 for omega_0 << gamma."""
    if omega_0 <= 0 or gamma <= 0:
        raise ParameterError("omega_0 and gamma must be positive")
    x = omega_0 / (pi * gamma)
    return 4.0 * x**2 - 10.0 * x**3
