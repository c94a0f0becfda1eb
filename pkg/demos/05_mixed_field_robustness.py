"""Robustness without a conservation law: ground-state quench of a mixed-field chain.

The transverse bath field breaks excitation-number conservation, so nothing
forces a local observable onto the survival probability.  Starting from the
bath ground state restores the mechanism approximately: exciting the bath
costs energy, so finding the system up still implies the bath is (almost
certainly) unexcited.

The script runs the full-space chain at 8 and 10 sites from the bath ground
state and from a mid-spectrum bath eigenstate, prints the fluctuation
scaling and the rank-1 ansatz residuals, and plots sigma_z dynamics against
2 P0 - 1, which now agree only approximately.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import quenchlab as ql

OUT = Path(__file__).resolve().parent / "output"
OUT.mkdir(exist_ok=True)


def chain(n):
    return ql.MixedFieldChainParams(
        n_sites=n, b_z_system=0.8, b_x_bath=0.3, b_z_bath=0.0,
        j_x=1.0, j_z=0.1, j_x_sb=0.8, attach_site=5,
    )


def bath_state_point(n, index):
    params = chain(n)
    ham = ql.build_mixed_field_chain(params)
    eig = ql.diagonalize(ham)
    bath = ql.diagonalize(ql.build_mixed_field_bath(params))
    vector = ql.embed_bath_vector(bath.vectors[:, index], n)
    state = ql.prepare_quench(eig, vector)
    obs = ql.rotate_observable(ql.sigma_z_system_diag(ham.basis), eig)
    return eig, state, obs


ground_points, mid_points = [], []
for n in (8, 9, 10):
    eig, state, obs = bath_state_point(n, 0)
    ground_points.append((ql.ipr(state), ql.de_fluctuations(state, obs)))
    report = ql.ansatz_residual(obs, state, eig, delta_o=2.0, o_down=-1.0)
    print(
        f"N={n} ground-state quench: IPR {ground_points[-1][0]:.4f}, "
        f"delta2 {ground_points[-1][1]:.3e}, rank-1 residual {report.residual_fro:.3f}"
    )
    mid_index = 2 ** (n - 1) // 2
    eig, state, obs = bath_state_point(n, mid_index)
    mid_points.append((ql.ipr(state), ql.de_fluctuations(state, obs)))
    print(
        f"N={n} mid-spectrum quench:  IPR {mid_points[-1][0]:.4f}, "
        f"delta2 {mid_points[-1][1]:.3e}"
    )

slope_g, _, _ = ql.fit_loglog_slope(ground_points)
slope_m, _, _ = ql.fit_loglog_slope(mid_points)
print(f"ground-state quench slope: {slope_g:.2f} (near-quadratic)")
print(f"mid-spectrum quench slope: {slope_m:.2f} (ergodic reference)")

eig, state, obs = bath_state_point(10, 0)
times = np.linspace(0.0, 40.0, 800)
series = ql.expectation_series(state, obs, eig.energies, times)
p0 = ql.survival_probability_series(state, eig.energies, times)

fig, ax = plt.subplots(figsize=(7, 4))
ax.plot(times, series.values, lw=1.1, label=r"$\langle\sigma_z^{(S)}(t)\rangle$")
ax.plot(times, 2 * p0.values - 1, "--", lw=1.0, label=r"$2P_0(t)-1$")
ax.set_xlabel(r"$t\,J_x$")
ax.set_ylabel("observable")
ax.set_title("Ground-state quench without excitation conservation (N = 10)")
ax.legend(frameon=False)
fig.tight_layout()
fig.savefig(OUT / "mixed_field_robustness.png", dpi=150)
print(f"figure written to {OUT / 'mixed_field_robustness.png'}")
