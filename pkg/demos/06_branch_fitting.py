"""Recovering coupling constants from anticrossing branch positions.

Generates a dispersion map, extracts the per-row resonance peaks, and
fits the eigenvalue branch model to recover the coherent and dissipative
coupling strengths from frequency data alone.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cmt_lab import (
    FitResult,
    FrequencyGrid,
    SystemParams,
    branch_dataset,
    branch_model_frequencies,
    dispersion_map,
    effective_params,
    fit_coupling,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

base = dict(omega_a=4.22, omega_b=4.22, alpha=0.001, beta=0.001,
            gamma=0.01, kappa=0.001)
truth = SystemParams(**base, j=0.05, big_gamma=0.0)
eff = effective_params(truth)

dmap = dispersion_map(truth, FrequencyGrid(3.94, 4.50, 57), FrequencyGrid(3.84, 4.59, 3001))
data = branch_dataset(dmap, min_prominence=0.02)
init = FitResult(j_hat=0.03, gamma_eff_hat=0.01, detuning_map=(0.9, 0.4))
fit = fit_coupling(data, init, omega_a=truth.omega_a,
                   alpha_eff=eff.alpha_eff, beta_eff=eff.beta_eff)

print(f"true    j = {truth.j:.4f}, gamma_eff = {eff.gamma_eff:.6f}")
print(f"fitted  j = {fit.j_hat:.4f}, gamma_eff = {fit.gamma_eff_hat:.6f}")
print(f"residual rms = {fit.residual_rms:.2e} GHz, converged = {fit.converged}, "
      f"iterations = {fit.iterations}")

slope, intercept = fit.detuning_map
f_plus, f_minus = branch_model_frequencies(
    data.control, fit.j_hat, fit.gamma_eff_hat, slope, intercept,
    truth.omega_a, eff.alpha_eff, eff.beta_eff)
fig, ax = plt.subplots(figsize=(7, 4.5))
ax.plot(data.control, data.freq_low, "o", ms=4, label="extracted peaks")
ax.plot(data.control, data.freq_high, "o", ms=4, color="C0")
ax.plot(data.control, f_plus, "-", color="C1", label="fitted branches")
ax.plot(data.control, f_minus, "-", color="C1")
ax.set_xlabel("control value (mode-B frequency, GHz)")
ax.set_ylabel("resonance frequency (GHz)")
ax.set_title("anticrossing branch fit")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "06_branch_fit.png", dpi=150)
print(f"wrote {OUT}/06_branch_fit.png")
