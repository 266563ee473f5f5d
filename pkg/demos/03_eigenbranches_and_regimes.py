"""Complex eigenvalue branches and regime classification.

Plots the real parts (dispersion) and imaginary parts (linewidths) of the
two hybrid branches along a mode-B sweep for both coupling regimes, then
classifies each sweep.  Level repulsion: real parts avoid while the
linewidths cross.  Level attraction: real parts touch at the two
boundary points of the negative-discriminant band while the linewidths
stay apart.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from cmt_lab import FrequencyGrid, SystemParams, classify_numeric, eigenbranches

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

base = dict(omega_a=4.22, omega_b=4.22, alpha=0.001, beta=0.001,
            gamma=0.01, kappa=0.001)
plot_grid = FrequencyGrid(3.84, 4.59, 1501)
classify_grid = FrequencyGrid(3.84, 4.59, 150001)

fig, axes = plt.subplots(2, 2, figsize=(11, 7), sharex=True)
cases = [
    (SystemParams(**base, j=0.05, big_gamma=0.0), "coherent coupling"),
    (SystemParams(**base, j=0.0, big_gamma=0.05), "dissipative coupling"),
]
for col, (p, title) in enumerate(cases):
    br = eigenbranches(p, plot_grid)
    wb = plot_grid.points
    axes[0, col].plot(wb, br.e_plus.real, label="Re E+")
    axes[0, col].plot(wb, br.e_minus.real, label="Re E-")
    axes[1, col].plot(wb, br.e_plus.imag, label="Im E+")
    axes[1, col].plot(wb, br.e_minus.imag, label="Im E-")
    axes[0, col].set_title(title)
    axes[1, col].set_xlabel("mode-B frequency (GHz)")

    label = classify_numeric(eigenbranches(p, classify_grid))
    print(f"{title}: {label.regime.value}")
    print(f"  min real gap {label.min_real_gap:.3e}, min imag gap {label.min_imag_gap:.3e}")
    if label.crossing_detunings:
        points = ", ".join(f"{p.omega_a - x:.4f}" for x in label.crossing_detunings)
        print(f"  real-part touch points at omega_b = {points} GHz")
        for x in label.crossing_detunings:
            axes[0, col].axvline(p.omega_a - x, ls=":", c="gray")

axes[0, 0].set_ylabel("dispersion (GHz)")
axes[1, 0].set_ylabel("linewidth part (GHz)")
for ax in axes.flat:
    ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig(OUT / "03_eigenbranches.png", dpi=150)
print(f"wrote {OUT}/03_eigenbranches.png")
