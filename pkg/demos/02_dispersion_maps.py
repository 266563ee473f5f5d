"""Dispersion maps: |s21| versus (swept mode-B frequency) x (drive frequency).

Reproduces the two anticrossing patterns: the coherent-dominated map shows
a normal anticrossing (branches repel), the dissipative-dominated map the
opposite pattern (branches pulled together through the crossing region).
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from cmt_lab import FrequencyGrid, SystemParams, dispersion_map

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

base = dict(omega_a=4.22, omega_b=4.22, alpha=0.001, beta=0.001,
            gamma=0.01, kappa=0.001)
detunings = FrequencyGrid(3.84, 4.59, 301)
drive = FrequencyGrid(3.84, 4.59, 601)

fig, axes = plt.subplots(1, 2, figsize=(11, 4.2), sharey=True)
cases = [
    (SystemParams(**base, j=0.05, big_gamma=0.0), "coherent: branches repel"),
    (SystemParams(**base, j=0.0, big_gamma=0.05), "dissipative: branches attract"),
]
for ax, (p, title) in zip(axes, cases):
    dmap = dispersion_map(p, detunings, drive)
    print(dmap.summary())
    im = ax.pcolormesh(drive.points, detunings.points, dmap.magnitudes,
                       shading="auto", cmap="inferno")
    ax.set_xlabel("drive frequency (GHz)")
    ax.set_title(title)
    fig.colorbar(im, ax=ax, label="|s21|")
axes[0].set_ylabel("mode-B frequency (GHz)")
fig.tight_layout()
fig.savefig(OUT / "02_dispersion_maps.png", dpi=150)
print(f"wrote {OUT}/02_dispersion_maps.png")
