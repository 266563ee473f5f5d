"""Time-domain check of the frequency-domain transmission.

Integrates the driven equations of motion from rest, watches the ring-up
to steady state, and compares the reconstructed transmission against the
closed form at several drive frequencies.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cmt_lab import DriveSpec, SystemParams, integrate, oracle_s21, s21
from cmt_lab.timedomain import default_end_time, default_time_step

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

p = SystemParams(omega_a=4.22, omega_b=4.22, alpha=0.001, beta=0.001,
                 gamma=0.01, kappa=0.001, j=0.05, big_gamma=0.0)

drive = DriveSpec(omega=4.27)
trace = integrate(p, drive, default_end_time(p, drive), default_time_step(p, drive))
fig, ax = plt.subplots(figsize=(7, 4))
ax.plot(trace.times, np.abs(trace.a_values), label="|A(t)|")
ax.plot(trace.times, np.abs(trace.b_values), label="|B(t)|")
ax.set_xlabel("time (1/GHz)")
ax.set_ylabel("mode amplitude")
ax.set_title("ring-up to the driven steady state")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "05_ring_up.png", dpi=150)

print("closed form vs time-domain oracle:")
for omega in (4.12, 4.22, 4.27, 4.32):
    closed = s21(p, omega)
    numeric = oracle_s21(p, omega)
    rel = abs(numeric - closed) / abs(closed)
    print(f"  omega = {omega:.2f}: s21 = {closed:.6f}, oracle rel err = {rel:.2e}")
print(f"wrote {OUT}/05_ring_up.png")
