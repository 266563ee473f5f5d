"""Anticrossing branch extraction and coupling-constant fits.

Workflow: detect resonance peaks in |s21| spectra, assemble the one or
two branch frequencies per control value into a dataset, then fit the
real parts of the eigenvalue branches

    E+- = (wtA + wtB)/2 +- sqrt(4*(j + 1j*gamma_eff)**2 + (wtA - wtB)**2)/2

to the measured branch frequencies.  The mode-B frequency is modeled as
affine in the control parameter, omega_b = slope*control + intercept
(the minimal identifiable mapping over a narrow window), while omega_a,
alpha_eff and beta_eff are fixed inputs obtainable from far-detuned
rows.  Free parameters: (j, gamma_eff, slope, intercept).

The loss assigns each measured frequency to the nearest model branch, so
branch-label swaps across the anticrossing do not poison the fit.  A
sign flip of (j, gamma_eff) together leaves the model invariant, as does
the sign of j alone when gamma_eff = 0; results are canonicalized to
gamma_eff >= 0, and to j >= 0 when gamma_eff is negligible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize

from .errors import ValidationError
from .spectrum import DispersionMap, Spectrum

__all__ = [
    "Peak",
    "PeakList",
    "BranchData",
    "FitResult",
    "extract_peaks",
    "branch_dataset",
    "fit_coupling",
    "branch_model_frequencies",
]


@dataclass(frozen=True)
class Peak:
    frequency: float
    magnitude: float
    prominence: float


@dataclass(frozen=True)
class PeakList:
    """Detected peaks, sorted by ascending frequency."""

    peaks: tuple[Peak, ...]

    def __post_init__(self):
        freqs = [pk.frequency for pk in self.peaks]
        if freqs != sorted(freqs):
            raise ValidationError("peaks must be sorted by ascending frequency")

    def __len__(self) -> int:
        return len(self.peaks)

    def __iter__(self):
        return iter(self.peaks)

    def frequencies(self) -> np.ndarray:
        return np.array([pk.frequency for pk in self.peaks])


@dataclass(frozen=True, eq=False)
class BranchData:
    """Measured branch frequencies versus a control parameter.

    ``freq_high`` is NaN where only one branch was resolved.  Requires at
    least 4 control points and at least one point with two branches.
    ``n_skipped`` counts source rows dropped for having no peaks at all.
    """

    control: np.ndarray
    freq_low: np.ndarray
    freq_high: np.ndarray
    n_skipped: int = 0

    def __post_init__(self):
        n = len(self.control)
        if not (len(self.freq_low) == len(self.freq_high) == n):
            raise ValidationError("branch arrays must have equal lengths")
        if n < 4:
            raise ValidationError(f"at least 4 control points required, got {n}")
        if not np.isfinite(self.freq_low).all():
            raise ValidationError("freq_low must be finite at every control point")
        if not np.isfinite(self.freq_high).any():
            raise ValidationError("at least one control point must carry two branches")

    def measured_pairs(self):
        """Yield (control, frequency) for every measured branch point."""
        for c, f1, f2 in zip(self.control, self.freq_low, self.freq_high):
            yield float(c), float(f1)
            if math.isfinite(f2):
                yield float(c), float(f2)


@dataclass(frozen=True)
class FitResult:
    """Recovered coupling constants and detuning map with fit metadata."""

    j_hat: float
    gamma_eff_hat: float
    detuning_map: tuple[float, float]  # omega_b = slope*control + intercept
    residual_rms: float = math.nan
    converged: bool = False
    iterations: int = 0
    warnings: tuple[str, ...] = ()


def extract_peaks(s: Spectrum, min_prominence: float) -> PeakList:
    """Local maxima of |s21| filtered by normalized prominence.

    A peak's prominence is its height above the higher of the two flanking
    minima (the deepest samples between it and the neighboring peaks or
    spectrum edges), normalized by the global magnitude range.  Peak
    frequencies are refined by 3-point parabolic interpolation.  An empty
    result (flat spectrum) is valid.
    """
    if not 0.0 < min_prominence < 1.0:
        raise ValidationError("min_prominence must lie strictly between 0 and 1")
    y = s.magnitude
    if len(y) < 5:
        raise ValidationError("spectrum must have at least 5 points")
    span = float(y.max() - y.min())
    if span <= 0.0:
        return PeakList(peaks=())

    interior = np.flatnonzero((y[1:-1] > y[:-2]) & (y[1:-1] > y[2:])) + 1
    if interior.size == 0:
        return PeakList(peaks=())

    omega = s.grid.points
    step = s.grid.step
    bounds = [0, *interior.tolist(), len(y) - 1]
    peaks = []
    for k, i in enumerate(interior):
        left_min = float(y[bounds[k]: i + 1].min())
        right_min = float(y[i: bounds[k + 2] + 1].min())
        prom = (float(y[i]) - max(left_min, right_min)) / span
        if prom < min_prominence:
            continue
        # Parabolic vertex through the three samples around the maximum.
        d1 = 0.5 * (y[i + 1] - y[i - 1])
        d2 = y[i + 1] - 2.0 * y[i] + y[i - 1]
        shift = -d1 / d2 if d2 < 0 else 0.0
        shift = float(np.clip(shift, -0.5, 0.5))
        peaks.append(Peak(
            frequency=float(omega[i] + shift * step),
            magnitude=float(y[i]),
            prominence=prom,
        ))
    peaks.sort(key=lambda pk: pk.frequency)
    return PeakList(peaks=tuple(peaks))


def branch_dataset(dmap: DispersionMap, min_prominence: float) -> BranchData:
    """Per-row peak extraction over a dispersion map.

    Keeps the (up to) two most prominent peaks of each row, associated to
    that row's omega_b value as the control parameter; rows with no peaks
    are skipped and counted.
    """
    controls, lows, highs = [], [], []
    skipped = 0
    for i, wb in enumerate(dmap.detuning_axis.points):
        row = dmap.magnitudes[i]
        spec = _row_spectrum(dmap, row)
        found = sorted(extract_peaks(spec, min_prominence),
                       key=lambda pk: pk.prominence, reverse=True)[:2]
        if not found:
            skipped += 1
            continue
        freqs = sorted(pk.frequency for pk in found)
        controls.append(float(wb))
        lows.append(freqs[0])
        highs.append(freqs[1] if len(freqs) == 2 else math.nan)
    return BranchData(
        control=np.array(controls),
        freq_low=np.array(lows),
        freq_high=np.array(highs),
        n_skipped=skipped,
    )


def _row_spectrum(dmap: DispersionMap, row: np.ndarray) -> Spectrum:
    # Magnitude-only rows reuse the Spectrum container (phase set to zero);
    # NaN sentinel cells are treated as zero magnitude for peak picking.
    vals = np.where(np.isfinite(row), row, 0.0).astype(complex)
    return Spectrum(grid=dmap.drive_axis, s21=vals, params=dmap.params_template)


def branch_model_frequencies(
    control,
    j: float,
    gamma_eff: float,
    slope: float,
    intercept: float,
    omega_a: float,
    alpha_eff: float,
    beta_eff: float,
):
    """Real parts of E+- at omega_b = slope*control + intercept."""
    control = np.asarray(control, dtype=float)
    wta = complex(omega_a, -alpha_eff)
    wtb = slope * control + intercept - 1j * beta_eff
    root = np.sqrt(4.0 * complex(j, gamma_eff) ** 2 + (wta - wtb) ** 2)
    mean = 0.5 * (wta + wtb)
    return (mean + 0.5 * root).real, (mean - 0.5 * root).real


def fit_coupling(
    data: BranchData,
    init: FitResult,
    max_iter: int = 4000,
    *,
    omega_a: float,
    alpha_eff: float,
    beta_eff: float,
) -> FitResult:
    """Least-squares fit of (j, gamma_eff, slope, intercept) to branch data.

    Minimizes the summed squared distance between each measured frequency
    and the nearest model branch, by Nelder-Mead from ``init``.
    Convergence means the simplex collapsed below xatol = 1e-9 /
    fatol = 1e-14 within ``max_iter`` iterations; otherwise the best
    point is returned with converged=False.
    """
    pairs = list(data.measured_pairs())
    controls = np.array([c for c, _ in pairs])
    measured = np.array([f for _, f in pairs])
    warnings: list[str] = []
    if float(np.ptp(measured)) < 1e-12:
        warnings.append("flat-objective: all measured branch frequencies are identical")

    def objective(theta) -> float:
        jj, gg, sl, ic = theta
        hi, lo = branch_model_frequencies(
            controls, jj, gg, sl, ic, omega_a, alpha_eff, beta_eff
        )
        d = np.minimum(np.abs(measured - hi), np.abs(measured - lo))
        return float(d @ d)

    x0 = np.array([init.j_hat, init.gamma_eff_hat, *init.detuning_map], dtype=float)
    if not np.isfinite(x0).all():
        raise ValidationError("initial guess must be finite")
    rms0 = math.sqrt(objective(x0) / len(measured))
    if rms0 < 1e-12:
        # Already optimal to numerical precision: nothing to iterate on.
        return replace(
            init, residual_rms=rms0, converged=True, iterations=0, warnings=tuple(warnings)
        )
    res = minimize(
        objective,
        x0,
        method="Nelder-Mead",
        options={
            "maxiter": max_iter,
            "xatol": 1e-9,
            "fatol": 1e-14,
            "adaptive": True,
        },
    )
    j_hat, gamma_hat, slope, intercept = (float(v) for v in res.x)
    # Canonical sign gauge: (j, gamma_eff) -> (-j, -gamma_eff) leaves the
    # model invariant, so report the dominant component non-negative (the
    # subdominant one keeps whatever sign the noise gave it).
    if abs(j_hat) > abs(gamma_hat):
        if j_hat < 0.0:
            j_hat, gamma_hat = -j_hat, -gamma_hat
    elif gamma_hat < 0.0:
        j_hat, gamma_hat = -j_hat, -gamma_hat
    rms = math.sqrt(res.fun / len(measured))
    return FitResult(
        j_hat=j_hat,
        gamma_eff_hat=gamma_hat,
        detuning_map=(slope, intercept),
        residual_rms=rms,
        converged=bool(res.success),
        iterations=int(res.nit),
        warnings=tuple(warnings),
    )
