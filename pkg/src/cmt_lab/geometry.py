"""Lumped-LC surrogate for planar resonator geometry.

A split resonator of size ``d`` (mm) and split gap ``g`` (mm) is modeled
as a series LC tank,

    f(d, g) = 1 / (2*pi*sqrt(L*C)),  L = l0*d,  C = c_gap/g + c_par,

so frequency falls as the conducting path grows with ``d`` and rises as
the gap capacitance drops with widening ``g``.  The gap-independent
``c_par`` term captures distributed capacitance: the reported frequency
shifts across order-of-magnitude gap changes are far too small for a
pure 1/g law.

Only the products l0*c_gap and l0*c_par enter the frequency, so the
coefficient triple carries a gauge freedom; :func:`calibrate` fixes the
gauge l0 = 1 and fits the two products to anchor frequencies by
least-squares on relative frequency error (so GHz-scale anchors weigh
evenly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .errors import OutOfRangeError, RankDeficientError, ValidationError

__all__ = ["GeometryModel", "CalibrationResult", "resonance_frequency", "calibrate"]


@dataclass(frozen=True)
class GeometryModel:
    """LC surrogate coefficients plus the geometry ranges they were fit on."""

    l0: float
    c_gap: float
    c_par: float
    valid_d_range: tuple[float, float]
    valid_g_range: tuple[float, float]

    def __post_init__(self):
        if not (self.l0 > 0 and self.c_gap > 0):
            raise ValidationError("l0 and c_gap must be > 0")
        if self.c_par < 0:
            raise ValidationError("c_par must be >= 0")
        for name, (lo, hi) in (("valid_d_range", self.valid_d_range),
                               ("valid_g_range", self.valid_g_range)):
            if not (0 < lo < hi):
                raise ValidationError(f"{name} must satisfy 0 < low < high")


@dataclass(frozen=True, eq=False)
class CalibrationResult:
    model: GeometryModel
    anchors: tuple[tuple[float, float, float], ...]
    rel_errors: np.ndarray

    @property
    def max_abs_rel_error(self) -> float:
        return float(np.abs(self.rel_errors).max())


def resonance_frequency(m: GeometryModel, d: float, g: float) -> float:
    """LC resonance frequency (GHz) at size ``d`` and gap ``g`` (mm)."""
    for name, value, (lo, hi) in (("d", d, m.valid_d_range), ("g", g, m.valid_g_range)):
        if not lo <= value <= hi:
            raise OutOfRangeError(
                f"{name} = {value!r} outside the valid range [{lo}, {hi}]"
            )
    return 1.0 / (2.0 * math.pi * math.sqrt(m.l0 * d * (m.c_gap / g + m.c_par)))


def calibrate(
    anchors,
    valid_d_range: tuple[float, float] | None = None,
    valid_g_range: tuple[float, float] | None = None,
) -> CalibrationResult:
    """Fit (c_gap, c_par) at gauge l0 = 1 to (d, g, f_GHz) anchor points.

    Requires at least three anchors with variation in both d and g
    (otherwise the two products are not separable and a rank-deficiency
    error is raised).  Minimizes squared relative frequency error,
    seeded by the exact linear solve in 1/f**2 space.
    """
    anchors = tuple((float(d), float(g), float(f)) for d, g, f in anchors)
    ds = sorted({a[0] for a in anchors})
    gs = sorted({a[1] for a in anchors})
    if len(ds) < 2 or len(gs) < 2:
        raise RankDeficientError(
            "anchors must vary both d and g to separate gap and parallel capacitance"
        )
    if len(anchors) < 3:
        raise ValidationError(f"at least 3 anchors required, got {len(anchors)}")
    for d, g, f in anchors:
        if min(d, g, f) <= 0:
            raise ValidationError("anchor dimensions and frequencies must be > 0")

    d = np.array([a[0] for a in anchors])
    g = np.array([a[1] for a in anchors])
    f = np.array([a[2] for a in anchors])

    # Linear seed: 1/f^2 = 4 pi^2 d (c_gap/g + c_par).
    rhs = 1.0 / (4.0 * math.pi**2 * d * f**2)
    design = np.column_stack([1.0 / g, np.ones_like(g)])
    seed, *_ = np.linalg.lstsq(design, rhs, rcond=None)
    seed = np.maximum(seed, 1e-12)

    def residuals(x):
        c_gap, c_par = x
        fm = 1.0 / (2.0 * math.pi * np.sqrt(d * (c_gap / g + c_par)))
        return (fm - f) / f

    sol = least_squares(residuals, seed, bounds=([1e-15, 0.0], [np.inf, np.inf]))
    c_gap, c_par = (float(v) for v in sol.x)
    model = GeometryModel(
        l0=1.0,
        c_gap=c_gap,
        c_par=c_par,
        valid_d_range=valid_d_range or (min(ds), max(ds)),
        valid_g_range=valid_g_range or (min(gs), max(gs)),
    )
    return CalibrationResult(model=model, anchors=anchors, rel_errors=residuals(sol.x))
