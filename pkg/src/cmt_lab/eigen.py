"""Non-Hermitian eigenanalysis of the 2x2 coupling matrix.

The hybrid modes are summarized by the symmetric coupling matrix

    M = [[omega_a - 1j*alpha_eff,  delta_eff              ],
         [delta_eff,               omega_b - 1j*beta_eff  ]]

whose eigenvalue branches are

    E+- = (m11 + m22)/2 +- sqrt(4*delta_eff**2 + (m11 - m22)**2) / 2.

Writing delta = omega_a - omega_b and d = alpha_eff - beta_eff, the squared
branch gap is the discriminant

    D(delta) = (E+ - E-)**2
             = 4*(j**2 - gamma_eff**2) + delta**2 - d**2
               + 2j*(4*j*gamma_eff - delta*d).

Level attraction (real parts of E+- touch while imaginary parts stay
apart) requires a detuning where Im(D) = 0 and Re(D) < 0.  For d != 0 the
unique Im(D) zero sits at delta* = 4*j*gamma_eff/d and the sign condition
reduces to |j| < |d|/2; the boundaries of the Re(D) < 0 band are the
touch points where the two complex branches nearly coalesce.

Branch labels along a sweep follow continuity: the square root uses the
principal branch at the first point and thereafter picks the sign closest
to the previous point.  Between adjacent sweep points the branch motion is
bounded by |dE/d(omega_b)| <= (1 + |m11 - m22| / |E+ - E-|) / 2, so away
from exceptional points a jump constant C = (1 + max|m11 - m22| /
min|E+ - E-|) / 2 bounds |E(i+1) - E(i)| / step.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .params import EffectiveParams, FrequencyGrid, SystemParams, effective_params

__all__ = [
    "Regime",
    "RegimeLabel",
    "CouplingMatrix",
    "EigenBranches",
    "PhaseDiagramGrid",
    "coupling_matrix",
    "eigenbranches",
    "classify_numeric",
    "classify_analytic",
    "phase_diagram",
    "DEFAULT_EPS",
    "EXCEPTIONAL_POINT_FLOOR",
]

# Default gap threshold for crossing detection: three-plus orders below the
# smallest damping scale exercised by the model presets.
DEFAULT_EPS = 1e-6

# |D| below this flags a (near-)exceptional point: degenerate eigenvalues.
EXCEPTIONAL_POINT_FLOOR = 1e-14


class Regime(enum.Enum):
    LEVEL_REPULSION = "LevelRepulsion"
    LEVEL_ATTRACTION = "LevelAttraction"
    MARGINAL = "Marginal"


@dataclass(frozen=True)
class RegimeLabel:
    """Classification outcome plus diagnostics.

    ``crossing_detunings`` are detunings delta = omega_a - omega_b where the
    real parts of the two branches touch (the P1/P2 points: boundaries of
    the Re(D) < 0 band); non-empty exactly when the label is
    LEVEL_ATTRACTION.
    """

    regime: Regime
    min_real_gap: float
    min_imag_gap: float
    crossing_detunings: tuple[float, ...] = ()
    warnings: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        has_crossings = len(self.crossing_detunings) > 0
        if has_crossings != (self.regime is Regime.LEVEL_ATTRACTION):
            raise ValueError(
                "crossing detunings must be non-empty iff the label is LevelAttraction"
            )


@dataclass(frozen=True)
class CouplingMatrix:
    """Symmetric 2x2 coupling matrix; m12 == m21 by construction."""

    m11: complex
    m12: complex
    m21: complex
    m22: complex

    def __post_init__(self):
        if self.m12 != self.m21:
            raise ValueError("coupling matrix must be symmetric (m12 == m21)")
        for v in (self.m11, self.m12, self.m22):
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError("coupling matrix entries must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=complex)


@dataclass(frozen=True, eq=False)
class EigenBranches:
    """Continuity-labeled complex eigenvalues along an omega_b sweep.

    Real parts trace the dispersion, imaginary parts the (negative)
    linewidths.  ``exceptional_indices`` flags sweep points where
    |D| < EXCEPTIONAL_POINT_FLOOR (degenerate eigenvalues; labels there
    are arbitrary).
    """

    detuning_axis: FrequencyGrid
    e_plus: np.ndarray
    e_minus: np.ndarray
    params: SystemParams
    exceptional_indices: tuple[int, ...] = field(default=())

    def __post_init__(self):
        n = self.detuning_axis.count
        if len(self.e_plus) != n or len(self.e_minus) != n:
            raise ValueError("branch arrays must match the detuning axis length")

    @property
    def gap(self) -> np.ndarray:
        return self.e_plus - self.e_minus

    @property
    def discriminant(self) -> np.ndarray:
        """(E+ - E-)**2, the quantity whose sign structure sets the regime."""
        return self.gap**2


@dataclass(frozen=True, eq=False)
class PhaseDiagramGrid:
    """Regime labels over an (alpha_eff, beta_eff, j) grid at fixed gamma_eff.

    ``labels`` holds Regime values, shape (alpha, beta, j);
    ``real_gap_zero_detuning`` holds Re(E+ - E-) evaluated at
    omega_a == omega_b for color-mapping.
    """

    alpha_axis: FrequencyGrid
    beta_axis: FrequencyGrid
    j_axis: FrequencyGrid
    gamma_eff: float
    detuning_range: tuple[float, float]
    labels: np.ndarray
    real_gap_zero_detuning: np.ndarray

    def __post_init__(self):
        shape = (self.alpha_axis.count, self.beta_axis.count, self.j_axis.count)
        if self.labels.shape != shape or self.real_gap_zero_detuning.shape != shape:
            raise ValueError("phase-diagram arrays must match the axis counts")

    def count(self, regime: Regime) -> int:
        return int(np.sum(self.labels == np.uint8(_REGIME_CODE[regime])))


_REGIME_CODE = {
    Regime.LEVEL_REPULSION: 0,
    Regime.LEVEL_ATTRACTION: 1,
    Regime.MARGINAL: 2,
}
REGIME_FROM_CODE = {v: k for k, v in _REGIME_CODE.items()}


def coupling_matrix(eff: EffectiveParams) -> CouplingMatrix:
    """Assemble the symmetric coupling matrix from effective parameters."""
    return CouplingMatrix(
        m11=eff.omega_a_tilde,
        m12=eff.delta_eff,
        m21=eff.delta_eff,
        m22=eff.omega_b_tilde,
    )


def _tracked_sqrt(d: np.ndarray) -> np.ndarray:
    """Square root of a discriminant array with sign continuity along the sweep.

    Principal branch at the first point; each subsequent point takes the
    root closer to its predecessor (sign flip when Re(s_i * conj(s_prev)) < 0).
    """
    s = np.sqrt(d)
    if len(s) < 2:
        return s
    flips = np.where((s[1:] * np.conj(s[:-1])).real < 0.0, -1.0, 1.0)
    signs = np.concatenate(([1.0], np.cumprod(flips)))
    return s * signs


def eigenbranches(p_template: SystemParams, detunings: FrequencyGrid) -> EigenBranches:
    """Eigenvalue branches E+- along an omega_b sweep.

    Trace and determinant identities hold per point by construction:
    E+ + E- = m11 + m22 and E+ * E- = m11*m22 - delta_eff**2.
    """
    eff = effective_params(p_template)
    wb = detunings.points
    m11 = complex(p_template.omega_a, -eff.alpha_eff)
    m22 = wb - 1j * eff.beta_eff
    diff = m11 - m22
    disc = 4.0 * eff.delta_eff**2 + diff**2
    root = _tracked_sqrt(disc)
    mean = 0.5 * (m11 + m22)
    exceptional = tuple(int(i) for i in np.flatnonzero(np.abs(disc) < EXCEPTIONAL_POINT_FLOOR))
    return EigenBranches(
        detuning_axis=detunings,
        e_plus=mean + 0.5 * root,
        e_minus=mean - 0.5 * root,
        params=p_template,
        exceptional_indices=exceptional,
    )


def _interp_zeros(x: np.ndarray, y: np.ndarray) -> list[float]:
    """Linearly interpolated zero crossings of y(x) between samples of opposite sign."""
    if np.all(y == 0.0):
        # Identically zero component (fully degenerate case): no discrete crossings.
        return []
    s = np.sign(y)
    idx = np.flatnonzero((s[:-1] * s[1:]) < 0)
    zeros = [
        float(x[i] - y[i] * (x[i + 1] - x[i]) / (y[i + 1] - y[i])) for i in idx
    ]
    zeros.extend(float(x[i]) for i in np.flatnonzero(y == 0.0))
    return sorted(zeros)


def classify_numeric(branches: EigenBranches, eps: float = DEFAULT_EPS) -> RegimeLabel:
    """Classify a computed branch sweep by its gap structure.

    Level attraction: the real branch gap falls to <= eps at some sweep
    point while the imaginary gap stays > eps everywhere.  Level
    repulsion: the converse.  Anything else is Marginal.  A
    sweep-too-coarse warning is attached when the sign pattern of
    Re((E+ - E-)**2) or Im((E+ - E-)**2) indicates a crossing between
    samples that no sample resolved to within eps.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    gap = branches.gap
    re_gap = np.abs(gap.real)
    im_gap = np.abs(gap.imag)
    min_re = float(re_gap.min())
    min_im = float(im_gap.min())

    if min_re <= eps and min_im > eps:
        regime = Regime.LEVEL_ATTRACTION
    elif min_re > eps and min_im <= eps:
        regime = Regime.LEVEL_REPULSION
    else:
        regime = Regime.MARGINAL

    disc = branches.discriminant
    wb = branches.detuning_axis.points
    omega_a = branches.params.omega_a
    re_zero_wb = _interp_zeros(wb, disc.real)
    im_zero_wb = _interp_zeros(wb, disc.imag)
    # The Im(D) = 0 locus carries the exact gap crossings: a real-gap
    # crossing where Re(D) < 0 there, an imaginary-gap crossing where
    # Re(D) > 0.  Split the interpolated zeros accordingly.
    re_dizeros = np.interp(im_zero_wb, wb, disc.real) if im_zero_wb else np.array([])
    real_cross_wb = [z for z, rd in zip(im_zero_wb, re_dizeros) if rd < 0.0]
    imag_cross_wb = [z for z, rd in zip(im_zero_wb, re_dizeros) if rd > 0.0]

    warnings = []
    if (re_zero_wb or real_cross_wb) and min_re > eps:
        warnings.append(
            "sweep-too-coarse: Re((E+-E-)^2) changes sign near omega_b in "
            f"{[round(z, 6) for z in sorted(set(re_zero_wb + real_cross_wb))]} "
            "but no sample has |Re gap| <= eps"
        )
    if imag_cross_wb and min_im > eps:
        warnings.append(
            "sweep-too-coarse: an imaginary-gap crossing is bracketed near omega_b in "
            f"{[round(z, 6) for z in imag_cross_wb]} but no sample has |Im gap| <= eps"
        )

    crossings: tuple[float, ...] = ()
    if regime is Regime.LEVEL_ATTRACTION:
        # Touch points: boundaries of the Re(D) < 0 band, as detunings.
        crossings = tuple(sorted(omega_a - z for z in re_zero_wb))
        if not crossings:
            # Band covers the whole sweep: report the deepest real-gap point.
            i = int(np.argmin(re_gap))
            crossings = (float(omega_a - wb[i]),)

    return RegimeLabel(
        regime=regime,
        min_real_gap=min_re,
        min_imag_gap=min_im,
        crossing_detunings=crossings,
        warnings=tuple(warnings),
    )


# Guard for the degenerate-damping division in the analytic classifier.
_DEGENERATE_DAMPING_FLOOR = 1e-15


def classify_analytic(
    eff: EffectiveParams,
    j: float,
    gamma_eff: float,
    detuning_range: tuple[float, float],
) -> RegimeLabel:
    """Closed-form regime decision from the sign analysis of D(delta).

    With d = alpha_eff - beta_eff, the Im(D) = 0 locus is
    delta* = 4*j*gamma_eff/d (for d != 0), and level attraction holds iff
    delta* lies inside ``detuning_range`` and Re(D(delta*)) < 0, which is
    equivalent to |j| < |d|/2.  Degenerate cases fall back to the same
    sign analysis; diagnostics are the gap components at delta*.
    """
    lo, hi = detuning_range
    if not lo < hi:
        raise ValueError("detuning_range must be a non-degenerate (low, high) interval")
    d = eff.alpha_eff - eff.beta_eff

    def gap_parts(delta: float) -> tuple[float, float]:
        disc = complex(
            4.0 * (j * j - gamma_eff * gamma_eff) + delta * delta - d * d,
            2.0 * (4.0 * j * gamma_eff - delta * d),
        )
        root = np.sqrt(complex(disc))
        return abs(root.real), abs(root.imag)

    def touch_points() -> tuple[float, ...]:
        half_sq = d * d + 4.0 * gamma_eff * gamma_eff - 4.0 * j * j
        if half_sq <= 0.0:
            return ()
        half = math.sqrt(half_sq)
        return tuple(z for z in (-half, half) if lo <= z <= hi)

    notes: list[str] = []
    if abs(d) < _DEGENERATE_DAMPING_FLOOR:
        if j * gamma_eff != 0.0:
            # Im(D) = 8*j*gamma_eff never vanishes: no real-part crossing.
            if j != 0.0:
                notes.append("degenerate damping: alpha_eff == beta_eff with j != 0")
            re0, im0 = gap_parts(0.0)
            return RegimeLabel(Regime.LEVEL_REPULSION, re0, im0, notes=tuple(notes))
        # Im(D) vanishes identically; regime set by the sign of Re(D).
        if j == 0.0 and gamma_eff == 0.0:
            return RegimeLabel(Regime.MARGINAL, 0.0, 0.0)
        if j != 0.0:
            # gamma_eff == 0: Re(D) = 4 j^2 + delta^2 > 0 (Hermitian repulsion).
            re0, im0 = gap_parts(0.0)
            return RegimeLabel(Regime.LEVEL_REPULSION, re0, im0, notes=tuple(notes))
        # j == 0, gamma_eff > 0: attraction band |delta| < 2*gamma_eff.
        if lo < 2.0 * gamma_eff and hi > -2.0 * gamma_eff:
            _, im0 = gap_parts(min(max(0.0, lo), hi))
            return RegimeLabel(
                Regime.LEVEL_ATTRACTION, 0.0, im0,
                crossing_detunings=touch_points() or (0.0,),
            )
        re0, im0 = gap_parts(lo)
        return RegimeLabel(Regime.LEVEL_REPULSION, re0, im0, notes=tuple(notes))

    delta_star = 4.0 * j * gamma_eff / d
    re_star, im_star = gap_parts(delta_star)
    attracts = abs(j) < abs(d) / 2.0 and lo <= delta_star <= hi
    if attracts:
        return RegimeLabel(
            Regime.LEVEL_ATTRACTION, re_star, im_star,
            crossing_detunings=touch_points() or (delta_star,),
        )
    if not lo <= delta_star <= hi:
        notes.append("Im(D) zero lies outside the detuning range")
    return RegimeLabel(Regime.LEVEL_REPULSION, re_star, im_star, notes=tuple(notes))


def phase_diagram(
    alpha_axis: FrequencyGrid,
    beta_axis: FrequencyGrid,
    j_axis: FrequencyGrid,
    gamma_eff: float,
    detuning_range: tuple[float, float],
) -> PhaseDiagramGrid:
    """Label every (alpha_eff, beta_eff, j) cell by the analytic classifier.

    Vectorized transcription of :func:`classify_analytic` (property-tested
    against it cell by cell).  Also evaluates Re(E+ - E-) at zero detuning,
    the color-mapped scalar field.
    """
    if gamma_eff < 0:
        raise ValueError("gamma_eff must be >= 0")
    lo, hi = detuning_range
    if not lo < hi:
        raise ValueError("detuning_range must be a non-degenerate (low, high) interval")

    ap = alpha_axis.points[:, None, None]
    bp = beta_axis.points[None, :, None]
    j = j_axis.points[None, None, :]
    d = np.broadcast_to(ap - bp, (alpha_axis.count, beta_axis.count, j_axis.count))
    j = np.broadcast_to(j, d.shape)

    degenerate = np.abs(d) < _DEGENERATE_DAMPING_FLOOR
    with np.errstate(divide="ignore", invalid="ignore"):
        delta_star = np.where(degenerate, np.inf, 4.0 * j * gamma_eff / np.where(degenerate, 1.0, d))
    in_range = (delta_star >= lo) & (delta_star <= hi)
    attract = (np.abs(j) < np.abs(d) / 2.0) & in_range

    # Degenerate-damping branch: attraction only for j == 0 with a
    # gamma_eff band intersecting the range; marginal when fully uncoupled.
    band_hits = (lo < 2.0 * gamma_eff) & (hi > -2.0 * gamma_eff)
    attract |= degenerate & (j == 0.0) & (gamma_eff > 0.0) & band_hits
    marginal = degenerate & (j == 0.0) & (gamma_eff == 0.0)

    labels = np.full(d.shape, _REGIME_CODE[Regime.LEVEL_REPULSION], dtype=np.uint8)
    labels[attract] = _REGIME_CODE[Regime.LEVEL_ATTRACTION]
    labels[marginal] = _REGIME_CODE[Regime.MARGINAL]

    disc0 = 4.0 * (j + 1j * gamma_eff) ** 2 + (-1j * d) ** 2
    real_gap0 = np.sqrt(disc0).real

    return PhaseDiagramGrid(
        alpha_axis=alpha_axis,
        beta_axis=beta_axis,
        j_axis=j_axis,
        gamma_eff=gamma_eff,
        detuning_range=(float(lo), float(hi)),
        labels=labels,
        real_gap_zero_detuning=real_gap0,
    )
