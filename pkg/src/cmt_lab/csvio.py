"""Deterministic CSV / report emission.

All files carry a header row naming units, use ``.`` decimals, LF line
endings and RFC-4180 quoting (numbers never need quotes), and are
written atomically (temp file + rename) so partial outputs never land.
Float fields use shortest round-trip formatting, which keeps repeated
runs byte-identical.
"""

from __future__ import annotations

import math
import os
import tempfile

import numpy as np

from .eigen import EigenBranches, PhaseDiagramGrid, REGIME_FROM_CODE, RegimeLabel
from .fitting import BranchData, FitResult
from .params import FrequencyGrid
from .spectrum import DispersionMap, Spectrum
from .timedomain import TimeTrace
from .errors import ConfigError

__all__ = [
    "atomic_write_text",
    "write_spectrum_csv",
    "write_dispersion_long_csv",
    "write_dispersion_matrix_csv",
    "write_eigen_csv",
    "write_phase_diagram_csv",
    "write_branch_data_csv",
    "read_branch_data_csv",
    "write_fit_report",
    "write_predicted_branches_csv",
    "write_oracle_report_csv",
    "write_trace_csv",
    "write_classify_report",
    "write_manifest",
]


def _fmt(x) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    return repr(x)


def atomic_write_text(path, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _rows_to_csv(header, rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def write_spectrum_csv(path, spectrum: Spectrum, db: bool = False) -> None:
    omega = spectrum.grid.points
    mag = spectrum.magnitude
    if db:
        header = ["omega_GHz", "re_s21", "im_s21", "abs_s21_db"]
        with np.errstate(divide="ignore"):
            last = 20.0 * np.log10(mag)
    else:
        header = ["omega_GHz", "re_s21", "im_s21", "abs_s21"]
        last = mag
    rows = (
        (_fmt(w), _fmt(v.real), _fmt(v.imag), _fmt(m))
        for w, v, m in zip(omega, spectrum.s21, last)
    )
    atomic_write_text(path, _rows_to_csv(header, rows))


def _maybe_db(mag: np.ndarray, db: bool) -> np.ndarray:
    if not db:
        return mag
    with np.errstate(divide="ignore"):
        return 20.0 * np.log10(mag)


def write_dispersion_long_csv(path, dmap: DispersionMap, db: bool = False) -> None:
    col = "abs_s21_db" if db else "abs_s21"
    mags = _maybe_db(dmap.magnitudes, db)
    rows = (
        (_fmt(wb), _fmt(w), _fmt(mags[i, jx]))
        for i, wb in enumerate(dmap.detuning_axis.points)
        for jx, w in enumerate(dmap.drive_axis.points)
    )
    atomic_write_text(path, _rows_to_csv(["omega_b_GHz", "omega_GHz", col], rows))


def write_dispersion_matrix_csv(path, dmap: DispersionMap, db: bool = False) -> None:
    """Dense matrix layout: first row the drive axis, first column omega_b."""
    mags = _maybe_db(dmap.magnitudes, db)
    header = ["omega_b_GHz\\omega_GHz"] + [_fmt(w) for w in dmap.drive_axis.points]
    rows = (
        [_fmt(wb)] + [_fmt(v) for v in mags[i]]
        for i, wb in enumerate(dmap.detuning_axis.points)
    )
    atomic_write_text(path, _rows_to_csv(header, rows))


def write_eigen_csv(path, branches: EigenBranches) -> None:
    rows = (
        (_fmt(wb), _fmt(ep.real), _fmt(ep.imag), _fmt(em.real), _fmt(em.imag))
        for wb, ep, em in zip(
            branches.detuning_axis.points, branches.e_plus, branches.e_minus
        )
    )
    atomic_write_text(
        path,
        _rows_to_csv(
            ["omega_b_GHz", "re_eplus", "im_eplus", "re_eminus", "im_eminus"], rows
        ),
    )


def write_phase_diagram_csv(path, grid: PhaseDiagramGrid) -> None:
    rows = (
        (
            _fmt(a), _fmt(b), _fmt(j),
            REGIME_FROM_CODE[int(grid.labels[ia, ib, ij])].value,
            _fmt(grid.real_gap_zero_detuning[ia, ib, ij]),
        )
        for ia, a in enumerate(grid.alpha_axis.points)
        for ib, b in enumerate(grid.beta_axis.points)
        for ij, j in enumerate(grid.j_axis.points)
    )
    atomic_write_text(
        path,
        _rows_to_csv(
            ["alpha_eff_GHz", "beta_eff_GHz", "j_GHz", "label", "re_gap_at_zero_detuning_GHz"],
            rows,
        ),
    )


def write_branch_data_csv(path, data: BranchData) -> None:
    rows = (
        (_fmt(c), _fmt(f1), _fmt(f2) if math.isfinite(f2) else "")
        for c, f1, f2 in zip(data.control, data.freq_low, data.freq_high)
    )
    atomic_write_text(
        path, _rows_to_csv(["control_value", "freq1_GHz", "freq2_GHz"], rows)
    )


def read_branch_data_csv(path) -> BranchData:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise ConfigError(f"{path}: empty branch-data CSV")
    if lines[0].split(",")[0] != "control_value":
        raise ConfigError(f"{path}: expected header starting with 'control_value'")
    control, lows, highs = [], [], []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = [c.strip() for c in line.split(",")]
        if len(parts) not in (2, 3):
            raise ConfigError(f"{path}: expected 2-3 columns", line=lineno)
        try:
            control.append(float(parts[0]))
            lows.append(float(parts[1]))
            has2 = len(parts) == 3 and parts[2] != ""
            highs.append(float(parts[2]) if has2 else math.nan)
        except ValueError:
            raise ConfigError(f"{path}: non-numeric field in {line!r}", line=lineno) from None
    return BranchData(
        control=np.array(control), freq_low=np.array(lows), freq_high=np.array(highs)
    )


def write_fit_report(path, fit: FitResult) -> None:
    slope, intercept = fit.detuning_map
    lines = [
        f"j_hat_GHz = {_fmt(fit.j_hat)}",
        f"gamma_eff_hat_GHz = {_fmt(fit.gamma_eff_hat)}",
        f"detuning_slope_GHz_per_unit = {_fmt(slope)}",
        f"detuning_intercept_GHz = {_fmt(intercept)}",
        f"residual_rms_GHz = {_fmt(fit.residual_rms)}",
        f"converged = {str(fit.converged).lower()}",
        f"iterations = {fit.iterations}",
    ]
    lines.extend(f"warning = {w}" for w in fit.warnings)
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_predicted_branches_csv(path, control, freq_plus, freq_minus) -> None:
    rows = (
        (_fmt(c), _fmt(fp), _fmt(fm))
        for c, fp, fm in zip(control, freq_plus, freq_minus)
    )
    atomic_write_text(
        path,
        _rows_to_csv(["control_value", "freq_plus_GHz", "freq_minus_GHz"], rows),
    )


def write_oracle_report_csv(path, rows) -> None:
    """rows: iterable of (omega, s21_closed, s21_oracle, rel_err)."""
    out = (
        (
            _fmt(w),
            _fmt(sc.real), _fmt(sc.imag),
            _fmt(so.real), _fmt(so.imag),
            _fmt(err),
        )
        for w, sc, so, err in rows
    )
    atomic_write_text(
        path,
        _rows_to_csv(
            [
                "omega_GHz",
                "re_s21_closed", "im_s21_closed",
                "re_s21_oracle", "im_s21_oracle",
                "rel_err",
            ],
            out,
        ),
    )


def write_trace_csv(path, trace: TimeTrace) -> None:
    rows = (
        (_fmt(t), _fmt(a.real), _fmt(a.imag), _fmt(b.real), _fmt(b.imag))
        for t, a, b in zip(trace.times, trace.a_values, trace.b_values)
    )
    atomic_write_text(
        path, _rows_to_csv(["t", "re_a", "im_a", "re_b", "im_b"], rows)
    )


def write_classify_report(path, label: RegimeLabel, omega_a: float | None = None) -> None:
    lines = [
        f"label = {label.regime.value}",
        f"min_real_gap_GHz = {_fmt(label.min_real_gap)}",
        f"min_imag_gap_GHz = {_fmt(label.min_imag_gap)}",
        "crossing_detunings_GHz = "
        + (";".join(_fmt(x) for x in label.crossing_detunings) or "none"),
    ]
    if omega_a is not None and label.crossing_detunings:
        lines.append(
            "crossing_omega_b_GHz = "
            + ";".join(_fmt(omega_a - x) for x in label.crossing_detunings)
        )
    lines.extend(f"warning = {w}" for w in label.warnings)
    lines.extend(f"note = {n}" for n in label.notes)
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_manifest(path, entries: dict) -> None:
    lines = [f"{k} = {v}" for k, v in entries.items()]
    atomic_write_text(path, "\n".join(lines) + "\n")


def describe_grid(grid: FrequencyGrid) -> str:
    return f"[{_fmt(grid.start)}, {_fmt(grid.stop)}] x {grid.count}"
