"""Batch command-line front end.

Thin adapters only: every subcommand parses configuration, calls the
library, and emits CSVs plus a run manifest.  No numerical logic lives
here.  Exit codes: 0 success, 2 configuration error, 3 numerical error,
4 non-convergence.
"""

from __future__ import annotations

import argparse
import datetime
import sys
from importlib import metadata, resources
from pathlib import Path

import numpy

from . import __version__
from .config import Config, load_config, parse_config, system_params_from_config
from .csvio import (
    describe_grid,
    read_branch_data_csv,
    write_branch_data_csv,
    write_classify_report,
    write_dispersion_long_csv,
    write_dispersion_matrix_csv,
    write_eigen_csv,
    write_fit_report,
    write_manifest,
    write_oracle_report_csv,
    write_phase_diagram_csv,
    write_predicted_branches_csv,
    write_spectrum_csv,
    write_trace_csv,
)
from .eigen import classify_numeric, eigenbranches, phase_diagram
from .errors import (
    CmtLabError,
    ConfigError,
    NotConvergedError,
    NumericsError,
    ValidationError,
)
from .fitting import FitResult, branch_dataset, branch_model_frequencies, fit_coupling
from .params import FrequencyGrid, effective_params
from .spectrum import dispersion_map, s21, spectrum
from .timedomain import DriveSpec, default_end_time, default_time_step, integrate, oracle_s21

PRESET_NAMES = ("cit", "cia", "fig5-default", "srr", "elc")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_NOT_CONVERGED = 4


def _load_preset(name: str) -> Config:
    if name not in PRESET_NAMES:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
    text = resources.files("cmt_lab.presets").joinpath(f"{name}.cfg").read_text("utf-8")
    return parse_config(text, source=f"preset:{name}")


def _merge(base: Config, overlay: Config) -> Config:
    sections = {name: dict(vals) for name, vals in base.sections.items()}
    for name, vals in overlay.sections.items():
        sections.setdefault(name, {}).update(vals)
    return Config(sections=sections, source=f"{base.source}+{overlay.source}")


def _resolve_config(args) -> Config:
    cfg = None
    if args.preset:
        cfg = _load_preset(args.preset)
    if args.config:
        user = load_config(args.config)
        cfg = _merge(cfg, user) if cfg else user
    if cfg is None:
        raise ConfigError("either --config or --preset is required")
    return cfg


def _grid_with_fallback(cfg: Config, *names: str) -> FrequencyGrid:
    for name in names:
        if cfg.has_section(name):
            return cfg.grid(name)
    raise ConfigError(f"{cfg.source}: none of the sections {names} is present")


def _run_spectrum(cfg, outdir, args):
    p = system_params_from_config(cfg)
    spec = spectrum(p, cfg.grid("grid.drive"))
    path = outdir / "spectrum.csv"
    write_spectrum_csv(path, spec, db=args.db)
    return [path], {"params": p.as_dict(), "drive_grid": describe_grid(spec.grid)}, EXIT_OK


def _run_dispersion(cfg, outdir, args):
    p = system_params_from_config(cfg)
    detunings = cfg.grid("grid.detuning")
    drive = cfg.grid("grid.drive")
    dmap = dispersion_map(p, detunings, drive)
    long_path = outdir / "dispersion_long.csv"
    matrix_path = outdir / "dispersion_matrix.csv"
    write_dispersion_long_csv(long_path, dmap, db=args.db)
    write_dispersion_matrix_csv(matrix_path, dmap, db=args.db)
    extra = {
        "params": p.as_dict(),
        "detuning_grid": describe_grid(detunings),
        "drive_grid": describe_grid(drive),
        "singular_cells": dmap.n_singular,
        "summary": dmap.summary(),
    }
    return [long_path, matrix_path], extra, EXIT_OK


def _run_eigen(cfg, outdir, args):
    p = system_params_from_config(cfg)
    grid = _grid_with_fallback(cfg, "grid.eigen", "grid.detuning")
    branches = eigenbranches(p, grid)
    path = outdir / "eigen_branches.csv"
    write_eigen_csv(path, branches)
    extra = {
        "params": p.as_dict(),
        "detuning_grid": describe_grid(grid),
        "exceptional_points": len(branches.exceptional_indices),
    }
    return [path], extra, EXIT_OK


def _run_classify(cfg, outdir, args):
    p = system_params_from_config(cfg)
    grid = _grid_with_fallback(cfg, "grid.classify", "grid.eigen", "grid.detuning")
    eps = cfg.get_float("classify", "eps", default=1e-6)
    label = classify_numeric(eigenbranches(p, grid), eps=eps)
    path = outdir / "classify_report.txt"
    write_classify_report(path, label, omega_a=p.omega_a)
    extra = {
        "params": p.as_dict(),
        "detuning_grid": describe_grid(grid),
        "eps": eps,
        "label": label.regime.value,
    }
    return [path], extra, EXIT_OK


def _run_phase_diagram(cfg, outdir, args):
    gamma_eff = cfg.get_float("phase", "gamma_eff", required=True)
    lo = cfg.get_float("phase", "detuning_min", required=True)
    hi = cfg.get_float("phase", "detuning_max", required=True)
    grid = phase_diagram(
        alpha_axis=cfg.grid("phase.alpha"),
        beta_axis=cfg.grid("phase.beta"),
        j_axis=cfg.grid("phase.j"),
        gamma_eff=gamma_eff,
        detuning_range=(lo, hi),
    )
    path = outdir / "phase_diagram.csv"
    write_phase_diagram_csv(path, grid)
    extra = {
        "gamma_eff": gamma_eff,
        "detuning_range": f"[{lo}, {hi}]",
        "alpha_grid": describe_grid(grid.alpha_axis),
        "beta_grid": describe_grid(grid.beta_axis),
        "j_grid": describe_grid(grid.j_axis),
    }
    return [path], extra, EXIT_OK


def _run_fit(cfg, outdir, args):
    branch_csv = cfg.get_str("fit", "branch_csv")
    if branch_csv:
        data = read_branch_data_csv(branch_csv)
        source = branch_csv
    elif cfg.get_bool("fit", "generate", default=False):
        p = system_params_from_config(cfg)
        dmap = dispersion_map(p, cfg.grid("grid.detuning"), cfg.grid("grid.drive"))
        data = branch_dataset(dmap, cfg.get_float("fit", "min_prominence", default=0.05))
        source = "generated dispersion map"
    else:
        raise ConfigError(
            f"{cfg.source}: [fit] needs either branch_csv = <path> or generate = true"
        )

    if cfg.has_section("params"):
        eff = effective_params(system_params_from_config(cfg))
        omega_a_default, alpha_default, beta_default = (
            system_params_from_config(cfg).omega_a,
            eff.alpha_eff,
            eff.beta_eff,
        )
    else:
        omega_a_default = alpha_default = beta_default = None

    def fixed(key, fallback):
        value = cfg.get_float("fit", key, default=fallback)
        if value is None:
            raise ConfigError(f"{cfg.source}: [fit] {key} is required when no [params] given")
        return value

    omega_a = fixed("omega_a", omega_a_default)
    alpha_eff = fixed("alpha_eff", alpha_default)
    beta_eff = fixed("beta_eff", beta_default)

    init = FitResult(
        j_hat=cfg.get_float("fit", "init_j", default=0.05),
        gamma_eff_hat=cfg.get_float("fit", "init_gamma_eff", default=0.01),
        detuning_map=(
            cfg.get_float("fit", "init_slope", default=1.0),
            cfg.get_float("fit", "init_intercept", default=0.0),
        ),
    )
    fit = fit_coupling(
        data,
        init,
        max_iter=cfg.get_int("fit", "max_iter", default=4000),
        omega_a=omega_a,
        alpha_eff=alpha_eff,
        beta_eff=beta_eff,
    )

    data_path = outdir / "branch_data.csv"
    report_path = outdir / "fit_report.txt"
    pred_path = outdir / "fit_branches.csv"
    write_branch_data_csv(data_path, data)
    write_fit_report(report_path, fit)
    slope, intercept = fit.detuning_map
    f_plus, f_minus = branch_model_frequencies(
        data.control, fit.j_hat, fit.gamma_eff_hat, slope, intercept,
        omega_a, alpha_eff, beta_eff,
    )
    write_predicted_branches_csv(pred_path, data.control, f_plus, f_minus)
    extra = {
        "branch_source": source,
        "fixed_omega_a": omega_a,
        "fixed_alpha_eff": alpha_eff,
        "fixed_beta_eff": beta_eff,
        "j_hat": fit.j_hat,
        "gamma_eff_hat": fit.gamma_eff_hat,
        "converged": fit.converged,
    }
    status = EXIT_OK if fit.converged else EXIT_NOT_CONVERGED
    return [data_path, report_path, pred_path], extra, status


def _run_oracle_check(cfg, outdir, args):
    p = system_params_from_config(cfg)
    count = cfg.get_int("oracle", "omega_count", default=5)
    start = cfg.get_float("oracle", "omega_start", required=True)
    stop = cfg.get_float("oracle", "omega_stop", required=True)
    omegas = FrequencyGrid(start=start, stop=stop, count=count).points
    dump = cfg.get_bool("oracle", "trace_dump", default=False)

    outputs = []
    rows = []
    worst = 0.0
    for i, w in enumerate(omegas):
        closed = s21(p, float(w))
        oracle = oracle_s21(p, float(w))
        rel = abs(closed - oracle) / max(abs(closed), 1e-300)
        worst = max(worst, rel)
        rows.append((float(w), closed, oracle, rel))
        if dump:
            drive = DriveSpec(omega=float(w))
            trace = integrate(
                p, drive, default_end_time(p, drive), default_time_step(p, drive),
                max_stored=20_001,
            )
            trace_path = outdir / f"trace_{i:03d}.csv"
            write_trace_csv(trace_path, trace)
            outputs.append(trace_path)
    report = outdir / "oracle_report.csv"
    write_oracle_report_csv(report, rows)
    outputs.insert(0, report)
    return outputs, {"params": p.as_dict(), "worst_rel_err": worst}, EXIT_OK


def _run_geometry(cfg, outdir, args):
    from .geometry import GeometryModel, resonance_frequency

    model = GeometryModel(
        l0=cfg.get_float("geometry", "l0", required=True),
        c_gap=cfg.get_float("geometry", "c_gap", required=True),
        c_par=cfg.get_float("geometry", "c_par", required=True),
        valid_d_range=(
            cfg.get_float("geometry", "d_min", required=True),
            cfg.get_float("geometry", "d_max", required=True),
        ),
        valid_g_range=(
            cfg.get_float("geometry", "g_min", required=True),
            cfg.get_float("geometry", "g_max", required=True),
        ),
    )
    axis = cfg.get_str("geometry.sweep", "axis", required=True)
    if axis not in ("d", "g"):
        raise ConfigError(f"{cfg.source}: [geometry.sweep] axis must be 'd' or 'g'")
    fixed_value = cfg.get_float("geometry.sweep", "fixed", required=True)
    sweep = cfg.grid("geometry.sweep")
    values = sweep.points
    if axis == "g":
        freqs = [resonance_frequency(model, fixed_value, g) for g in values]
        header_axis = "g_mm"
    else:
        freqs = [resonance_frequency(model, d, fixed_value) for d in values]
        header_axis = "d_mm"
    path = outdir / "geometry_sweep.csv"
    from .csvio import atomic_write_text, _fmt, _rows_to_csv

    rows = ((_fmt(v), _fmt(f)) for v, f in zip(values, freqs))
    atomic_write_text(path, _rows_to_csv([header_axis, "f_GHz"], rows))
    extra = {
        "axis": axis,
        "fixed": fixed_value,
        "sweep": describe_grid(sweep),
        "model": f"l0={model.l0} c_gap={model.c_gap} c_par={model.c_par}",
    }
    return [path], extra, EXIT_OK


_RUNNERS = {
    "spectrum": _run_spectrum,
    "dispersion": _run_dispersion,
    "eigen": _run_eigen,
    "classify": _run_classify,
    "phase-diagram": _run_phase_diagram,
    "fit": _run_fit,
    "oracle-check": _run_oracle_check,
    "geometry": _run_geometry,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cmt-lab",
        description="Batch coupled-mode laboratory: spectra, eigenbranches, "
        "regime classification, phase diagrams, fits and the time-domain oracle.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in _RUNNERS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", help="path to a key-value config file")
        cmd.add_argument("--preset", help=f"built-in preset: {', '.join(PRESET_NAMES)}")
        cmd.add_argument("--out", default=".", help="output directory (created if missing)")
        cmd.add_argument("--db", action="store_true",
                         help="emit |s21| in dB (20*log10) where applicable")
    return parser


def _versions() -> dict:
    entries = {"cmt_lab": __version__, "numpy": numpy.__version__}
    for dist in ("scipy", "numba"):
        try:
            entries[dist] = metadata.version(dist)
        except metadata.PackageNotFoundError:
            entries[dist] = "unavailable"
    return entries


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _resolve_config(args)
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        outputs, extra, status = _RUNNERS[args.subcommand](cfg, outdir, args)
        manifest = {
            "subcommand": args.subcommand,
            "preset": args.preset or "none",
            "config": args.config or "none",
            "db": args.db,
            **{f"version_{k}": v for k, v in _versions().items()},
            **extra,
            "outputs": ";".join(p.name for p in outputs),
            "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        }
        write_manifest(outdir / "manifest.txt", manifest)
        if status != EXIT_OK:
            print("warning[NotConverged]: see fit_report.txt", file=sys.stderr)
        return status
    except (ConfigError, ValidationError) as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NotConvergedError as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except NumericsError as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except CmtLabError as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
