import numpy as np
import pytest

from cmt_lab import FrequencyGrid, spectrum
from cmt_lab.cli import main
from cmt_lab.config import parse_config, system_params_from_config
from cmt_lab.csvio import write_spectrum_csv
from cmt_lab.errors import ConfigError

PARAMS_TEXT = """
# bare key-value file: implicit [params] section
omega_a = 4.22
omega_b = 4.22
alpha = 0.001
beta = 0.001
gamma = 0.01
kappa = 0.001
j = 0.05
big_gamma = 0.0
"""


def test_parse_bare_key_value_as_params():
    cfg = parse_config(PARAMS_TEXT)
    p = system_params_from_config(cfg)
    assert p.omega_a == 4.22 and p.j == 0.05


def test_parse_sections_comments_and_inline_values():
    cfg = parse_config(
        """
        [grid.drive]
        start = 3.9   # GHz
        stop = 4.5
        count = 11
        """
    )
    grid = cfg.grid("grid.drive")
    assert grid == FrequencyGrid(3.9, 4.5, 11)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ConfigError, match="line 3"):
        parse_config("a = 1\n# fine\nnot a key value\n")
    with pytest.raises(ConfigError, match="line 2"):
        parse_config("[params]\n[broken\n")
    with pytest.raises(ConfigError, match="empty value"):
        parse_config("omega_a =\n")


def test_missing_and_unknown_params_are_config_errors():
    with pytest.raises(ConfigError, match="kappa"):
        system_params_from_config(parse_config("omega_a = 4\nomega_b = 4\nalpha = 0\nbeta = 0\ngamma = 0\nj = 0\nbig_gamma = 0\n"))
    with pytest.raises(ConfigError, match="typo"):
        system_params_from_config(parse_config(PARAMS_TEXT + "typo = 1\n"))


def _read(path):
    with open(path, "rb") as fh:
        return fh.read()


def test_cli_spectrum_deterministic_and_matches_library(tmp_path):
    out1, out2 = tmp_path / "run1", tmp_path / "run2"
    cfg = tmp_path / "run.cfg"
    cfg.write_text(PARAMS_TEXT + "\n[grid.drive]\nstart = 4.0\nstop = 4.44\ncount = 201\n")
    assert main(["spectrum", "--config", str(cfg), "--out", str(out1)]) == 0
    assert main(["spectrum", "--config", str(cfg), "--out", str(out2)]) == 0
    assert _read(out1 / "spectrum.csv") == _read(out2 / "spectrum.csv")
    assert (out1 / "manifest.txt").exists()

    # No numerical logic in the CLI: a direct library call writes the
    # byte-identical file.
    p = system_params_from_config(parse_config(PARAMS_TEXT))
    spec = spectrum(p, FrequencyGrid(4.0, 4.44, 201))
    write_spectrum_csv(tmp_path / "direct.csv", spec)
    assert _read(tmp_path / "direct.csv") == _read(out1 / "spectrum.csv")

    header = (out1 / "spectrum.csv").read_text().splitlines()[0]
    assert header == "omega_GHz,re_s21,im_s21,abs_s21"


def test_cli_classify_presets(tmp_path):
    out = tmp_path / "cit"
    assert main(["classify", "--preset", "cit", "--out", str(out)]) == 0
    report = (out / "classify_report.txt").read_text()
    assert "label = LevelRepulsion" in report

    out2 = tmp_path / "cia"
    assert main(["classify", "--preset", "cia", "--out", str(out2)]) == 0
    report2 = (out2 / "classify_report.txt").read_text()
    assert "label = LevelAttraction" in report2
    crossings = [ln for ln in report2.splitlines() if ln.startswith("crossing_detunings")]
    assert len(crossings) == 1
    assert len(crossings[0].split("=")[1].split(";")) == 2


def test_cli_eigen_and_dispersion_run(tmp_path):
    out = tmp_path / "eig"
    assert main(["eigen", "--preset", "cit", "--out", str(out)]) == 0
    lines = (out / "eigen_branches.csv").read_text().splitlines()
    assert lines[0] == "omega_b_GHz,re_eplus,im_eplus,re_eminus,im_eminus"
    assert len(lines) == 752

    out2 = tmp_path / "disp"
    cfg = tmp_path / "small.cfg"
    cfg.write_text(
        PARAMS_TEXT
        + "\n[grid.drive]\nstart = 4.0\nstop = 4.44\ncount = 101\n"
        + "\n[grid.detuning]\nstart = 4.1\nstop = 4.34\ncount = 9\n"
    )
    assert main(["dispersion", "--config", str(cfg), "--out", str(out2), "--db"]) == 0
    long_lines = (out2 / "dispersion_long.csv").read_text().splitlines()
    assert long_lines[0] == "omega_b_GHz,omega_GHz,abs_s21_db"
    assert len(long_lines) == 1 + 9 * 101


def test_cli_phase_diagram_preset(tmp_path):
    out = tmp_path / "phase"
    cfg = tmp_path / "small_phase.cfg"
    cfg.write_text(
        "[phase]\ngamma_eff = 0.001\ndetuning_min = -0.38\ndetuning_max = 0.38\n"
        "[phase.alpha]\nstart = 0.0\nstop = 0.1\ncount = 6\n"
        "[phase.beta]\nstart = 0.0\nstop = 0.1\ncount = 6\n"
        "[phase.j]\nstart = 0.0\nstop = 0.08\ncount = 6\n"
    )
    assert main(["phase-diagram", "--config", str(cfg), "--out", str(out)]) == 0
    lines = (out / "phase_diagram.csv").read_text().splitlines()
    assert len(lines) == 1 + 6 * 6 * 6
    assert "LevelAttraction" in "\n".join(lines)


def test_cli_oracle_check_fast_config(tmp_path):
    cfg = tmp_path / "oracle.cfg"
    cfg.write_text(
        "omega_a = 4.2\nomega_b = 4.25\nalpha = 0.01\nbeta = 0.01\n"
        "gamma = 0.05\nkappa = 0.05\nj = 0.02\nbig_gamma = 0.0\n"
        "[oracle]\nomega_start = 4.1\nomega_stop = 4.3\nomega_count = 3\ntrace_dump = true\n"
    )
    out = tmp_path / "oracle"
    assert main(["oracle-check", "--config", str(cfg), "--out", str(out)]) == 0
    lines = (out / "oracle_report.csv").read_text().splitlines()
    assert len(lines) == 4
    rel_errs = [float(ln.split(",")[-1]) for ln in lines[1:]]
    assert max(rel_errs) <= 1e-6
    assert (out / "trace_000.csv").exists()


def test_cli_oracle_check_rejects_gain_preset(tmp_path):
    # The cia preset has a gain pole: the time-domain route must refuse.
    code = main(["oracle-check", "--preset", "cia", "--out", str(tmp_path / "x")])
    assert code == 3


def test_cli_geometry_sweep(tmp_path):
    out = tmp_path / "geo"
    assert main(["geometry", "--preset", "srr", "--out", str(out)]) == 0
    lines = (out / "geometry_sweep.csv").read_text().splitlines()
    assert lines[0] == "g_mm,f_GHz"
    freqs = [float(ln.split(",")[1]) for ln in lines[1:]]
    assert all(b > a for a, b in zip(freqs, freqs[1:]))  # monotone in g


def test_cli_fit_nonconverged_exit_code(tmp_path):
    branch_csv = tmp_path / "branches.csv"
    controls = np.linspace(4.0, 4.44, 12)
    rows = ["control_value,freq1_GHz,freq2_GHz"]
    for i, c in enumerate(controls):
        rows.append(f"{c},{4.1 + 0.01 * i},{4.3 + 0.01 * i}")
    branch_csv.write_text("\n".join(rows) + "\n")
    cfg = tmp_path / "fit.cfg"
    cfg.write_text(
        f"[fit]\nbranch_csv = {branch_csv}\nomega_a = 4.22\nalpha_eff = 0.011\n"
        "beta_eff = 0.002\ninit_j = 0.05\ninit_gamma_eff = 0.01\n"
        "init_slope = 1.0\ninit_intercept = 0.0\nmax_iter = 2\n"
    )
    out = tmp_path / "fit"
    assert main(["fit", "--config", str(cfg), "--out", str(out)]) == 4
    assert (out / "fit_report.txt").exists()
    assert "converged = false" in (out / "fit_report.txt").read_text()


def test_cli_config_error_exit_code(tmp_path):
    cfg = tmp_path / "broken.cfg"
    cfg.write_text("omega_a = 4.22\n")  # missing everything else
    assert main(["spectrum", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 2
    assert main(["spectrum", "--preset", "nope", "--out", str(tmp_path / "o2")]) == 2


def test_cli_requires_config_or_preset(tmp_path):
    assert main(["spectrum", "--out", str(tmp_path / "o")]) == 2
