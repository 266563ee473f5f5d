import math

import numpy as np
import pytest

from cmt_lab import (
    FrequencyGrid,
    SystemParams,
    dispersion_map,
    mode_amplitudes,
    s21,
    s21_via_input_output,
    spectrum,
)
from cmt_lab.errors import SingularDenominatorError
from cmt_lab.fitting import branch_dataset

from conftest import BASELINE, random_params
from helpers_oracle import oracle_amplitudes, oracle_s21_closed, to_complex

# Frozen ahead of the build by 50-digit substitution into the closed forms
# (see helpers_oracle): baseline dampings, j = 0.05, driven on resonance.
BASELINE_J05_A = -0.61468166153050549998 - 0.11718925503077621969j
BASELINE_J05_B = -1.957834332582856173 - 0.25905428098145991023j
BASELINE_J05_S21 = -0.03982188231652830264 + 0.24676064775084980023j


def test_decoupled_line_gives_zero():
    p = SystemParams(omega_a=4.22, omega_b=4.1, alpha=0.001, beta=0.002,
                     gamma=0.0, kappa=0.0, j=0.03, big_gamma=0.0)
    for omega in (3.5, 4.22, 5.0):
        amps = mode_amplitudes(p, omega)
        assert amps.a == 0 and amps.b == 0
        assert s21(p, omega) == 0
    grid = FrequencyGrid(4.0, 4.4, 2)
    assert np.all(spectrum(p, grid).s21 == 0)


def test_single_mode_amplitude_closed_form():
    # kappa = 0, j = big_gamma = 0, driven at omega_a: a = -1j*sqrt(gamma)/(gamma+alpha).
    p = SystemParams(omega_a=4.22, omega_b=4.0, alpha=0.001, beta=0.002,
                     gamma=0.01, kappa=0.0, j=0.0, big_gamma=0.0)
    amps = mode_amplitudes(p, 4.22)
    expected = -1j * math.sqrt(0.01) / 0.011
    assert amps.a == pytest.approx(expected, rel=1e-14)
    assert amps.b == 0
    ora, orb = oracle_amplitudes(p, 4.22)
    assert amps.a == pytest.approx(to_complex(ora), rel=1e-14)


def test_baseline_amplitudes_match_frozen_oracle(params_cit):
    amps = mode_amplitudes(params_cit, 4.22)
    assert amps.a == pytest.approx(BASELINE_J05_A, rel=1e-13)
    assert amps.b == pytest.approx(BASELINE_J05_B, rel=1e-13)
    assert s21(params_cit, 4.22) == pytest.approx(BASELINE_J05_S21, rel=1e-13)


def test_resonant_uncoupled_s21_value(params_uncoupled):
    # omega = omega_a = omega_b with j = big_gamma = 0 reduces to
    # -2(alpha*kappa + beta*gamma)/(alpha*beta + alpha*kappa + beta*gamma),
    # = -11/6 for the baseline dampings (verified by substitution oracle).
    value = s21(params_uncoupled, 4.22)
    assert value == pytest.approx(-11.0 / 6.0, rel=1e-13)
    assert value == pytest.approx(to_complex(oracle_s21_closed(params_uncoupled, 4.22)), rel=1e-13)


def test_direct_equals_input_output_composition():
    rng = np.random.default_rng(10)
    for _ in range(300):
        p = random_params(rng)
        omega = rng.uniform(3.0, 7.0)
        direct = s21(p, omega)
        composed = s21_via_input_output(p, omega)
        assert abs(direct - composed) <= 1e-12 * max(1.0, abs(direct))


def test_matches_high_precision_oracle():
    rng = np.random.default_rng(11)
    for _ in range(50):
        p = random_params(rng)
        omega = rng.uniform(3.0, 7.0)
        expected = to_complex(oracle_s21_closed(p, omega))
        assert s21(p, omega) == pytest.approx(expected, rel=1e-12, abs=1e-15)


def test_role_swap_reciprocity():
    rng = np.random.default_rng(12)
    for _ in range(200):
        p = random_params(rng)
        swapped = SystemParams(
            omega_a=p.omega_b, omega_b=p.omega_a, alpha=p.beta, beta=p.alpha,
            gamma=p.kappa, kappa=p.gamma, j=p.j, big_gamma=p.big_gamma,
        )
        omega = rng.uniform(3.0, 7.0)
        assert s21(p, omega) == pytest.approx(s21(swapped, omega), rel=1e-12)


def test_spectrum_pointwise_and_deterministic(params_cit):
    grid = FrequencyGrid(4.0, 4.44, 201)
    spec = spectrum(params_cit, grid)
    for i in (0, 57, 200):
        assert spec.s21[i] == s21(params_cit, float(grid.points[i]))
    again = spectrum(params_cit, grid)
    assert np.array_equal(spec.s21, again.s21)


def test_single_mode_extremum_at_nearest_grid_point():
    # |s21| reduces to 2*gamma/sqrt(alpha_eff^2 + (omega-omega_a)^2): the
    # magnitude peaks at the grid point nearest omega_a (brute-force scan).
    p = SystemParams(omega_a=4.2204, omega_b=4.0, alpha=0.001, beta=0.002,
                     gamma=0.01, kappa=0.0, j=0.0, big_gamma=0.0)
    grid = FrequencyGrid(4.19, 4.25, 101)
    spec = spectrum(p, grid)
    assert int(np.argmax(spec.magnitude)) == grid.nearest_index(p.omega_a)


def test_singular_denominator_reports_location():
    # All dampings zero and no coupling: denominator vanishes on resonance.
    p = SystemParams(omega_a=4.22, omega_b=4.22, alpha=0, beta=0,
                     gamma=0, kappa=0, j=0, big_gamma=0)
    with pytest.raises(SingularDenominatorError, match="4.22"):
        s21(p, 4.22)
    grid = FrequencyGrid(4.21, 4.23, 3)
    with pytest.raises(SingularDenominatorError, match="index 1"):
        spectrum(p, grid)


def test_dispersion_rows_equal_independent_spectra(params_cit):
    detunings = FrequencyGrid(4.1, 4.3, 5)
    drive = FrequencyGrid(4.0, 4.4, 101)
    dmap = dispersion_map(params_cit, detunings, drive)
    assert dmap.n_singular == 0
    for i, wb in enumerate(detunings.points):
        row_spec = spectrum(params_cit.with_omega_b(float(wb)), drive)
        assert np.array_equal(dmap.magnitudes[i], row_spec.magnitude)


def test_dispersion_flags_singular_cells():
    p = SystemParams(omega_a=4.22, omega_b=4.22, alpha=0, beta=0,
                     gamma=0, kappa=0, j=0, big_gamma=0)
    detunings = FrequencyGrid(4.21, 4.23, 3)
    drive = FrequencyGrid(4.21, 4.23, 3)
    dmap = dispersion_map(p, detunings, drive)
    # Each row's resonance with omega_b == omega drive is singular where
    # both coincide with omega_a... at least the (omega_b=4.22, omega=4.22) cell.
    assert (1, 1) in dmap.singular_cells
    assert math.isnan(dmap.magnitudes[1, 1])
    assert dmap.n_singular >= 1
    assert "singular" in dmap.summary()


def test_cit_map_ridges_never_meet(params_cit):
    # Dominant coherent coupling: wherever both ridges are resolved their
    # maxima stay separated by at least ~2j (level repulsion); the weak
    # ridge drops below detectability only in a narrow interference window
    # on the low-frequency side.
    detunings = FrequencyGrid(3.84, 4.59, 151)
    drive = FrequencyGrid(3.80, 4.63, 1661)
    dmap = dispersion_map(params_cit, detunings, drive)
    data = branch_dataset(dmap, min_prominence=0.005)
    assert data.n_skipped == 0
    assert len(data.control) == 151
    two_branch = np.isfinite(data.freq_high)
    assert two_branch.sum() >= 140
    separations = (data.freq_high - data.freq_low)[two_branch]
    assert separations.min() > 0.05  # the splitting stays open, ~2j wide
    suppressed = data.control[~two_branch]
    assert suppressed.max() - suppressed.min() < 0.06  # one narrow window


def test_cia_map_ridges_merge_at_center(params_cia):
    # Dominant dissipative coupling: a contiguous central band of rows
    # shows a single merged ridge (a faint sub-splitting of the merged
    # peak at exact resonance may drop one row as peakless).
    detunings = FrequencyGrid(3.84, 4.59, 151)
    drive = FrequencyGrid(3.80, 4.63, 1661)
    dmap = dispersion_map(params_cia, detunings, drive)
    data = branch_dataset(dmap, min_prominence=0.02)
    assert data.n_skipped <= 1
    merged = ~np.isfinite(data.freq_high)
    assert merged.sum() >= 10
    idx = np.flatnonzero(merged)
    assert np.array_equal(idx, np.arange(idx[0], idx[-1] + 1))  # contiguous band
    center = data.control[merged]
    assert center.min() < 4.22 < center.max()
