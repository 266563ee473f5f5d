"""Coupled-mode laboratory for photon-photon induced transparency and absorption.

A linear two-mode model on a common signal line, with coherent plus
dissipative inter-mode coupling, exposed as composable pieces:

- :mod:`cmt_lab.params` - parameter model and derived effective quantities
- :mod:`cmt_lab.spectrum` - transmission spectra and dispersion maps
- :mod:`cmt_lab.eigen` - coupling-matrix eigenbranches, regime
  classification and phase diagrams
- :mod:`cmt_lab.timedomain` - driven time integration as an independent
  check of the frequency-domain model
- :mod:`cmt_lab.fitting` - peak extraction and coupling-constant fits
- :mod:`cmt_lab.geometry` - lumped-LC surrogate for resonator geometry
- :mod:`cmt_lab.cli` - the ``cmt-lab`` batch front end
"""

__version__ = "1.0.0"

from .params import EffectiveParams, FrequencyGrid, SystemParams, effective_params
from .spectrum import (
    DispersionMap,
    ModeAmplitudes,
    Spectrum,
    dispersion_map,
    mode_amplitudes,
    s21,
    s21_via_input_output,
    spectrum,
)
from .eigen import (
    CouplingMatrix,
    EigenBranches,
    PhaseDiagramGrid,
    Regime,
    RegimeLabel,
    classify_analytic,
    classify_numeric,
    coupling_matrix,
    eigenbranches,
    phase_diagram,
)
from .timedomain import (
    DriveSpec,
    SteadyState,
    TimeTrace,
    dynamic_poles,
    integrate,
    minimum_mode_damping,
    oracle_s21,
    steady_state,
)
from .fitting import (
    BranchData,
    FitResult,
    Peak,
    PeakList,
    branch_dataset,
    branch_model_frequencies,
    extract_peaks,
    fit_coupling,
)
from .geometry import CalibrationResult, GeometryModel, calibrate, resonance_frequency

__all__ = [
    "__version__",
    "SystemParams", "EffectiveParams", "FrequencyGrid", "effective_params",
    "ModeAmplitudes", "Spectrum", "DispersionMap",
    "mode_amplitudes", "s21", "s21_via_input_output", "spectrum", "dispersion_map",
    "CouplingMatrix", "EigenBranches", "Regime", "RegimeLabel", "PhaseDiagramGrid",
    "coupling_matrix", "eigenbranches", "classify_numeric", "classify_analytic",
    "phase_diagram",
    "DriveSpec", "TimeTrace", "SteadyState",
    "integrate", "steady_state", "oracle_s21", "dynamic_poles", "minimum_mode_damping",
    "Peak", "PeakList", "BranchData", "FitResult",
    "extract_peaks", "branch_dataset", "fit_coupling", "branch_model_frequencies",
    "GeometryModel", "CalibrationResult", "calibrate", "resonance_frequency",
]
