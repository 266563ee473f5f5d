"""Independent time-domain verification path.

Integrates the driven equations of motion of the two mode amplitudes in
the lab frame,

    dA/dt = -1j*(omega_a - 1j*alpha)*A - 1j*sqrt(gamma)*p_in(t)
            - gamma*A - sqrt(kappa*gamma)*B - 1j*(j + 1j*big_gamma)*B
    dB/dt = -1j*(omega_b - 1j*beta)*B  - 1j*sqrt(kappa)*p_in(t)
            - kappa*B - sqrt(kappa*gamma)*A - 1j*(j + 1j*big_gamma)*A

from A(0) = B(0) = 0 under a classical harmonic drive
p_in(t) = amplitude * exp(-1j*omega*t), with fixed-step classical RK4.
The steady-state phasors (demodulated tail averages) reconstruct the
transmission through the port relation

    s21 = (p_in - 2j*sqrt(kappa)*B - 2j*sqrt(gamma)*A) / p_in - 1,

giving a route to s21 that never touches the closed-form denominator.

The amplitudes are classical c-numbers: the system is linear and the
drive coherent, so operator expectation values obey the same equations
and s21 is a classical transfer function.  The time-retarded companion
equations (which carry anti-damped +gamma terms) are derivation-only and
are deliberately not integrated.

Note on stability: the poles of the driven dynamics are the eigenvalues
of the system matrix above, whose dissipative coupling is
big_gamma - sqrt(gamma*kappa) (bath-mediated cross-damping enters with
the opposite sign to the coherent channel).  A large bare ``big_gamma``
with weak damping can push a pole into the gain half-plane; such
parameter sets have no steady state and are rejected up front.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import IntegrationUnstableError, NotConvergedError, ValidationError
from .params import SystemParams, effective_params

__all__ = [
    "DriveSpec",
    "TimeTrace",
    "SteadyState",
    "dynamic_poles",
    "minimum_mode_damping",
    "default_time_step",
    "default_end_time",
    "integrate",
    "steady_state",
    "oracle_s21",
    "RESIDUAL_THRESHOLD",
]

# Residual oscillation above this means the trace tail is not steady.
RESIDUAL_THRESHOLD = 1e-5

# Blow-up guard: |A| or |B| beyond this multiple of the drive amplitude
# signals gain (invalid parameters) or an integration bug.
_INSTABILITY_FACTOR = 1e6

# Target relative accuracy of the steady-state phasors; the step-size
# rule below converts it into dt via the resonant error amplification
# ~ |E|^5 * dt^4 / (120 * |omega - E_pole|).
_PHASOR_TOLERANCE = 1e-9

_DEFAULT_TRACE_POINTS = 200_001


@dataclass(frozen=True)
class DriveSpec:
    """Harmonic drive: p_in(t) = amplitude * exp(-1j*omega*t)."""

    omega: float
    amplitude: complex = 1.0 + 0j

    def __post_init__(self):
        if self.amplitude == 0:
            raise ValidationError("drive amplitude must be nonzero")
        if not math.isfinite(self.omega) or self.omega <= 0:
            raise ValidationError("drive omega must be finite and > 0")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega


@dataclass(frozen=True, eq=False)
class TimeTrace:
    """Sampled mode amplitudes (possibly decimated) along an integration."""

    times: np.ndarray
    a_values: np.ndarray
    b_values: np.ndarray
    drive: DriveSpec

    def __post_init__(self):
        if not (len(self.times) == len(self.a_values) == len(self.b_values)):
            raise ValidationError("trace arrays must have equal lengths")
        if np.any(np.diff(self.times) <= 0):
            raise ValidationError("trace times must be strictly increasing")


@dataclass(frozen=True)
class SteadyState:
    """Drive-frame phasors of both modes plus the residual transient level."""

    a: complex
    b: complex
    residual_oscillation: float


def dynamic_poles(p: SystemParams) -> tuple[complex, complex]:
    """Complex pole frequencies of the driven dynamics.

    Eigenvalues E of the system matrix written as d/dt v = -1j*H v; their
    imaginary parts are the negative mode dampings (Im E > 0 means gain).
    """
    eff = effective_params(p)
    cross = complex(p.j, p.big_gamma - math.sqrt(p.gamma * p.kappa))
    mean = 0.5 * (eff.omega_a_tilde + eff.omega_b_tilde)
    diff = eff.omega_a_tilde - eff.omega_b_tilde
    root = np.sqrt(4.0 * cross**2 + diff**2)
    return complex(mean + 0.5 * root), complex(mean - 0.5 * root)


def minimum_mode_damping(p: SystemParams) -> float:
    """Smallest decay rate among the dynamic poles (negative means gain)."""
    e1, e2 = dynamic_poles(p)
    return min(-e1.imag, -e2.imag)


def _step_bound(p: SystemParams, drive_omega: float) -> float:
    eff = effective_params(p)
    return 0.1 / max(p.omega_a, p.omega_b, drive_omega, eff.alpha_eff, eff.beta_eff)


def default_time_step(p: SystemParams, drive: DriveSpec) -> float:
    """Accuracy-driven fixed step.

    Bounded by 0.02/omega_max for the forcing quadrature and tightened by
    the resonant amplification of the local truncation error when the
    drive sits close to a weakly damped pole.
    """
    poles = dynamic_poles(p)
    dist = min(abs(drive.omega - e) for e in poles)
    dist = max(dist, 1e-6)
    scale = max(p.omega_a, p.omega_b, drive.omega)
    dt = min(0.02 / scale, (120.0 * _PHASOR_TOLERANCE * dist / scale**5) ** 0.25)
    return min(dt, _step_bound(p, drive.omega))


def default_end_time(p: SystemParams, drive: DriveSpec) -> float:
    """Integration horizon: 40 transient e-foldings of the slowest pole.

    The slowest pole can be far slower than min(alpha_eff, beta_eff) when
    dissipative coupling makes one hybrid mode subradiant, so the pole
    damping (not the bare dampings) sets the horizon.
    """
    damping = minimum_mode_damping(p)
    if damping <= 0:
        raise IntegrationUnstableError(
            "parameters give a dynamic pole with non-negative growth rate "
            f"(min damping {damping:.3e}); no steady state exists"
        )
    return max(40.0 / damping, 30.0 * drive.period)


@njit(cache=True)
def _rk4_kernel(ca, cb, cab, fa, fb, omega, amp, dt, n_steps, stride, guard):
    """Fixed-step RK4 of the two-mode system; stores every ``stride``-th step."""
    n_store = n_steps // stride + 2
    times = np.empty(n_store, dtype=np.float64)
    a_out = np.empty(n_store, dtype=np.complex128)
    b_out = np.empty(n_store, dtype=np.complex128)
    a = 0.0 + 0.0j
    b = 0.0 + 0.0j
    times[0] = 0.0
    a_out[0] = a
    b_out[0] = b
    m = 1
    status = 0
    p0 = amp
    for i in range(n_steps):
        t = i * dt
        ph = amp * np.exp(-1j * omega * (t + 0.5 * dt))
        p1 = amp * np.exp(-1j * omega * (t + dt))
        k1a = ca * a + cab * b + fa * p0
        k1b = cb * b + cab * a + fb * p0
        a2 = a + 0.5 * dt * k1a
        b2 = b + 0.5 * dt * k1b
        k2a = ca * a2 + cab * b2 + fa * ph
        k2b = cb * b2 + cab * a2 + fb * ph
        a3 = a + 0.5 * dt * k2a
        b3 = b + 0.5 * dt * k2b
        k3a = ca * a3 + cab * b3 + fa * ph
        k3b = cb * b3 + cab * a3 + fb * ph
        a4 = a + dt * k3a
        b4 = b + dt * k3b
        k4a = ca * a4 + cab * b4 + fa * p1
        k4b = cb * b4 + cab * a4 + fb * p1
        a = a + (dt / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
        b = b + (dt / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
        p0 = p1
        if (i + 1) % stride == 0 or i == n_steps - 1:
            times[m] = (i + 1) * dt
            a_out[m] = a
            b_out[m] = b
            m += 1
        if (i & 1023) == 0 and (abs(a) > guard or abs(b) > guard):
            status = 1
            break
    return times[:m], a_out[:m], b_out[:m], status


def integrate(
    p: SystemParams,
    drive: DriveSpec,
    t_end: float,
    dt: float,
    max_stored: int = _DEFAULT_TRACE_POINTS,
) -> TimeTrace:
    """Integrate from rest over [0, t_end] with fixed step ``dt``.

    ``dt`` must satisfy dt <= 0.1 / max(omega_a, omega_b, drive omega,
    total dampings).  Long runs are decimated so at most ``max_stored``
    samples are kept (the final step is always stored).  A recommended
    horizon is t_end >= 20 / (smallest pole damping); shorter runs are
    permitted and surface later as a non-converged steady state.
    """
    if t_end <= 0 or dt <= 0:
        raise ValidationError("t_end and dt must be positive")
    bound = _step_bound(p, drive.omega)
    if dt > bound * (1 + 1e-12):
        raise ValidationError(
            f"dt = {dt:.3e} exceeds the step bound 0.1/max(frequencies, rates) = {bound:.3e}"
        )
    n_steps = int(math.ceil(t_end / dt))
    if n_steps > 2_000_000_000:
        raise ValidationError(
            f"{n_steps} steps requested; the parameters sit too close to the "
            "gain/subradiance boundary for a fixed-step integration"
        )
    stride = max(1, -(-n_steps // (max_stored - 1)))
    times, a, b, status = _rk4_kernel(
        _coef_ca(p), _coef_cb(p), _coef_cab(p),
        -1j * math.sqrt(p.gamma), -1j * math.sqrt(p.kappa),
        drive.omega, complex(drive.amplitude), dt, n_steps, stride,
        _INSTABILITY_FACTOR * abs(drive.amplitude),
    )
    if status != 0:
        raise IntegrationUnstableError(
            "mode amplitudes exceeded the blow-up guard: parameters produce gain "
            "(check big_gamma against the mode dampings) or the step is unstable"
        )
    return TimeTrace(times=times, a_values=a, b_values=b, drive=drive)


def _coef_ca(p: SystemParams) -> complex:
    return -1j * complex(p.omega_a, -p.alpha) - p.gamma


def _coef_cb(p: SystemParams) -> complex:
    return -1j * complex(p.omega_b, -p.beta) - p.kappa


def _coef_cab(p: SystemParams) -> complex:
    return -(math.sqrt(p.kappa * p.gamma) + 1j * complex(p.j, p.big_gamma))


def steady_state(trace: TimeTrace, window: float) -> SteadyState:
    """Extract drive-frame phasors by demodulating the trace tail.

    The final ``window`` time units (at least 5 drive periods) are
    multiplied by exp(+1j*omega*t) and averaged.  The residual
    oscillation (max-min)/mean of the demodulated magnitude measures the
    remaining transient; above RESIDUAL_THRESHOLD the state is rejected
    as not converged.
    """
    if window < 5.0 * trace.drive.period:
        raise ValidationError("window must cover at least 5 drive periods")
    t = trace.times
    if window > t[-1] - t[0]:
        raise ValidationError("window is longer than the stored trace")
    sel = t >= t[-1] - window
    if int(sel.sum()) < 4:
        raise ValidationError("too few stored samples in the averaging window")
    tt = t[sel]
    rot = np.exp(1j * trace.drive.omega * tt)
    za = trace.a_values[sel] * rot
    zb = trace.b_values[sel] * rot
    residual = 0.0
    for z in (za, zb):
        mag = np.abs(z)
        mean = float(mag.mean())
        if mean > 0.0:
            residual = max(residual, float(mag.max() - mag.min()) / mean)
    if residual > RESIDUAL_THRESHOLD:
        raise NotConvergedError(
            f"residual oscillation {residual:.3e} exceeds {RESIDUAL_THRESHOLD:.0e}; "
            "integrate longer (t_end >= 40 / slowest pole damping)"
        )
    return SteadyState(a=complex(za.mean()), b=complex(zb.mean()), residual_oscillation=residual)


def oracle_s21(
    p: SystemParams,
    omega: float,
    amplitude: complex = 1.0 + 0j,
    t_end: float | None = None,
    dt: float | None = None,
) -> complex:
    """Transmission at ``omega`` from the time-domain steady state.

    Defaults integrate for 40 e-foldings of the slowest pole with the
    accuracy-driven step; the result is amplitude-independent (the model
    is linear) and serves as the independent check of the closed form.
    """
    drive = DriveSpec(omega=omega, amplitude=amplitude)
    if t_end is None:
        t_end = default_end_time(p, drive)
    else:
        # Still refuse plainly unstable parameter sets up front.
        if minimum_mode_damping(p) <= 0:
            raise IntegrationUnstableError(
                "parameters give a dynamic pole with non-negative growth rate; "
                "no steady state exists"
            )
    if dt is None:
        dt = default_time_step(p, drive)
    trace = integrate(p, drive, t_end, dt)
    window = min(10.0 * drive.period, 0.5 * (trace.times[-1] - trace.times[0]))
    window = max(window, 5.0 * drive.period)
    ss = steady_state(trace, window)
    amp = complex(drive.amplitude)
    p_out = amp - 2j * math.sqrt(p.kappa) * ss.b - 2j * math.sqrt(p.gamma) * ss.a
    return p_out / amp - 1.0
