"""Parameter model of the two-mode hybrid system.

Two photon modes A and B sit on a common signal line.  Each mode has a
resonance frequency (``omega_a``, ``omega_b``), an intrinsic damping rate
(``alpha``, ``beta``) and an extrinsic damping rate into the line
(``gamma``, ``kappa``).  The modes are mutually coupled by a complex
constant ``j + i*big_gamma`` (coherent plus dissipative part).

Everything downstream works with the derived effective quantities

    alpha_eff = alpha + gamma
    beta_eff  = beta + kappa
    gamma_eff = big_gamma + sqrt(gamma*kappa)
    delta_eff = j + 1j*gamma_eff

All frequencies and rates are expressed in one consistent linear unit
(GHz); the model equations are unit-homogeneous, so any self-consistent
convention is equivalent.  Values are validated eagerly at construction,
so downstream modules may assume valid inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

import numpy as np

from .errors import ValidationError

__all__ = [
    "SystemParams",
    "EffectiveParams",
    "FrequencyGrid",
    "effective_params",
]


@dataclass(frozen=True)
class SystemParams:
    """Raw model parameters, all in GHz.

    ``j`` may carry either sign; ``big_gamma`` is restricted to be
    non-negative (the signed extension is deliberately unsupported).
    """

    omega_a: float
    omega_b: float
    alpha: float
    beta: float
    gamma: float
    kappa: float
    j: float
    big_gamma: float

    def __post_init__(self):
        for name in ("omega_a", "omega_b"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0.0:
                raise ValidationError(f"{name} must be finite and > 0, got {value!r}")
        for name in ("alpha", "beta", "gamma", "kappa", "big_gamma"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0.0:
                raise ValidationError(f"{name} must be finite and >= 0, got {value!r}")
        if not math.isfinite(self.j):
            raise ValidationError(f"j must be finite, got {self.j!r}")

    @classmethod
    def field_names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    @classmethod
    def from_mapping(cls, mapping) -> "SystemParams":
        """Build from a name -> value mapping; keys must match the field list exactly."""
        names = set(cls.field_names())
        given = set(mapping)
        missing = sorted(names - given)
        unknown = sorted(given - names)
        if missing:
            raise ValidationError(f"missing parameter(s): {', '.join(missing)}")
        if unknown:
            raise ValidationError(f"unknown parameter(s): {', '.join(unknown)}")
        return cls(**{k: float(v) for k, v in mapping.items()})

    def with_omega_b(self, omega_b: float) -> "SystemParams":
        return replace(self, omega_b=float(omega_b))

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in self.field_names()}


@dataclass(frozen=True)
class EffectiveParams:
    """Derived quantities entering the coupling matrix and its eigenvalues.

    ``omega_a_tilde`` and ``omega_b_tilde`` are the complex frequencies
    omega - 1j*(total damping) of the two modes.
    """

    alpha_eff: float
    beta_eff: float
    gamma_eff: float
    delta_eff: complex
    omega_a_tilde: complex
    omega_b_tilde: complex


def effective_params(p: SystemParams) -> EffectiveParams:
    """Derive the effective (primed) quantities from raw parameters.

    Deterministic, pure arithmetic on the input fields:
    alpha' = alpha + gamma, beta' = beta + kappa,
    Gamma' = big_gamma + sqrt(gamma*kappa), Delta' = j + 1j*Gamma'.
    """
    alpha_eff = p.alpha + p.gamma
    beta_eff = p.beta + p.kappa
    gamma_eff = p.big_gamma + math.sqrt(p.gamma * p.kappa)
    return EffectiveParams(
        alpha_eff=alpha_eff,
        beta_eff=beta_eff,
        gamma_eff=gamma_eff,
        delta_eff=complex(p.j, gamma_eff),
        omega_a_tilde=complex(p.omega_a, -alpha_eff),
        omega_b_tilde=complex(p.omega_b, -beta_eff),
    )


@dataclass(frozen=True)
class FrequencyGrid:
    """A uniform frequency axis: ``count`` points from ``start`` to ``stop`` (GHz)."""

    start: float
    stop: float
    count: int

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValidationError("grid endpoints must be finite")
        if not self.start < self.stop:
            raise ValidationError(
                f"grid start must be < stop, got [{self.start!r}, {self.stop!r}]"
            )
        if int(self.count) != self.count or self.count < 2:
            raise ValidationError(f"grid count must be an integer >= 2, got {self.count!r}")

    @property
    def step(self) -> float:
        return (self.stop - self.start) / (self.count - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)

    def nearest_index(self, value: float) -> int:
        i = round((value - self.start) / self.step)
        return int(min(max(i, 0), self.count - 1))
