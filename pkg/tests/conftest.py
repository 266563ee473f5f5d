import numpy as np
import pytest

from cmt_lab import SystemParams
from cmt_lab.timedomain import minimum_mode_damping

# Baseline damping set used throughout: gamma = 0.01, kappa = 0.001,
# alpha = beta = 0.001, both resonances at 4.22 GHz.
BASELINE = dict(
    omega_a=4.22, omega_b=4.22, alpha=0.001, beta=0.001, gamma=0.01, kappa=0.001
)


@pytest.fixture
def params_cit() -> SystemParams:
    return SystemParams(**BASELINE, j=0.05, big_gamma=0.0)


@pytest.fixture
def params_cia() -> SystemParams:
    return SystemParams(**BASELINE, j=0.0, big_gamma=0.05)


@pytest.fixture
def params_uncoupled() -> SystemParams:
    return SystemParams(**BASELINE, j=0.0, big_gamma=0.0)


def random_params(rng: np.random.Generator, j_max: float = 0.1) -> SystemParams:
    """Random valid parameter set in the acceptance sampling ranges."""
    wa, wb = rng.uniform(3.0, 7.0, 2)
    alpha, beta, gamma, kappa = rng.uniform(1e-4, 1e-1, 4)
    j, big_gamma = rng.uniform(0.0, j_max, 2)
    return SystemParams(
        omega_a=wa, omega_b=wb, alpha=alpha, beta=beta,
        gamma=gamma, kappa=kappa, j=j, big_gamma=big_gamma,
    )


def random_stable_params(
    rng: np.random.Generator, margin: float = 1e-3, j_max: float = 0.1
) -> SystemParams:
    """Redraw until the dynamics have all poles damped by at least ``margin``.

    Large bare big_gamma with weak damping produces gain (no steady state);
    such sets are invalid for time-domain comparisons.
    """
    while True:
        p = random_params(rng, j_max=j_max)
        if minimum_mode_damping(p) >= margin:
            return p
