"""Independent high-precision oracle for the closed-form expressions.

Evaluates the transfer amplitudes, the port relation and the eigenvalue
branches by direct substitution with 50-digit mpmath arithmetic - a
separate code path from the numpy implementation under test.
"""

from mpmath import mp, mpc, mpf, sqrt

mp.dps = 50


def _pieces(p):
    delta = mpc(p.j, p.big_gamma)
    root = sqrt(mpf(p.kappa) * mpf(p.gamma))
    return delta, root


def oracle_denominator(p, w):
    delta, root = _pieces(p)
    return (1j * delta + root) ** 2 + (
        1j * mpf(p.alpha) + 1j * mpf(p.gamma) + w - mpf(p.omega_a)
    ) * (1j * mpf(p.beta) + 1j * mpf(p.kappa) + w - mpf(p.omega_b))


def oracle_amplitudes(p, w):
    w = mpf(w)
    delta, _ = _pieces(p)
    den = oracle_denominator(p, w)
    sg, sk = sqrt(mpf(p.gamma)), sqrt(mpf(p.kappa))
    a = (delta * sk + 1j * mpf(p.beta) * sg + sg * (w - mpf(p.omega_b))) / den
    b = (delta * sg + 1j * mpf(p.alpha) * sk + sk * (w - mpf(p.omega_a))) / den
    return a, b


def oracle_s21_closed(p, w):
    """Port relation applied to the amplitudes: a route not using Eq.-20 algebra."""
    a, b = oracle_amplitudes(p, w)
    sg, sk = sqrt(mpf(p.gamma)), sqrt(mpf(p.kappa))
    return -2j * (sk * b + sg * a)


def oracle_branch_gap(p, omega_b):
    """E+ - E- by substitution: sqrt(4*Delta'^2 + (wtA' - wtB')^2)."""
    gamma_eff = mpf(p.big_gamma) + sqrt(mpf(p.gamma) * mpf(p.kappa))
    dp = mpc(p.j, gamma_eff)
    wta = mpc(p.omega_a, -(mpf(p.alpha) + mpf(p.gamma)))
    wtb = mpc(omega_b, -(mpf(p.beta) + mpf(p.kappa)))
    return sqrt(4 * dp**2 + (wta - wtb) ** 2)


def to_complex(x) -> complex:
    return complex(float(x.real), float(x.imag))
