"""Random analytic mass and potential models with exact Taylor data."""

from dataclasses import dataclass
from math import factorial
from typing import Callable

import mpmath
import numpy as np

from hbarpdm.models import CustomMass, CustomPotential
from hbarpdm.series import TruncatedSeries, series_mul


def exp_series(c, r0, order):
    """Scaled Taylor coefficients of ``exp(-c r)`` about ``r0``."""
    i = np.arange(order + 1)
    return np.exp(-c * r0) * (-c * r0) ** i / np.array([factorial(k) for k in i], dtype=float)


def power_series(p, r0, order):
    """Scaled Taylor coefficients of ``r^p`` about ``r0``."""
    c = np.empty(order + 1)
    c[0] = r0**p
    for i in range(1, order + 1):
        c[i] = c[i - 1] * (p - i + 1) / i
    return c


def bumped_mass(m_c, b, c, a=0.0, lam=0.0):
    """``m_c (1 + a r)^-lam (1 + b e^{-c r})``."""

    def f(r):
        return m_c * (1 + a * r) ** (-lam) * (1 + b * np.exp(-c * r))

    def d1(r):
        u, e = (1 + a * r), np.exp(-c * r)
        return m_c * (-lam * a * u ** (-lam - 1) * (1 + b * e) - u ** (-lam) * b * c * e)

    def d2(r):
        u, e = (1 + a * r), np.exp(-c * r)
        return m_c * (
            lam * (lam + 1) * a**2 * u ** (-lam - 2) * (1 + b * e)
            + 2 * lam * a * u ** (-lam - 1) * b * c * e
            + u ** (-lam) * b * c * c * e
        )

    def taylor(r0, order):
        u0 = 1 + a * r0
        v = a * r0 / u0
        pw = np.empty(order + 1)
        pw[0] = 1.0
        for i in range(1, order + 1):
            pw[i] = pw[i - 1] * (-lam - i + 1) / i * v
        bump = b * exp_series(c, r0, order)
        bump[0] += 1.0
        return series_mul(TruncatedSeries(m_c * u0 ** (-lam) * pw), TruncatedSeries(bump))

    return CustomMass(f, d1, d2, taylor, name="bumped")


def screened_coulomb(q, mu, k=0.0, p=2.0):
    """``-q e^{-mu r}/r + k r^p``."""

    def f(r):
        return -q * np.exp(-mu * r) / r + k * r**p

    def d1(r):
        return q * np.exp(-mu * r) * (1 + mu * r) / r**2 + k * p * r ** (p - 1)

    def taylor(r0, order):
        yuk = series_mul(TruncatedSeries(-q * power_series(-1, r0, order)), TruncatedSeries(exp_series(mu, r0, order)))
        return yuk + TruncatedSeries(k * power_series(p, r0, order))

    return CustomPotential(f, d1, taylor, name="screened")


# -- the same families with mpmath Taylor coefficients ---------------------------


def _mp_exp_series(c, r0, order):
    c, r0 = mpmath.mpf(c), mpmath.mpf(r0)
    e = mpmath.exp(-c * r0)
    return [e * (-c * r0) ** i / mpmath.factorial(i) for i in range(order + 1)]


def _mp_power_series(p, r0, order):
    p, r0 = mpmath.mpf(p), mpmath.mpf(r0)
    out = [r0**p]
    for i in range(1, order + 1):
        out.append(out[-1] * (p - i + 1) / i)
    return out


def _mp_mul(x, y):
    n = len(x)
    return [mpmath.fsum(x[j] * y[i - j] for j in range(i + 1)) for i in range(n)]


def bumped_mass_mp(m_c, b, c, a, lam):
    def taylor(r0, order):
        r0m = mpmath.mpf(r0)
        u0 = 1 + a * r0m
        v = a * r0m / u0
        pw = [mpmath.mpf(1)]
        for i in range(1, order + 1):
            pw.append(pw[-1] * (-lam - i + 1) / i * v)
        bump = [b * e for e in _mp_exp_series(c, r0, order)]
        bump[0] += 1
        return _mp_mul([m_c * u0 ** (-lam) * w for w in pw], bump)

    return taylor


def screened_coulomb_mp(q, mu, k, p):
    def taylor(r0, order):
        inv = [-q * e for e in _mp_power_series(-1, r0, order)]
        yuk = _mp_mul(inv, _mp_exp_series(mu, r0, order))
        return [y + k * w for y, w in zip(yuk, _mp_power_series(p, r0, order))]

    return taylor


@dataclass
class RandomCase:
    mass: CustomMass
    pot: CustomPotential
    mass_mp: Callable
    pot_mp: Callable
    params: dict


def random_case(rng) -> RandomCase:
    """A (mass, potential) pair from a Coulomb-like family with a stable orbit.

    Mass: power law times an exponential bump. Potential: screened Coulomb
    plus a weak confining power. Taylor data come both as doubles and,
    through ``mass_mp``/``pot_mp``, as mpmath numbers at the working
    precision.
    """
    mp = dict(m_c=rng.uniform(0.3, 1.5), b=rng.uniform(-0.4, 0.8), c=rng.uniform(0.1, 1.5),
              a=rng.uniform(0.0, 0.3), lam=rng.uniform(-2.0, 2.0))
    pp = dict(q=rng.uniform(2.0, 15.0), mu=rng.uniform(0.0, 0.2), k=rng.uniform(0.0, 0.05),
              p=float(rng.choice([1.0, 2.0])))
    return RandomCase(
        bumped_mass(**mp), screened_coulomb(**pp), bumped_mass_mp(**mp), screened_coulomb_mp(**pp), {**mp, **pp}
    )


def random_model(rng):
    case = random_case(rng)
    return case.mass, case.pot


# -- extended-precision classical data ----------------------------------------


@dataclass
class MPClassical:
    r0: object
    E0: object
    omega: object
    C0: np.ndarray
    m: np.ndarray
    v: np.ndarray


def mp_classical(case: RandomCase, lam, r_guess, order, dps=40) -> MPClassical:
    """Orbit, zeroth energy and ``C_0`` of ``case`` in mpmath at ``dps`` digits.

    The orbit condition ``m r^3 V' = Lambda^2 (1 + m' r / 2m)`` is written
    with scaled Taylor data as ``m_0 V_1 r^2 = Lambda^2 (1 + m_1 / 2 m_0)``
    and solved by secant iteration from the double-precision radius.
    """
    from hbarpdm.classical import logderiv_coefficients, shape_coefficients

    with mpmath.workdps(dps):
        L2 = mpmath.mpf(lam) ** 2

        def resid(r):
            m = case.mass_mp(r, 1)
            v = case.pot_mp(r, 1)
            return m[0] * v[1] * r**2 - L2 * (1 + m[1] / (2 * m[0]))

        r0 = mpmath.findroot(resid, mpmath.mpf(r_guess), solver="secant", tol=mpmath.mpf(10) ** (-dps + 5))
        m = np.array(case.mass_mp(r0, order + 4), dtype=object)
        v = np.array(case.pot_mp(r0, order + 2), dtype=object)
        E0 = v[0] + L2 / (2 * m[0] * r0**2)
        w2, shape = shape_coefficients(m, v, order)
        omega = mpmath.sqrt(w2)
        return MPClassical(r0, E0, omega, logderiv_coefficients(omega, shape), m, v)


def mp_mass_correction(case: RandomCase, amb, r0, order, dps=40):
    """Scaled Taylor coefficients of ``F = q2 Q^2 - p P`` for the bumped mass.

    ``Q`` and ``P`` are evaluated from the closed-form ``m'`` and ``m''``
    and expanded with :func:`mpmath.taylor`, so no series algebra of the
    package is involved.
    """
    P = case.params
    a, lam, b, c = (mpmath.mpf(P[k]) for k in ("a", "lam", "b", "c"))

    def F(r):
        u, e = 1 + a * r, mpmath.exp(-c * r)
        f = u ** (-lam) * (1 + b * e)
        d1 = -lam * a * u ** (-lam - 1) * (1 + b * e) - u ** (-lam) * b * c * e
        d2 = (lam * (lam + 1) * a**2 * u ** (-lam - 2) * (1 + b * e)
              + 2 * lam * a * u ** (-lam - 1) * b * c * e + u ** (-lam) * b * c * c * e)
        q = d1 / f
        p = (d2 + 2 * d1 / r) / f
        return amb.q2_weight * q * q - amb.p_weight * p

    with mpmath.workdps(dps):
        r0 = mpmath.mpf(r0)
        tay = mpmath.taylor(F, r0, order)
        return np.array([tay[i] * r0**i for i in range(order + 1)], dtype=object)
