"""Classical-limit data: circular orbit, zeroth energy and leading log-derivative."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import DegenerateDenominatorError, NoStableOrbitError, UnstableOrbitError
from .models import MassModel, ModelDomainError, PotentialModel, taylor_coeffs
from .series import TruncatedSeries

log = logging.getLogger(__name__)

SCAN_DECADES = 6
SCAN_POINTS = 2401


@dataclass(frozen=True)
class ClassicalPoint:
    """Expansion point of the semiclassical series.

    ``shape`` holds ``a_0 = 1, a_1, a_2, ...`` of
    ``C_0(x)^2 = omega^2 x^2 (1 + a_1 x + ...)`` and ``C0`` the coefficients
    ``C_i^0`` of ``C_0(x) = x sum C_i^0 x^i``.
    """

    r0: float
    E0: float
    omega: float
    shape: TruncatedSeries
    C0: TruncatedSeries
    lam: float
    meta: dict = field(default_factory=dict)


def orbit_residual(mass: MassModel, pot: PotentialModel, lam: float, r):
    """``m r^3 V' - Lambda^2 (1 + m' r / (2 m))``; zero on a circular orbit."""
    m = mass.value(r)
    return m * r**3 * pot.d1(r) - lam**2 * (1.0 + mass.d1(r) * r / (2.0 * m))


def _residual_on(mass, pot, lam, r: np.ndarray) -> np.ndarray:
    with np.errstate(all="ignore"):
        try:
            return np.asarray(orbit_residual(mass, pot, lam, r), dtype=float)
        except ModelDomainError:
            pass
        out = np.full(r.shape, np.nan)
        for i, ri in enumerate(r):
            try:
                out[i] = orbit_residual(mass, pot, lam, ri)
            except (ModelDomainError, ZeroDivisionError):
                continue
        return out


def _scan_scale(mass: MassModel, pot: PotentialModel, lam: float) -> float:
    try:
        ref = float(mass.value(1.0) * abs(pot.d1(1.0)))
    except ModelDomainError:
        ref = 0.0
    if not np.isfinite(ref) or ref <= 0.0:
        return 1.0
    return lam**2 / ref


def omega_squared(m: TruncatedSeries, v: TruncatedSeries) -> float:
    """Squared leading frequency from scaled Taylor data (needs order >= 2)."""
    denom = 2.0 * m[0] + m[1]
    if denom == 0.0:
        raise DegenerateDenominatorError("2 m_0 + m_1 = 0 at the orbit radius")
    return 2.0 * (m[0] * v[2] + m[1] * v[1]) + 2.0 * m[0] * v[1] * (3.0 * m[0] - m[2]) / denom


def orbit_roots(mass: MassModel, pot: PotentialModel, lam: float) -> list[tuple[float, float]]:
    """All bracketed orbit radii with their ``omega^2``, in ascending radius."""
    if not lam > 0.0:
        raise ValueError(f"Lambda must be positive, got {lam}")
    rs = _scan_scale(mass, pot, lam)
    r = np.geomspace(rs * 10.0**-SCAN_DECADES, rs * 10.0**SCAN_DECADES, SCAN_POINTS)
    g = _residual_on(mass, pot, lam, r)
    f = lambda x: float(orbit_residual(mass, pot, lam, x))

    roots = []
    for i in range(r.size - 1):
        g0, g1 = g[i], g[i + 1]
        if not (np.isfinite(g0) and np.isfinite(g1)):
            continue
        if g0 == 0.0:
            root = r[i]
        elif g0 * g1 < 0.0:
            root = brentq(f, r[i], r[i + 1], xtol=1e-14 * r[i], rtol=1e-15, maxiter=400)
        else:
            continue
        root = _newton_polish(f, root)
        try:
            m = taylor_coeffs(mass, root, 2)
            v = taylor_coeffs(pot, root, 2)
            w2 = omega_squared(m, v)
        except (ModelDomainError, DegenerateDenominatorError):
            continue
        roots.append((root, w2))
    return roots


def _newton_polish(f, r: float) -> float:
    h = r * 1e-6
    f0 = f(r)
    slope = (f(r + h) - f(r - h)) / (2.0 * h)
    if slope == 0.0 or not np.isfinite(slope):
        return r
    trial = r - f0 / slope
    if trial > 0.0 and abs(f(trial)) < abs(f0):
        return trial
    return r


def find_orbit_radius(mass: MassModel, pot: PotentialModel, lam: float) -> float:
    """Smallest radius of a stable circular orbit (minimum of the effective potential)."""
    return _select_root(mass, pot, lam)[0]


def _select_root(mass, pot, lam):
    roots = orbit_roots(mass, pot, lam)
    if not roots:
        raise NoStableOrbitError(f"no circular orbit found for Lambda={lam}")
    stable = [r for r, w2 in roots if w2 > 0.0]
    if not stable:
        raise UnstableOrbitError(f"all {len(roots)} orbit radii are unstable for Lambda={lam}")
    if len(stable) > 1:
        log.info("%d stable orbits for Lambda=%g; using the innermost", len(stable), lam)
    return stable[0], len(stable)


def zeroth_energy(mass: MassModel, pot: PotentialModel, lam: float, r0: float) -> float:
    """Bottom of the effective potential ``V + Lambda^2/(2 m r^2)`` at ``r0``."""
    return float(pot.value(r0) + lam**2 / (2.0 * mass.value(r0) * r0**2))


def _raw(s) -> np.ndarray:
    return s.coeffs if isinstance(s, TruncatedSeries) else np.asarray(s)


def shape_coefficients(m, v, order: int):
    """``(omega^2, a)`` from scaled Taylor data of mass and potential.

    Works for any scalar type supporting field arithmetic (floats or
    mpmath numbers in object arrays); ``a[0] = 1``.
    """
    m, v = _raw(m), _raw(v)
    if m.size < order + 3 or v.size < order + 3:
        raise ValueError(f"need Taylor data to order {order + 2}")
    denom = 2 * m[0] + m[1]
    if denom == 0:
        raise DegenerateDenominatorError("2 m_0 + m_1 = 0 at the orbit radius")
    w2 = 2 * (m[0] * v[2] + m[1] * v[1]) + 2 * m[0] * v[1] * (3 * m[0] - m[2]) / denom
    balance = m[0] ** 2 * v[1] / denom
    a = np.empty(order + 1, dtype=m.dtype)
    a[0] = 1
    for i in range(1, order + 1):
        conv = np.dot(m[: i + 2], v[i + 2 : 0 : -1])
        a[i] = 2 / w2 * (conv + balance * ((i + 3) * (-1) ** i - m[i + 2] / m[0]))
    return w2, a


def logderiv_coefficients(omega, shape) -> np.ndarray:
    """``C_i^0`` from ``C_0^0 = -omega`` and the square-root recursion (any scalar type)."""
    shape = _raw(shape)
    c = np.empty(shape.size, dtype=shape.dtype)
    c[0] = -omega
    w2 = omega * omega
    for i in range(1, shape.size):
        cross = np.dot(c[1:i], c[i - 1 : 0 : -1]) if i > 1 else 0
        c[i] = (cross - w2 * shape[i]) / (2 * omega)
    return c


def leading_frequency(m: TruncatedSeries, v: TruncatedSeries, r0: float, order: int):
    """Frequency ``omega`` and shape coefficients ``a_i`` of ``C_0^2``.

    The centrifugal term has been eliminated with the orbit condition, so
    only the scaled Taylor data of mass and potential enter. Returns
    ``(omega, a)`` where ``a`` is a series with ``a_0 = 1``.
    """
    if m.order < order + 2 or v.order < order + 2:
        raise ValueError(f"need Taylor data to order {order + 2}")
    w2, a = shape_coefficients(m, v, order)
    if not w2 > 0.0:
        raise UnstableOrbitError(f"omega^2 = {w2:.6g} is not positive at r0={r0}")
    return float(np.sqrt(w2)), TruncatedSeries(a)


def leading_logderiv(omega: float, shape: TruncatedSeries, order: int) -> TruncatedSeries:
    """Coefficients ``C_i^0`` of the classical log-derivative, negative branch."""
    if not omega > 0.0:
        raise UnstableOrbitError("omega must be positive")
    return TruncatedSeries(logderiv_coefficients(omega, shape.truncate(order)))


def classical_point(mass: MassModel, pot: PotentialModel, lam: float, order: int) -> ClassicalPoint:
    """Orbit, zeroth energy and ``C_0`` series to ``order``."""
    r0, n_stable = _select_root(mass, pot, lam)
    m = taylor_coeffs(mass, r0, order + 2)
    v = taylor_coeffs(pot, r0, order + 2)
    omega, shape = leading_frequency(m, v, r0, order)
    return ClassicalPoint(
        r0=r0,
        E0=zeroth_energy(mass, pot, lam, r0),
        omega=omega,
        shape=shape,
        C0=leading_logderiv(omega, shape, order),
        lam=lam,
        meta={"stable_roots": n_stable, "multiple_stable_roots": n_stable > 1},
    )
