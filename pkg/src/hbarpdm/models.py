"""Radial mass profiles, potentials and kinetic-ordering parameters.

Every model exposes pointwise evaluation (vectorised over numpy arrays) and
``taylor(r0, N)``, which returns the scaled Taylor coefficients
``f_i = r0^i f^(i)(r0) / i!`` as a :class:`~hbarpdm.series.TruncatedSeries`
in ``x = (r - r0)/r0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .series import TruncatedSeries, inverse_square_one_plus_x, series_mul, series_recip

ArrayFn = Callable[[np.ndarray], np.ndarray]
TaylorFn = Callable[[float, int], "np.ndarray | TruncatedSeries"]


class ModelDomainError(ValueError):
    """A model cannot be evaluated (singular point or non-positive mass)."""


# -- numerical fallbacks for custom models -----------------------------------


def richardson_derivative(f: ArrayFn, r, order: int = 1, rel_step: float = 1e-4):
    """Central difference with one Richardson step, step ``h = r * rel_step``."""
    r = np.asarray(r, dtype=float)
    h = np.abs(r) * rel_step

    def central(step):
        if order == 1:
            return (f(r + step) - f(r - step)) / (2.0 * step)
        if order == 2:
            return (f(r + step) - 2.0 * f(r) + f(r - step)) / step**2
        raise ValueError("only first and second derivatives are supported")

    return (4.0 * central(h / 2.0) - central(h)) / 3.0


def cauchy_taylor(f: ArrayFn, r0: float, order: int, radius: float = 0.5) -> TruncatedSeries:
    """Scaled Taylor coefficients of ``f`` about ``r0`` from a contour FFT.

    ``f`` must accept complex arguments and be analytic in the disc
    ``|r - r0| <= radius * r0``.
    """
    npts = max(64, 4 * (order + 1))
    theta = 2.0 * np.pi * np.arange(npts) / npts
    x = radius * np.exp(1j * theta)
    samples = np.asarray(f(r0 * (1.0 + x)), dtype=complex)
    c = np.fft.fft(samples)[: order + 1] / npts
    c = c.real / radius ** np.arange(order + 1)
    return TruncatedSeries(c)


def _as_series(raw, order: int) -> TruncatedSeries:
    s = raw if isinstance(raw, TruncatedSeries) else TruncatedSeries(raw)
    if s.order < order:
        raise ModelDomainError(f"taylor generator returned order {s.order} < {order}")
    return s.truncate(order)


def binomial_series(p: float, u: float, order: int) -> np.ndarray:
    """Coefficients of ``(1 + u x)^p`` up to ``x^order`` (any real ``p``)."""
    c = np.empty(order + 1)
    c[0] = 1.0
    for i in range(1, order + 1):
        c[i] = c[i - 1] * (p - i + 1) / i * u
    return c


# -- mass profiles ------------------------------------------------------------


class MassModel:
    """Base for position-dependent masses ``m(r) > 0``."""

    kind = "abstract"

    def value(self, r):
        raise NotImplementedError

    def d1(self, r):
        raise NotImplementedError

    def d2(self, r):
        raise NotImplementedError

    def taylor(self, r0: float, order: int) -> TruncatedSeries:
        raise NotImplementedError

    def check_positive(self, r_lo: float, r_hi: float, samples: int = 2001) -> None:
        r = np.geomspace(r_lo, r_hi, samples)
        m = self.value(r)
        if not np.all(np.isfinite(m)) or np.any(m <= 0.0):
            bad = r[~(np.isfinite(m) & (m > 0.0))][0]
            raise ModelDomainError(f"mass is not positive at r={bad:.6g}")


@dataclass(frozen=True)
class PowerLawMass(MassModel):
    """``m(r) = m_c / (1 + a r)^lam``; ``a = 0`` gives a constant mass."""

    m_c: float = 0.5
    a: float = 0.0
    lam: float = 0.0
    kind = "power_law"

    def __post_init__(self):
        if not self.m_c > 0.0:
            raise ModelDomainError("reference mass m_c must be positive")

    def _t(self, r):
        t = 1.0 + self.a * np.asarray(r, dtype=float)
        if np.any(t <= 0.0):
            raise ModelDomainError("1 + a r must stay positive")
        return t

    def value(self, r):
        return self.m_c * self._t(r) ** (-self.lam)

    def d1(self, r):
        t = self._t(r)
        return -self.lam * self.a * self.m_c * t ** (-self.lam - 1.0)

    def d2(self, r):
        t = self._t(r)
        return self.lam * (self.lam + 1.0) * self.a**2 * self.m_c * t ** (-self.lam - 2.0)

    def taylor(self, r0: float, order: int) -> TruncatedSeries:
        # m = m_c t0^-lam (1 + u x)^-lam with u = a r0 / t0
        t0 = float(self._t(r0))
        u = self.a * r0 / t0
        return TruncatedSeries(self.m_c * t0 ** (-self.lam) * binomial_series(-self.lam, u, order))


@dataclass(frozen=True)
class CustomMass(MassModel):
    """User-supplied mass profile.

    Missing derivatives fall back to Richardson-extrapolated central
    differences; a missing Taylor generator falls back to
    :func:`cauchy_taylor`, which needs ``func`` to accept complex input.
    """

    func: ArrayFn
    deriv1: Optional[ArrayFn] = None
    deriv2: Optional[ArrayFn] = None
    taylor_fn: Optional[TaylorFn] = None
    name: str = "custom"
    kind = "custom"

    def value(self, r):
        return np.real(self.func(np.asarray(r, dtype=float)))

    def d1(self, r):
        if self.deriv1 is not None:
            return self.deriv1(np.asarray(r, dtype=float))
        return richardson_derivative(self.value, r, 1)

    def d2(self, r):
        if self.deriv2 is not None:
            return self.deriv2(np.asarray(r, dtype=float))
        return richardson_derivative(self.value, r, 2)

    def taylor(self, r0: float, order: int) -> TruncatedSeries:
        if self.taylor_fn is not None:
            return _as_series(self.taylor_fn(r0, order), order)
        return cauchy_taylor(self.func, r0, order)


# -- potentials ---------------------------------------------------------------


class PotentialModel:
    kind = "abstract"

    def value(self, r):
        raise NotImplementedError

    def d1(self, r):
        raise NotImplementedError

    def taylor(self, r0: float, order: int) -> TruncatedSeries:
        raise NotImplementedError


@dataclass(frozen=True)
class Coulomb(PotentialModel):
    """Attractive ``V(r) = -q/r`` with ``q > 0``."""

    q: float = 10.0
    kind = "coulomb"

    def __post_init__(self):
        if not self.q > 0.0:
            raise ModelDomainError("Coulomb coupling q must be positive")

    def value(self, r):
        return -self.q / np.asarray(r, dtype=float)

    def d1(self, r):
        return self.q / np.asarray(r, dtype=float) ** 2

    def taylor(self, r0: float, order: int) -> TruncatedSeries:
        if r0 <= 0.0:
            raise ModelDomainError("Coulomb expansion point must be positive")
        return TruncatedSeries.geometric(-1.0, order, scale=-self.q / r0)


@dataclass(frozen=True)
class CustomPotential(PotentialModel):
    func: ArrayFn
    deriv1: Optional[ArrayFn] = None
    taylor_fn: Optional[TaylorFn] = None
    name: str = "custom"
    kind = "custom"

    def value(self, r):
        return np.real(self.func(np.asarray(r, dtype=float)))

    def d1(self, r):
        if self.deriv1 is not None:
            return self.deriv1(np.asarray(r, dtype=float))
        return richardson_derivative(self.value, r, 1)

    def taylor(self, r0: float, order: int) -> TruncatedSeries:
        if self.taylor_fn is not None:
            return _as_series(self.taylor_fn(r0, order), order)
        return cauchy_taylor(self.func, r0, order)


# -- kinetic ordering ---------------------------------------------------------


@dataclass(frozen=True)
class AmbiguitySet:
    """Ordering exponents of the kinetic operator, ``alpha + beta + gamma = -1``.

    Only ``alpha`` and ``gamma`` are stored; ``beta`` follows from the
    constraint. The default is the BenDaniel-Duke ordering.
    """

    alpha: float = 0.0
    gamma: float = 0.0

    @classmethod
    def from_abg(cls, alpha: float, beta: float, gamma: float, tol: float = 1e-12) -> "AmbiguitySet":
        if abs(alpha + beta + gamma + 1.0) > tol:
            raise ValueError(f"alpha + beta + gamma must equal -1, got {alpha + beta + gamma}")
        return cls(alpha, gamma)

    @property
    def beta(self) -> float:
        return -1.0 - self.alpha - self.gamma

    @property
    def q2_weight(self) -> float:
        """Coefficient of ``Q^2`` in the effective correction ``F``."""
        a, g = self.alpha, self.gamma
        return 0.75 + a * g + a + g

    @property
    def p_weight(self) -> float:
        """Coefficient of ``P`` (with a minus sign) in ``F``."""
        return 0.5 * (1.0 + self.alpha + self.gamma)


def taylor_coeffs(model: MassModel | PotentialModel, r0: float, order: int) -> TruncatedSeries:
    """Scaled Taylor coefficients ``r0^i f^(i)(r0)/i!`` for ``i = 0..order``."""
    if not r0 > 0.0:
        raise ModelDomainError(f"expansion point must be positive, got {r0}")
    try:
        s = model.taylor(r0, order)
    except (ZeroDivisionError, FloatingPointError) as exc:
        raise ModelDomainError(f"cannot expand model at r0={r0}") from exc
    if not np.all(np.isfinite(s.coeffs)):
        raise ModelDomainError(f"non-finite Taylor data at r0={r0}")
    return s


@dataclass(frozen=True)
class QPF:
    Q: TruncatedSeries
    P: TruncatedSeries
    F: TruncatedSeries

    def __iter__(self):
        return iter((self.Q, self.P, self.F))


def qpf_series(m: TruncatedSeries, amb: AmbiguitySet, r0: float, order: int) -> QPF:
    """Expansions of ``Q = m'/m``, ``P = (m'' + 2m'/r)/m`` and the correction ``F``.

    ``F = (3/4 + alpha gamma + alpha + gamma) Q^2 - ((1 + alpha + gamma)/2) P``
    is the extra term that appears in the equation for ``chi = psi/sqrt(m)``.
    ``m`` must be given to at least ``order + 2`` since ``m''`` is needed.
    """
    if m.order < order + 2:
        raise ValueError(f"mass series of order {m.order} too short for order {order}")
    if not m[0] > 0.0:
        raise ModelDomainError("mass must be positive at the expansion point")
    m_n = m.truncate(order + 2)
    dm = m_n.derivative().truncate(order) / r0
    d2m = m_n.derivative().derivative() / r0**2
    inv_m = series_recip(m_n.truncate(order))
    inv_r = TruncatedSeries.geometric(-1.0, order, scale=1.0 / r0)
    Q = series_mul(dm, inv_m)
    P = series_mul(d2m + 2.0 * series_mul(dm, inv_r), inv_m)
    F = amb.q2_weight * series_mul(Q, Q) - amb.p_weight * P
    return QPF(Q, P, F)


def centrifugal_series(order: int) -> TruncatedSeries:
    """``(r0/r)^2`` in powers of ``x``."""
    return inverse_square_one_plus_x(order)
