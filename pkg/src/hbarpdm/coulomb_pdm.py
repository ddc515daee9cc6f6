"""Coulomb potential with the power-law mass ``m_c / (1 + a r)^lam``.

Closed forms for the orbit, the first two energy corrections and the
level-ordering analysis of same-``n`` multiplets. In this family the orbit
radius, frequency and zeroth energy depend on ``n = n_r + l + 1`` only; the
splitting of a multiplet enters through ``(2 n_r + 1)`` in ``E_1`` and
``(n_r^2 + n_r)`` in ``E_2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .classical import find_orbit_radius, leading_frequency
from .errors import DegenerateDenominatorError, NoStableOrbitError, StateNotFoundError
from .models import Coulomb, PowerLawMass, taylor_coeffs
from .recursion import QuantumNumbers, expand_energy

NORMAL = "normal"
INVERTED = "inverted"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class CoulombPDM:
    """Parameters of the family; defaults are the ``hbar = 2 m_c = 1`` units."""

    m_c: float = 0.5
    a: float = 0.1
    lam: float = 0.0
    q: float = 10.0
    hbar: float = 1.0

    @property
    def mass(self) -> PowerLawMass:
        return PowerLawMass(self.m_c, self.a, self.lam)

    @property
    def potential(self) -> Coulomb:
        return Coulomb(self.q)

    @property
    def is_constant_mass(self) -> bool:
        return self.a == 0.0 or self.lam == 0.0

    def qn(self, n_r: int, l: int) -> QuantumNumbers:
        return QuantumNumbers(n_r, l, self.hbar)


@dataclass(frozen=True)
class OrbitGeometry:
    n: int
    lam_action: float
    r0: float
    t: float
    s: float
    E_B: float


def s_factor(t: float, lam: float) -> float:
    """``t^lam - (lam/2)(t^lam - t^(lam-1))``; the orbit needs ``s > 0``."""
    return t**lam - 0.5 * lam * (t**lam - t ** (lam - 1.0))


def balmer_energy(p: CoulombPDM, n: int) -> float:
    """Constant-mass level ``-m_c q^2 / (2 hbar^2 n^2)``."""
    return -p.m_c * p.q**2 / (2.0 * p.hbar**2 * n**2)


def orbit_geometry(p: CoulombPDM, n: int) -> OrbitGeometry:
    """Orbit of the ``n`` multiplet, rejecting parameters with ``s <= 0``."""
    if n < 1:
        raise ValueError("principal number n must be >= 1")
    lam_action = p.hbar * n
    r0 = find_orbit_radius(p.mass, p.potential, lam_action)
    t = 1.0 + p.a * r0
    s = s_factor(t, p.lam)
    if not s > 0.0:
        raise NoStableOrbitError(f"no bound orbit: s = {s:.6g} <= 0 at a r0 = {p.a * r0:.6g}")
    return OrbitGeometry(n, lam_action, r0, t, s, balmer_energy(p, n))


def orbit_identity_residual(p: CoulombPDM, geo: OrbitGeometry) -> float:
    """Relative residual of ``r0 m_c q = Lambda^2 s``."""
    lhs = geo.r0 * p.m_c * p.q
    rhs = geo.lam_action**2 * geo.s
    return abs(lhs - rhs) / abs(rhs)


def closed_omega(p: CoulombPDM, r0: float) -> float:
    """Frequency of the orbit at ``r0`` in closed form."""
    ar = p.a * r0
    t = 1.0 + ar
    lam = p.lam
    num = p.m_c * p.q * t ** (-lam - 1.0) * (ar**2 * (2.0 - lam) * (1.0 - lam) + 2.0 * ar * (2.0 - lam) + 2.0)
    den = r0 * (2.0 + (2.0 - lam) * ar)
    if den == 0.0:
        raise DegenerateDenominatorError("2 + (2 - lam) a r0 = 0")
    w2 = num / den
    if not w2 > 0.0:
        raise NoStableOrbitError(f"omega^2 = {w2:.6g} is not positive")
    return math.sqrt(w2)


def closed_e0_e1(p: CoulombPDM, qn: QuantumNumbers) -> tuple[float, float]:
    """``E_0`` and the hbar-stripped ``E_1`` from the orbit data."""
    geo = orbit_geometry(p, qn.n)
    r0, t, lam_action = geo.r0, geo.t, geo.lam_action
    w = closed_omega(p, r0)
    e0 = -p.q / r0 + lam_action**2 / (2.0 * p.m_c * r0**2) * t**p.lam
    e1 = (2 * qn.n_r + 1) * t**p.lam * (w * r0 - lam_action) / (2.0 * p.m_c * r0**2)
    return e0, e1


def e0_e1_balmer_form(p: CoulombPDM, qn: QuantumNumbers) -> float:
    """``E_0 + hbar E_1`` written around the Balmer level."""
    geo = orbit_geometry(p, qn.n)
    w = closed_omega(p, geo.r0)
    L = geo.lam_action
    shift = geo.t**p.lam - 1.0 + (geo.s - 1.0) ** 2
    shift += p.hbar * (2 * qn.n_r + 1) * (w * geo.r0 / L - 1.0) / L * geo.t**p.lam
    return geo.E_B + p.m_c * p.q**2 / (2.0 * geo.s**2 * L**2) * shift


def frequency_shift(p: CoulombPDM, geo: OrbitGeometry) -> tuple[float, float]:
    """``omega r0 / Lambda - 1`` directly and from its factored form.

    The factored form makes the sign evident: it is opposite to that of
    ``lam`` as long as ``2 + (3 - lam) a r0 > 0``.
    """
    ar = p.a * geo.r0
    u = closed_omega(p, geo.r0) * geo.r0 / geo.lam_action
    factored = -p.lam * ar * (2.0 + (3.0 - p.lam) * ar) / (2.0 * (u + 1.0) * geo.t**2)
    return u - 1.0, factored


def shape_a12(p: CoulombPDM, r0: float) -> tuple[float, float]:
    m = taylor_coeffs(p.mass, r0, 4)
    v = taylor_coeffs(p.potential, r0, 4)
    _, a = leading_frequency(m, v, r0, 2)
    return float(a[1]), float(a[2])


def g_factor(p: CoulombPDM, geo: OrbitGeometry) -> float:
    """Bracket multiplying ``n_r^2 + n_r`` in ``E_2``."""
    L, r0, lam = geo.lam_action, geo.r0, p.lam
    w = closed_omega(p, r0)
    a1, a2 = shape_a12(p, r0)
    ar = p.a * r0
    term_l = -8.0 * L**2 * (ar * (lam - 2.0) - 2.0) ** 2
    term_lw = -8.0 * L * w * r0 * (
        6.0 * (1.0 + a1)
        - 3.0 * ar**2 * (lam - 2.0) * (1.0 + lam + a1)
        + ar * (12.0 * (1.0 + a1) - lam * (3.0 * a1 - 4.0))
    )
    term_w = -(w * r0) ** 2 * (
        ar**2 * (16.0 * lam**2 + 15.0 * a1**2 + 8.0 * lam * (3.0 * a1 + 1.0) - 12.0 * a2 - 8.0)
        + 2.0 * ar * (15.0 * a1**2 + 12.0 * lam * a1 - 12.0 * a2 - 8.0)
        + 15.0 * a1**2
        - 12.0 * a2
        - 8.0
    )
    return term_l + term_lw + term_w


def _e2_prefactor(p: CoulombPDM, geo: OrbitGeometry) -> float:
    w = closed_omega(p, geo.r0)
    return geo.t ** (p.lam - 2.0) / (16.0 * p.m_c * w**2 * geo.r0**4)


def e2_nr_part(p: CoulombPDM, qn: QuantumNumbers) -> float:
    """The ``n_r``-dependent part of ``E_2``.

    The remainder of ``E_2`` depends on ``n`` alone, so only differences
    within a multiplet are meaningful.
    """
    geo = orbit_geometry(p, qn.n)
    return _e2_prefactor(p, geo) * (qn.n_r**2 + qn.n_r) * g_factor(p, geo)


def b_coefficients(p: CoulombPDM, n: int) -> tuple[float, float]:
    """``(b1, b2)`` of the spacing ratio for the ``n`` multiplet."""
    geo = orbit_geometry(p, n)
    L = geo.lam_action
    b1 = p.hbar**2 * g_factor(p, geo) * _e2_prefactor(p, geo)
    du, _ = frequency_shift(p, geo)
    b2 = p.m_c * p.q**2 * geo.t**p.lam * p.hbar / (L**3 * geo.s**2) * du + b1
    return b1, b2


def small_a_ratio(p: CoulombPDM, n: int) -> float:
    """Limit of ``b1/b2`` as ``a -> 0``: ``hbar / (hbar - 2 Lambda)``."""
    return p.hbar / (p.hbar - 2.0 * p.hbar * n)


def level_order(p: CoulombPDM, qn: QuantumNumbers) -> str:
    """Order of ``(n_r, l)`` against ``(n_r - 1, l + 1)``.

    ``normal``: ``E(n_r, l) < E(n_r - 1, l + 1)`` (energy grows with ``l``,
    ``lam > 0``); ``inverted``: the reverse (``lam < 0``); ``degenerate`` for
    a constant mass. The prediction from the sign of ``lam`` is checked
    against the sign of ``omega r0 / Lambda - 1``.
    """
    if qn.n_r < 1:
        raise ValueError("level_order needs n_r >= 1 so that (n_r - 1, l + 1) exists")
    if p.is_constant_mass:
        return DEGENERATE
    predicted = NORMAL if p.lam > 0.0 else INVERTED
    geo = orbit_geometry(p, qn.n)
    shift, factored = frequency_shift(p, geo)
    from_shift = NORMAL if factored < 0.0 else INVERTED
    if from_shift != predicted:
        raise AssertionError(
            f"sign of omega r0/Lambda - 1 ({shift:.3g}) contradicts lam = {p.lam} "
            f"(2 + (3 - lam) a r0 = {2.0 + (3.0 - p.lam) * p.a * geo.r0:.3g})"
        )
    return predicted


def ratio_from_energies(e_up: float, e_mid: float, e_down: float, rel_tol: float = 1e-9):
    """``(E(n_r-1,l+1) - E(n_r,l)) / (E(n_r,l) - E(n_r+1,l-1))`` or None if degenerate."""
    den = e_mid - e_down
    if abs(den) <= rel_tol * max(abs(e_mid), 1.0):
        return None
    return (e_up - e_mid) / den


@dataclass
class SpacingReport:
    n: int
    n_r: int
    energies: dict
    R: Optional[float]
    R_series: Optional[float]
    b1: float
    b2: float
    ordering_sign: str
    R_numerov: Optional[float] = None
    numerov_energies: dict = field(default_factory=dict)

    @property
    def degenerate(self) -> bool:
        return self.R is None


def spacing_ratio(
    p: CoulombPDM,
    n: int,
    n_r: int,
    numerov: Optional[Callable[[CoulombPDM, QuantumNumbers], float]] = None,
) -> SpacingReport:
    """Spacing ratio of three neighbouring levels of the ``n`` multiplet.

    ``R`` comes from the closed ``b1/b2`` form, ``R_series`` from the
    second-order partial sums of the recursion and, when an eigensolver
    is passed, ``R_numerov`` from its energies.
    """
    if n < 3 or not 1 <= n_r <= n - 2:
        raise ValueError(f"three levels need n >= 3 and 1 <= n_r <= n - 2 (n={n}, n_r={n_r})")
    states = [(n_r - 1, n - n_r), (n_r, n - n_r - 1), (n_r + 1, n - n_r - 2)]
    energies = {}
    for nr, l in states:
        res = expand_energy(p.mass, p.potential, p.qn(nr, l), K=2)
        energies[(nr, l)] = float(res.partials[2])
    R_series = ratio_from_energies(*(energies[s] for s in states))

    if p.is_constant_mass:
        b1 = b2 = 0.0
        R = None
    else:
        b1, b2 = b_coefficients(p, n)
        ratio = b1 / b2
        den = 1.0 + (2 * n_r + 1) * ratio
        R = None if den == 0.0 else (1.0 + (2 * n_r - 1) * ratio) / den

    report = SpacingReport(
        n=n,
        n_r=n_r,
        energies=energies,
        R=R,
        R_series=R_series,
        b1=b1,
        b2=b2,
        ordering_sign=level_order(p, p.qn(n_r, n - n_r - 1)),
    )
    if numerov is not None:
        en = {s: numerov(p, p.qn(*s)) for s in states}
        report.numerov_energies = en
        report.R_numerov = ratio_from_energies(*(en[s] for s in states))
    return report


def mass_bound_sign(p: CoulombPDM) -> int:
    """``+1`` if ``m <= m_c`` everywhere (levels rise), ``-1`` if ``m >= m_c``, else 0."""
    if p.is_constant_mass or p.a < 0.0:
        return 0
    return 1 if p.lam > 0.0 else -1


@dataclass
class OrderingCheck:
    """Ordering tests for one multiplet against supplied exact energies."""

    params: CoulombPDM
    n: int
    energies: dict
    E_B: float
    ordering: str
    ratios: dict
    violations: list = field(default_factory=list)
    skipped: Optional[str] = None

    @property
    def ok(self) -> bool:
        return not self.violations


def check_ordering(
    p: CoulombPDM,
    n: int,
    solve: Callable[[CoulombPDM, QuantumNumbers], float],
    rel_tol: float = 1e-9,
) -> OrderingCheck:
    """Check level order, ``R > 1`` and the mass-comparison bound for ``n``.

    ``solve(p, qn)`` must return the exact (numerical) energy. A multiplet
    with a missing state is reported as skipped, not as a violation.
    """
    E_B = balmer_energy(p, n)
    ordering = DEGENERATE if p.is_constant_mass else (NORMAL if p.lam > 0.0 else INVERTED)
    out = OrderingCheck(p, n, {}, E_B, ordering, {})
    try:
        for n_r in range(n):
            out.energies[(n_r, n - 1 - n_r)] = float(solve(p, p.qn(n_r, n - 1 - n_r)))
    except (NoStableOrbitError, StateNotFoundError) as exc:
        out.skipped = f"{type(exc).__name__}: {exc}"
        return out

    E = out.energies
    tol = rel_tol * abs(E_B)
    for n_r in range(1, n):
        diff = E[(n_r, n - 1 - n_r)] - E[(n_r - 1, n - n_r)]
        if ordering == NORMAL and not diff < 0.0:
            out.violations.append(f"order: E({n_r},{n - 1 - n_r}) - E({n_r - 1},{n - n_r}) = {diff:.3g} >= 0")
        elif ordering == INVERTED and not diff > 0.0:
            out.violations.append(f"order: E({n_r},{n - 1 - n_r}) - E({n_r - 1},{n - n_r}) = {diff:.3g} <= 0")
        elif ordering == DEGENERATE and abs(diff) > tol:
            out.violations.append(f"order: constant-mass levels split by {diff:.3g}")

    if ordering != DEGENERATE:
        for n_r in range(1, n - 1):
            l = n - 1 - n_r
            R = ratio_from_energies(E[(n_r - 1, l + 1)], E[(n_r, l)], E[(n_r + 1, l - 1)], rel_tol)
            out.ratios[n_r] = R
            if R is None or not R > 1.0:
                out.violations.append(f"spacing: R(n_r={n_r}) = {R}")

    sign = mass_bound_sign(p)
    for (n_r, l), e in E.items():
        if sign > 0 and e < E_B - tol:
            out.violations.append(f"mass bound: E({n_r},{l}) = {e:.10g} < E_c = {E_B:.10g}")
        elif sign < 0 and e > E_B + tol:
            out.violations.append(f"mass bound: E({n_r},{l}) = {e:.10g} > E_c = {E_B:.10g}")
        elif sign == 0 and p.is_constant_mass and abs(e - E_B) > tol:
            out.violations.append(f"mass bound: constant-mass E({n_r},{l}) = {e:.10g} != {E_B:.10g}")
    return out


def numerov_energy(p: CoulombPDM, qn: QuantumNumbers) -> float:
    """Default exact solver for :func:`check_ordering` and :func:`spacing_ratio`."""
    from .oracle.numerov import solve_state

    return solve_state(p.mass, p.potential, qn, with_wave=False).energy


def grid_parameters(lams, avals, m_c=0.5, q=10.0, hbar=1.0):
    """Cartesian grid of parameter sets, ``lam`` outer."""
    return [CoulombPDM(m_c=m_c, a=float(a), lam=float(lam), q=q, hbar=hbar) for lam in lams for a in avals]


def criterion_lambda_grid():
    return np.round(np.arange(-4.0, 4.0 + 1e-9, 0.5), 10)
