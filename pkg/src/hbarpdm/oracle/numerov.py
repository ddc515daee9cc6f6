"""Shooting eigensolver for the reduced radial equation ``chi'' = W(r; E) chi``.

The equation is integrated on a grid uniform in ``x = ln r``. With
``chi = e^{x/2} phi`` it becomes ``phi'' = (r^2 W + 1/4) phi``, which suits
Numerov's three-point scheme: the ``r^{l+1}`` behaviour at the origin turns
into a plain exponential and long Coulomb or power-law tails cost only a
logarithmic number of points.

Eigenvalues are bracketed by counting nodes of the outward solution, then
refined by matching outward and inward solutions at the orbit radius.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .. import _kernels
from ..errors import NoStableOrbitError, OracleConvergenceError, StateNotFoundError
from ..models import AmbiguitySet, MassModel, PotentialModel
from ..recursion import QuantumNumbers, expand_energy

log = logging.getLogger(__name__)

DEFAULT_STEP = 1e-3
R_MIN_FACTOR = 1e-6
R_MAX_CAP = 1e9
TAIL_DECAY = 45.0
MIN_OUTER = 20.0
BRACKET_WIDTH = 0.3
BRACKET_REL = 1e-4


@dataclass(frozen=True)
class RadialGrid:
    """Grid ``r_i = r_min e^{i h}``, ``i = 0..points-1`` (uniform in ``ln r``)."""

    r_min: float
    h: float
    points: int

    @property
    def x(self) -> np.ndarray:
        return np.log(self.r_min) + self.h * np.arange(self.points)

    @property
    def r(self) -> np.ndarray:
        return np.exp(self.x)

    @property
    def r_max(self) -> float:
        return float(self.r_min * np.exp(self.h * (self.points - 1)))

    @classmethod
    def between(cls, r_min: float, r_max: float, h: float = DEFAULT_STEP) -> "RadialGrid":
        points = int(np.ceil(np.log(r_max / r_min) / h)) + 1
        return cls(r_min=r_min, h=h, points=points)

    def refined(self) -> "RadialGrid":
        """Same span with half the step."""
        return RadialGrid(self.r_min, self.h / 2.0, 2 * self.points - 1)


@dataclass(frozen=True)
class ReducedWave:
    r: np.ndarray
    chi: np.ndarray
    node_count: int


@dataclass(frozen=True)
class NumerovState:
    energy: float
    qn: QuantumNumbers
    grid: RadialGrid
    node_count: int
    match_index: int
    evaluations: int
    refined_by_matching: bool
    wave: Optional[ReducedWave] = None


def _mass_terms(mass: MassModel, r):
    m = mass.value(r)
    q = mass.d1(r) / m
    p = (mass.d2(r) + 2.0 * mass.d1(r) / r) / m
    return m, q, p


def effective_w(mass, pot, amb: AmbiguitySet, l: int, E: float, r, hbar: float = 1.0):
    """``chi''/chi`` for the reduced wave function ``chi = psi / sqrt(m)``.

    ``W = l(l+1)/r^2 + (3/4 + ag + a + g) Q^2 - ((1 + a + g)/2) P
    + 2 m (V - E)/hbar^2`` with ``Q = m'/m`` and ``P = (m'' + 2 m'/r)/m``.
    """
    r = np.asarray(r, dtype=float)
    m, q, p = _mass_terms(mass, r)
    return l * (l + 1) / r**2 + amb.q2_weight * q**2 - amb.p_weight * p + 2.0 * m * (pot.value(r) - E) / hbar**2


def log_grid_coefficients(mass, pot, amb, l, r, hbar=1.0):
    """Split ``r^2 W + 1/4 = f0 - E g`` so the energy enters linearly."""
    m, q, p = _mass_terms(mass, r)
    r2 = r * r
    f0 = l * (l + 1) + r2 * (amb.q2_weight * q**2 - amb.p_weight * p) + 2.0 * m * r2 * pot.value(r) / hbar**2 + 0.25
    g = 2.0 * m * r2 / hbar**2
    return np.ascontiguousarray(f0, dtype=float), np.ascontiguousarray(g, dtype=float)


def default_grid(mass, pot, amb, l, energy, r0, h=DEFAULT_STEP, hbar=1.0) -> RadialGrid:
    """Grid from ``1e-6 r0`` out to where the tail has decayed by ``e^-45``.

    The outer edge is at least ``max(3 r_turn, 20 r0)`` and never beyond
    ``1e9 r0`` or the point where the Numerov weight ``1 - h^2 f/12``
    would approach zero.
    """
    xs = np.arange(np.log(r0), np.log(r0 * R_MAX_CAP), 0.01)
    rs = np.exp(xs)
    with np.errstate(all="ignore"):
        f0, g = log_grid_coefficients(mass, pot, amb, l, rs, hbar)
    f = f0 - energy * g
    f[~np.isfinite(f)] = np.inf
    allowed = np.nonzero(f <= 0.0)[0]
    i_turn = allowed[-1] + 1 if allowed.size else 0
    i_turn = min(i_turn, rs.size - 1)
    r_turn = rs[i_turn]
    decay = np.cumsum(np.sqrt(np.clip(f[i_turn:], 0.0, None)) * 0.01)
    hit = np.nonzero(decay >= TAIL_DECAY)[0]
    r_tail = rs[i_turn + hit[0]] if hit.size else rs[-1]
    unstable = np.nonzero(h * h * f[i_turn:] / 12.0 > 0.5)[0]
    r_stab = rs[i_turn + unstable[0] - 1] if unstable.size else np.inf
    r_max = min(max(r_tail, 3.0 * r_turn, MIN_OUTER * r0), r_stab, r0 * R_MAX_CAP)
    return RadialGrid.between(R_MIN_FACTOR * r0, r_max, h)


class _Problem:
    """Grid coefficients plus counters for one (model, l) pair."""

    def __init__(self, mass, pot, amb, l, grid: RadialGrid, r_match: float, hbar: float, kernels):
        self.grid = grid
        r = grid.r
        mass.check_positive(grid.r_min, grid.r_max)
        self.f0, self.g = log_grid_coefficients(mass, pot, amb, l, r, hbar)
        if not (np.all(np.isfinite(self.f0)) and np.all(np.isfinite(self.g))):
            raise OracleConvergenceError("non-finite equation coefficients on the grid")
        self.n = grid.points
        self.h = grid.h
        self.match = int(np.clip(np.searchsorted(r, r_match), 2, self.n - 3))
        self.k = kernels
        self.evaluations = 0

    def nodes(self, energy: float) -> int:
        self.evaluations += 1
        return self.k.shoot(self.f0, self.g, energy, self.h, 0, self.n - 1)[2]

    def mismatch(self, energy: float) -> float:
        """Sine of the angle between outward and inward (y_m, y_m+1) pairs."""
        self.evaluations += 1
        a0, a1, _ = self.k.shoot(self.f0, self.g, energy, self.h, 0, self.match + 1)
        b1, b0, _ = self.k.shoot(self.f0, self.g, energy, self.h, self.n - 1, self.match)
        return (a1 * b0 - a0 * b1) / (np.hypot(a0, a1) * np.hypot(b0, b1))

    def wave(self, energy: float) -> ReducedWave:
        m = self.match
        out = self.k.profile(self.f0, self.g, energy, self.h, 0, m + 1)
        inn = self.k.profile(self.f0, self.g, energy, self.h, self.n - 1, m)[::-1]
        j = m if abs(out[m]) >= abs(out[m + 1]) else m + 1
        scale = out[j] / inn[j - m]
        phi = np.concatenate([out[: m + 1], scale * inn[1:]])
        peak = np.max(np.abs(phi))
        phi = phi / peak
        x = self.grid.x
        chi = np.exp(0.5 * (x - x[m])) * phi
        return ReducedWave(r=self.grid.r, chi=chi, node_count=count_nodes(phi))


def count_nodes(values: np.ndarray) -> int:
    """Sign changes, an exact zero between opposite signs counting once."""
    s = np.sign(values)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def _initial_guess(mass, pot, amb, qn):
    try:
        res = expand_energy(mass, pot, qn, K=5, amb=amb)
    except (NoStableOrbitError, ArithmeticError, ValueError) as exc:
        raise StateNotFoundError(f"no starting estimate for {qn}: {exc}") from exc
    energy = res.energy if np.isfinite(res.energy) else res.partials[0]
    return float(energy), float(res.r0)


def solve_state(
    mass: MassModel,
    pot: PotentialModel,
    qn: QuantumNumbers,
    amb: AmbiguitySet = AmbiguitySet(),
    grid: Optional[RadialGrid] = None,
    energy_guess: Optional[float] = None,
    r_match: Optional[float] = None,
    h: float = DEFAULT_STEP,
    with_wave: bool = True,
    backend: Optional[str] = None,
    max_widen: int = 40,
) -> NumerovState:
    """Eigenvalue and reduced wave function of the state with ``n_r`` nodes."""
    kernels = _kernels.get_backend(backend)
    if energy_guess is None or r_match is None:
        e_est, r_est = _initial_guess(mass, pot, amb, qn)
        energy_guess = e_est if energy_guess is None else energy_guess
        r_match = r_est if r_match is None else r_match
    if grid is None:
        grid = default_grid(mass, pot, amb, qn.l, energy_guess, r_match, h, qn.hbar)
    prob = _Problem(mass, pot, amb, qn.l, grid, r_match, qn.hbar, kernels)
    nr = qn.n_r

    width = BRACKET_WIDTH * abs(energy_guess) if energy_guess != 0.0 else 1.0
    lo, hi = energy_guess - width, energy_guess + width
    step = width
    for _ in range(max_widen):
        if prob.nodes(lo) <= nr:
            break
        hi = min(hi, lo)
        lo -= step
        step *= 1.6
    else:
        raise StateNotFoundError(f"no energy with at most {nr} nodes below {lo:.6g}")
    step = width
    for _ in range(max_widen):
        if prob.nodes(hi) > nr:
            break
        lo = max(lo, hi)
        hi += step
        step *= 1.6
    else:
        raise StateNotFoundError(f"no energy with more than {nr} nodes up to {hi:.6g}")

    while hi - lo > BRACKET_REL * max(abs(lo), abs(hi), 1e-300):
        mid = 0.5 * (lo + hi)
        if prob.nodes(mid) > nr:
            hi = mid
        else:
            lo = mid

    refined = True
    d_lo, d_hi = prob.mismatch(lo), prob.mismatch(hi)
    pad = hi - lo
    for _ in range(6):
        if d_lo * d_hi <= 0.0:
            break
        lo, hi = lo - pad, hi + pad
        pad *= 2.0
        d_lo, d_hi = prob.mismatch(lo), prob.mismatch(hi)
    if d_lo * d_hi <= 0.0:
        energy = brentq(prob.mismatch, lo, hi, xtol=1e-15 * max(abs(lo), 1.0), rtol=1e-15, maxiter=200)
    else:
        # matching never changed sign; fall back to the node-count transition
        refined = False
        lo, hi = lo + pad / 2.0 ** 6, hi - pad / 2.0**6
        while hi - lo > 4e-16 * max(abs(lo), abs(hi)):
            mid = 0.5 * (lo + hi)
            if mid in (lo, hi):
                break
            if prob.nodes(mid) > nr:
                hi = mid
            else:
                lo = mid
        energy = 0.5 * (lo + hi)
        log.warning("matching refinement failed for %s; using node-count bisection", qn)

    wave = prob.wave(energy)
    node_count = wave.node_count
    if node_count != nr:
        raise OracleConvergenceError(f"state at E={energy:.10g} has {node_count} nodes, expected {nr}")
    return NumerovState(
        energy=float(energy),
        qn=qn,
        grid=grid,
        node_count=node_count,
        match_index=prob.match,
        evaluations=prob.evaluations,
        refined_by_matching=refined,
        wave=wave if with_wave else None,
    )


def numerov_eigenvalue(
    mass: MassModel,
    pot: PotentialModel,
    amb: AmbiguitySet,
    qn: QuantumNumbers,
    grid: Optional[RadialGrid] = None,
    **kwargs,
) -> float:
    """Energy of the bound state with ``qn.n_r`` nodes and angular momentum ``qn.l``."""
    return solve_state(mass, pot, qn, amb, grid=grid, with_wave=False, **kwargs).energy
