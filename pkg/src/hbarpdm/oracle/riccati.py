"""Order-by-order Riccati solver on Laurent series.

This is a deliberately generic second route to the energy corrections. It
never uses the collected index recursion of :mod:`hbarpdm.recursion`, nor the
closed form for the classical shape coefficients. At each order ``k`` it
solves

    2 C_0 C_k = R_k(x) - 2 m(x) E_k

by Laurent-series division, with ``R_k`` assembled from lower orders, and
fixes ``E_k`` by requiring the residue of ``C_k`` to equal the node-count
target. ``C_0`` itself is recomputed as ``-sqrt`` of
``2 m (V - E_0) + Lambda^2/r^2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..classical import ClassicalPoint
from ..recursion import CentrifugalSplit, QuantumNumbers
from ..series import TruncatedSeries


@dataclass(frozen=True)
class Laurent:
    """``x^offset * sum_i coeffs[i] x^i``, valid up to power ``offset + len - 1``."""

    offset: int
    coeffs: np.ndarray

    @property
    def top(self) -> int:
        return self.offset + self.coeffs.size - 1

    def coeff(self, power: int) -> float:
        i = power - self.offset
        if power > self.top:
            raise IndexError(f"power {power} beyond truncation {self.top}")
        return float(self.coeffs[i]) if i >= 0 else 0.0

    def residue(self):
        i = -1 - self.offset
        if -1 > self.top:
            raise IndexError(f"residue beyond truncation {self.top}")
        return self.coeffs[i] if i >= 0 else 0

    def __add__(self, other: "Laurent") -> "Laurent":
        lo = min(self.offset, other.offset)
        hi = min(self.top, other.top)
        out = np.zeros(hi - lo + 1, dtype=self.coeffs.dtype)
        if out.dtype == object:
            out[:] = 0
        for s in (self, other):
            n = hi - s.offset + 1
            if n <= 0:
                continue
            out[s.offset - lo : s.offset - lo + n] += s.coeffs[:n]
        return Laurent(lo, out)

    def __neg__(self) -> "Laurent":
        return Laurent(self.offset, -self.coeffs)

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def scale(self, c: float) -> "Laurent":
        return Laurent(self.offset, c * self.coeffs)

    def __mul__(self, other: "Laurent") -> "Laurent":
        off = self.offset + other.offset
        top = min(self.top + other.offset, other.top + self.offset)
        full = np.convolve(self.coeffs, other.coeffs)
        return Laurent(off, full[: top - off + 1])

    def d_dx(self) -> "Laurent":
        powers = self.offset + np.arange(self.coeffs.size)
        out = powers * self.coeffs
        if self.offset == 0:
            return Laurent(0, out[1:])
        return Laurent(self.offset - 1, out)

    @classmethod
    def regular(cls, s: TruncatedSeries) -> "Laurent":
        return cls(0, np.array(s.coeffs))


def _recip(c: np.ndarray) -> np.ndarray:
    r = np.empty_like(c)
    r[0] = 1 / c[0]
    for n in range(1, c.size):
        r[n] = -np.dot(c[1 : n + 1], r[n - 1 :: -1]) / c[0]
    return r


def _sqrt(c: np.ndarray, sqrt) -> np.ndarray:
    s = np.empty_like(c)
    s[0] = sqrt(c[0])
    for n in range(1, c.size):
        cross = np.dot(s[1:n], s[n - 1 : 0 : -1]) if n > 1 else 0
        s[n] = (c[n] - cross) / (2 * s[0])
    return s


class _Arith:
    """Scalar field for the solver: doubles, or mpmath at ``dps`` digits."""

    def __init__(self, dps: int | None):
        self.dps = dps
        if dps is None:
            self.lift = float
            self.sqrt = np.sqrt
            self.dtype = float
        else:
            import mpmath

            self.ctx = mpmath.mp.clone()
            self.ctx.dps = dps
            self.lift = self.ctx.mpf
            self.sqrt = self.ctx.sqrt
            self.dtype = object

    def array(self, values) -> np.ndarray:
        return np.array([self.lift(float(v)) for v in values], dtype=self.dtype)


def _coeff_array(series, ar: _Arith) -> np.ndarray:
    raw = series.coeffs if isinstance(series, TruncatedSeries) else series
    if ar.dps is None:
        return np.array([float(v) for v in raw])
    return np.array([v if isinstance(v, ar.ctx.mpf) else ar.ctx.mpf(v) for v in raw], dtype=object)


def mass_correction(m: np.ndarray, amb, r0, order: int) -> np.ndarray:
    """``F = q2 Q^2 - p P`` to ``order`` from mass coefficients ``m`` (length ``order + 3``).

    Built from ``m'/m`` and ``m''/m`` with plain series algebra, separately
    from :func:`hbarpdm.models.qpf_series`.
    """
    n = order + 1
    i = np.arange(m.size)
    d1 = (i * m)[1:] / r0
    d2 = (i * (i - 1) * m)[2:] / (r0 * r0)
    inv_m = _recip(m[:n])
    inv_r = np.array([(-1) ** j for j in range(n)], dtype=m.dtype) / r0
    q = np.convolve(d1[:n], inv_m)[:n]
    p = np.convolve(d2[:n] + 2 * np.convolve(d1[:n], inv_r)[:n], inv_m)[:n]
    return amb.q2_weight * np.convolve(q, q)[:n] - amb.p_weight * p


def classical_logderiv(m, v, r0, E0, lam, arith: _Arith | None = None) -> np.ndarray:
    """``c0`` with ``C_0(x) = x c0(x)``, built from the undivided square.

    The ``x^0`` and ``x^1`` terms of ``2 m (V - E_0) + Lambda^2/r^2``
    vanish at the orbit up to rounding and are dropped.
    """
    ar = arith or _Arith(None)
    m = _coeff_array(m, ar)
    v = _coeff_array(v, ar)
    n = m.size
    i = np.arange(n)
    inv_r2 = ar.array((-1.0) ** i * (i + 1))
    v = v.copy()
    v[0] = v[0] - ar.lift(E0)
    square = 2 * np.convolve(m, v)[:n] + (ar.lift(lam) ** 2 / ar.lift(r0) ** 2) * inv_r2
    scale = abs(float(square[2])) or 1e-300
    lead = max(abs(float(square[0])), abs(float(square[1]))) / scale
    if lead > 1e-8:
        raise ValueError(f"expansion point is not an orbit minimum (residual {lead:.3g})")
    return -_sqrt(square[2:], ar.sqrt)


def riccati_series_solve(
    cp: ClassicalPoint,
    split: CentrifugalSplit,
    m_series,
    F_series,
    qn: QuantumNumbers,
    K: int,
    v_series=None,
    dps: int | None = None,
    amb=None,
) -> np.ndarray:
    """Energy corrections ``E_0..E_K`` from the generic Laurent solver.

    ``m_series`` and ``v_series`` should extend to order ``3K + 6`` or more;
    each order consumes two to three powers of truncation headroom. When
    ``v_series`` is omitted the classical series is taken from ``cp.C0``.
    With ``dps`` set, all arithmetic runs in mpmath at that many digits;
    coefficient inputs may then be mpmath numbers themselves. Passing
    ``F_series=None`` together with ``amb`` builds the mass correction
    from ``m_series`` here (which needs two extra mass coefficients).
    """
    ar = _Arith(dps)
    r0 = ar.lift(cp.r0)
    m_all = _coeff_array(m_series, ar)
    if F_series is None:
        if amb is None:
            raise ValueError("need either F_series or amb")
        F_all = mass_correction(m_all, amb, r0, m_all.size - 3)
    else:
        F_all = _coeff_array(F_series, ar)
    order = min(m_all.size, F_all.size) - 1
    if v_series is not None:
        v_all = _coeff_array(v_series, ar)
        order = min(order, v_all.size - 1)
        c0 = classical_logderiv(m_all[: order + 1], v_all[: order + 1], cp.r0, cp.E0, split.lam, ar)
    else:
        c0 = ar.array(cp.C0.coeffs)
    order = min(order, c0.size - 1)
    c0 = c0[: order + 1]
    m = Laurent(0, m_all[: order + 1])
    F = Laurent(0, F_all[: order + 1])
    i = np.arange(order + 1)
    inv_r2 = Laurent(0, ar.array((-1.0) ** i * (i + 1)))

    # 1/(2 x c0)
    half_inv = Laurent(-1, _recip(c0) / 2)
    C = [Laurent(1, c0)]
    E = [float(cp.E0)]
    for k in range(1, K + 1):
        rhs = inv_r2.scale(ar.lift(split.gamma(k, cp.r0)))
        if k == 2:
            rhs = rhs + F
        rhs = rhs - C[k - 1].d_dx().scale(1 / r0)
        for j in range(1, k):
            rhs = rhs - C[j] * C[k - j]
        a = rhs * half_inv
        b = (m * half_inv).scale(2)
        if a.top < -1:
            raise ValueError(f"series order {order} too short for K={K}")
        target = ar.lift(qn.n_r) / r0 if k == 1 else 0
        ek = (a.residue() - target) / b.residue()
        ck = a - b.scale(ek)
        if ck.offset < 1 - 2 * k:
            # coefficients below the expected pole order must cancel
            lead = np.abs(ck.coeffs[: 1 - 2 * k - ck.offset].astype(float))
            scale = max(float(np.max(np.abs(ck.coeffs.astype(float)))), 1.0)
            if np.max(lead) > 1e-6 * scale:
                raise ArithmeticError(f"pole of C_{k} exceeds order {2 * k - 1}")
            ck = Laurent(1 - 2 * k, ck.coeffs[1 - 2 * k - ck.offset :])
        C.append(ck)
        E.append(float(ek))
    return np.array(E)
