"""hbar-expansion of bound-state energies.

The log-derivative ``C = hbar chi'/chi`` is expanded as ``sum_k C_k hbar^k``
with ``C_k(x) = x^(1-2k) sum_i C_i^k x^i`` about the classical orbit. The
coefficients are filled row by row (``k`` ascending, ``i`` ascending); the
residue entry ``C_{2k-2}^k`` is fixed by the node-count quantization rule
and the same equation then yields the energy correction ``E_k``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .classical import ClassicalPoint, classical_point
from .errors import SingularRecursionError
from .models import AmbiguitySet, MassModel, PotentialModel, qpf_series, taylor_coeffs
from .series import TruncatedSeries

DEFAULT_ORDER = 5
MAX_ORDER = 12


@dataclass(frozen=True)
class QuantumNumbers:
    n_r: int
    l: int
    hbar: float = 1.0

    def __post_init__(self):
        if int(self.n_r) != self.n_r or self.n_r < 0:
            raise ValueError(f"n_r must be a non-negative integer, got {self.n_r}")
        if int(self.l) != self.l or self.l < 0:
            raise ValueError(f"l must be a non-negative integer, got {self.l}")
        if not self.hbar > 0.0:
            raise ValueError("hbar must be positive")

    @property
    def n(self) -> int:
        """Principal quantum number ``n_r + l + 1``."""
        return self.n_r + self.l + 1


@dataclass(frozen=True)
class CentrifugalSplit:
    """``hbar^2 l(l+1) = Lambda^2 + hbar A Lambda + hbar^2 B``."""

    lam: float
    A: float
    B: float
    hbar: float = 1.0

    def gamma(self, k: int, r0: float) -> float:
        if k == 1:
            return self.A * self.lam / r0**2
        if k == 2:
            return self.B / r0**2
        return 0.0

    def centrifugal(self) -> float:
        """Reassembled ``hbar^2 l(l+1)``."""
        return self.lam**2 + self.hbar * self.A * self.lam + self.hbar**2 * self.B


def centrifugal_split(qn: QuantumNumbers) -> CentrifugalSplit:
    """Split that makes the zeroth order reproduce the Balmer levels.

    ``Lambda = hbar (n_r + l + 1)``, ``A = -2 n_r - 1``, ``B = n_r^2 + n_r``.
    """
    return CentrifugalSplit(
        lam=qn.hbar * qn.n,
        A=-2.0 * qn.n_r - 1.0,
        B=float(qn.n_r * qn.n_r + qn.n_r),
        hbar=qn.hbar,
    )


@dataclass(frozen=True)
class CorrectionTable:
    """Laurent coefficients ``C[k, i] = C_i^k`` and energy corrections ``E[k]``."""

    C: np.ndarray
    E: np.ndarray
    r0: float
    omega: float
    n_r: int

    @property
    def order(self) -> int:
        return self.E.size - 1

    def residue(self, k: int) -> float:
        """Coefficient of ``x^-1`` in ``C_k``."""
        return float(self.C[k, 2 * k - 2])


@dataclass
class SpectrumResult:
    qn: QuantumNumbers
    partials: np.ndarray
    corrections: np.ndarray
    r0: float
    omega: float
    converged: bool
    E_oracle: Optional[float] = None
    table: Optional[CorrectionTable] = None
    meta: dict = field(default_factory=dict)

    @property
    def energy(self) -> float:
        """Highest-order partial sum."""
        return float(self.partials[-1])


def required_taylor_order(K: int) -> int:
    """Taylor order of mass/potential data needed for a depth-``K`` table."""
    return 2 * K + 4


def fill_table(C0, m, F, r0, E0, split: CentrifugalSplit, n_r: int, K: int):
    """Raw ``(C, E)`` arrays of the recursion for any scalar type.

    ``C0``, ``m`` and ``F`` are coefficient arrays (floats, or mpmath
    numbers in object arrays). Entries are filled ``k``-major, ``i``
    ascending; ``C[k, 2k-2]`` is set by the quantization rule and the same
    step emits ``E[k]``. The energy bracket
    ``gamma_k + F_0 delta_k2 - C^{k-1}_{2k-2}/r0 - sum`` equals
    ``2 m_0 E_k`` and multiplies ``m_{i+2-2k}/m_0`` in every later entry of
    the row, so ``F_0`` is carried there too.
    """
    imax = 2 * K + 2
    dtype = np.result_type(np.asarray(C0).dtype, np.asarray(m).dtype, np.asarray(F).dtype)
    C = np.zeros((K + 1, imax + 1), dtype=dtype)
    E = np.zeros(K + 1, dtype=dtype)
    if dtype == object:
        C[:] = 0
        E[:] = 0
    C[0] = C0[: imax + 1]
    E[0] = E0
    c00 = C[0, 0]
    if c00 == 0:
        raise SingularRecursionError("C_0^0 vanishes")
    m0 = m[0]

    def full_sum(k: int, i: int):
        # sum_{j=0}^{k} sum_{p=0}^{i} C_p^j C_{i-p}^{k-j}
        return sum(np.dot(C[j, : i + 1], C[k - j, i::-1]) for j in range(k + 1))

    for k in range(1, K + 1):
        gk = split.gamma(k, r0)
        res_i = 2 * k - 2
        bracket = 0
        for i in range(imax + 1):
            if i == res_i:
                C[k, i] = n_r / r0 if k == 1 else 0
                bracket = gk + (F[0] if k == 2 else 0) - C[k - 1, res_i] / r0 - full_sum(k, res_i)
                E[k] = bracket / (2 * m0)
                continue
            rhs = 0
            if i > res_i:
                rhs = gk * (-1) ** i * (3 - 2 * k + i) - m[i + 2 - 2 * k] / m0 * bracket
                if k == 2:
                    rhs += F[i - 2]
            rhs -= (3 - 2 * k + i) / r0 * C[k - 1, i]
            for j in range(1, k):
                rhs -= np.dot(C[j, : i + 1], C[k - j, i::-1])
            if i >= 1:
                rhs -= 2 * np.dot(C[0, 1 : i + 1], C[k, i - 1 :: -1])
            C[k, i] = rhs / (2 * c00)
    return C, E


def correction_table(
    cp: ClassicalPoint,
    split: CentrifugalSplit,
    m_series: TruncatedSeries,
    F_series: TruncatedSeries,
    qn: QuantumNumbers,
    K: int = DEFAULT_ORDER,
) -> CorrectionTable:
    """Fill ``C_i^k`` for ``k = 1..K``, ``i = 0..2K+2`` and emit ``E_1..E_K``."""
    imax = 2 * K + 2
    if cp.C0.order < imax or m_series.order < imax or F_series.order < imax - 2:
        raise ValueError(f"series data too short for order K={K}: need C0, m to {imax}, F to {imax - 2}")
    C, E = fill_table(cp.C0.coeffs, m_series.coeffs, F_series.coeffs, cp.r0, cp.E0, split, qn.n_r, K)
    C = C.astype(float)
    E = E.astype(float)
    for k in range(1, K + 1):
        expect = qn.n_r / cp.r0 if k == 1 else 0.0
        assert C[k, 2 * k - 2] == expect, "quantization entry overwritten"
    if not (np.all(np.isfinite(C)) and np.all(np.isfinite(E))):
        raise FloatingPointError("non-finite entry in correction table")
    C.setflags(write=False)
    E.setflags(write=False)
    return CorrectionTable(C=C, E=E, r0=cp.r0, omega=cp.omega, n_r=qn.n_r)


def partial_sums(table: CorrectionTable, qn: QuantumNumbers, tol: float = 1e-4) -> SpectrumResult:
    """Partial sums ``E^(k) = sum_{j<=k} E_j hbar^j`` with a convergence flag."""
    weights = qn.hbar ** np.arange(table.E.size)
    terms = table.E * weights
    partials = np.cumsum(terms)
    last = abs(terms[-1]) if terms.size > 1 else 0.0
    converged = bool(last < tol * abs(partials[-1]))
    return SpectrumResult(
        qn=qn,
        partials=partials,
        corrections=np.array(table.E),
        r0=table.r0,
        omega=table.omega,
        converged=converged,
        table=table,
    )


def clamp_order(K: int) -> int:
    if K < 0:
        raise ValueError("expansion order must be non-negative")
    if K > MAX_ORDER:
        warnings.warn(
            f"order {K} capped at {MAX_ORDER}: the hbar-series is asymptotic and "
            "high orders eventually diverge",
            RuntimeWarning,
            stacklevel=3,
        )
        return MAX_ORDER
    return K


def expand_energy(
    mass: MassModel,
    pot: PotentialModel,
    qn: QuantumNumbers,
    K: int = DEFAULT_ORDER,
    amb: AmbiguitySet = AmbiguitySet(),
    tol: float = 1e-4,
) -> SpectrumResult:
    """End-to-end hbar-expansion for one state."""
    K = clamp_order(K)
    split = centrifugal_split(qn)
    imax = 2 * K + 2
    cp = classical_point(mass, pot, split.lam, imax)
    m = taylor_coeffs(mass, cp.r0, required_taylor_order(K))
    F = qpf_series(m, amb, cp.r0, imax).F
    table = correction_table(cp, split, m.truncate(imax), F, qn, K)
    result = partial_sums(table, qn, tol)
    result.meta.update(cp.meta)
    return result
