"""Truncated power series in the orbit-deviation variable ``x = (r - r0)/r0``.

A :class:`TruncatedSeries` holds coefficients ``c_0 .. c_N`` of a series
truncated at degree ``N``. Binary operations require both operands to carry
the same truncation order; mixing orders raises :class:`SeriesOrderError`
instead of silently promoting, because an off-by-one order almost always
means an indexing bug upstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np


class SeriesOrderError(ValueError):
    """Operands have different truncation orders."""


class SeriesDomainError(ValueError):
    """Operation undefined for the given constant term."""


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Immutable real power series ``sum_{i<=N} c_i x^i``."""

    coeffs: np.ndarray

    def __init__(self, coeffs: Iterable[float] | np.ndarray):
        arr = np.array(coeffs, dtype=float).ravel()
        if arr.size == 0:
            raise ValueError("a series needs at least the constant coefficient")
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"non-finite series coefficient in {arr!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def zeros(cls, order: int) -> "TruncatedSeries":
        return cls(np.zeros(order + 1))

    @classmethod
    def constant(cls, value: float, order: int) -> "TruncatedSeries":
        c = np.zeros(order + 1)
        c[0] = value
        return cls(c)

    @classmethod
    def geometric(cls, ratio: float, order: int, scale: float = 1.0) -> "TruncatedSeries":
        """``scale * sum (ratio x)^i``, i.e. ``scale/(1 - ratio x)``."""
        return cls(scale * ratio ** np.arange(order + 1))

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs.tolist())

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.coeffs.tolist()!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None  # type: ignore[assignment]

    def allclose(self, other: "TruncatedSeries", rtol: float = 1e-12, atol: float = 0.0) -> bool:
        _check_orders(self, other)
        return bool(np.allclose(self.coeffs, other.coeffs, rtol=rtol, atol=atol))

    def truncate(self, order: int) -> "TruncatedSeries":
        """Drop terms above ``order``; padding with zeros is refused."""
        if order > self.order:
            raise SeriesOrderError(f"cannot extend order {self.order} to {order} without data")
        return TruncatedSeries(self.coeffs[: order + 1])

    def derivative(self) -> "TruncatedSeries":
        """d/dx; the result has order N-1."""
        if self.order == 0:
            raise SeriesOrderError("derivative of an order-0 series has no coefficients")
        n = np.arange(1, self.order + 1)
        return TruncatedSeries(n * self.coeffs[1:])

    def shift_down(self) -> "TruncatedSeries":
        """``(s(x) - s(0))/x``; order drops by one."""
        if self.order == 0:
            raise SeriesOrderError("shift of an order-0 series has no coefficients")
        return TruncatedSeries(self.coeffs[1:])

    def __call__(self, x: float) -> float:
        return float(np.polynomial.polynomial.polyval(x, self.coeffs))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-self.coeffs)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            _check_orders(self, other)
            return TruncatedSeries(self.coeffs + other.coeffs)
        c = self.coeffs.copy()
        c[0] += float(other)
        return TruncatedSeries(c)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return TruncatedSeries(self.coeffs * float(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, series_recip(other))
        return TruncatedSeries(self.coeffs / float(other))


def _check_orders(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.order != b.order:
        raise SeriesOrderError(f"truncation orders differ: {a.order} vs {b.order}")


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    _check_orders(a, b)
    n = a.order + 1
    return TruncatedSeries(np.convolve(a.coeffs, b.coeffs)[:n])


def series_recip(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse, solved triangularly from ``a * r = 1``."""
    c = a.coeffs
    if c[0] == 0.0:
        raise SeriesDomainError("reciprocal needs a nonzero constant term")
    r = np.zeros_like(c)
    r[0] = 1.0 / c[0]
    for n in range(1, c.size):
        r[n] = -np.dot(c[1 : n + 1], r[n - 1 :: -1]) / c[0]
    return TruncatedSeries(r)


def series_sqrt(a: TruncatedSeries) -> TruncatedSeries:
    """Principal square root of a series with positive constant term.

    Coefficients follow from matching powers in ``s * s = a``:
    ``s_n = (a_n - sum_{j=1}^{n-1} s_j s_{n-j}) / (2 s_0)``.
    """
    c = a.coeffs
    if not c[0] > 0.0:
        raise SeriesDomainError(f"square root needs a positive constant term, got {c[0]!r}")
    s = np.zeros_like(c)
    s[0] = np.sqrt(c[0])
    for n in range(1, c.size):
        cross = np.dot(s[1:n], s[n - 1 : 0 : -1]) if n > 1 else 0.0
        s[n] = (c[n] - cross) / (2.0 * s[0])
    return TruncatedSeries(s)


def inverse_square_one_plus_x(order: int) -> TruncatedSeries:
    """``(1 + x)^-2 = sum (-1)^i (i+1) x^i``, i.e. ``(r0/r)^2``."""
    i = np.arange(order + 1)
    return TruncatedSeries((-1.0) ** i * (i + 1))
