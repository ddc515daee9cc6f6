import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hbarpdm.series import (
    SeriesDomainError,
    SeriesOrderError,
    TruncatedSeries,
    inverse_square_one_plus_x,
    series_mul,
    series_recip,
    series_sqrt,
)

S = TruncatedSeries


def test_mul_examples():
    assert series_mul(S([1, 1, 0]), S([1, -1, 0])) == S([1, 0, -1])
    s = S([0.3, -2.0, 5.0])
    assert series_mul(S([1, 0, 0]), s) == s
    assert series_mul(S([1, 2, 3]), S([4, 5, 0])) == S([4, 13, 22])


def test_sqrt_examples():
    assert series_sqrt(S([1, 2, 1])) == S([1, 1, 0])
    assert series_sqrt(S([1, 0, 0, 0])) == S([1, 0, 0, 0])
    assert series_sqrt(S([1, 1, 0, 0])).allclose(S([1, 0.5, -0.125, 0.0625]), rtol=0, atol=1e-15)


def test_recip_examples():
    assert series_recip(S([1, 1, 0, 0])) == S([1, -1, 1, -1])
    assert series_recip(S([2, 0, 0])) == S([0.5, 0, 0])
    assert series_recip(S([1, 1, 1])) == S([1, -1, 0])


def test_order_mismatch_is_rejected():
    with pytest.raises(SeriesOrderError):
        series_mul(S([1, 2]), S([1, 2, 3]))
    with pytest.raises(SeriesOrderError):
        S([1, 2]) + S([1])
    with pytest.raises(SeriesOrderError):
        S([1, 2]).truncate(3)


def test_domain_errors():
    with pytest.raises(SeriesDomainError):
        series_sqrt(S([0.0, 1.0]))
    with pytest.raises(SeriesDomainError):
        series_sqrt(S([-1.0, 1.0]))
    with pytest.raises(SeriesDomainError):
        series_recip(S([0.0, 1.0]))


def test_invariants():
    with pytest.raises(ValueError):
        S([1.0, np.nan])
    with pytest.raises(ValueError):
        S([np.inf])
    with pytest.raises(ValueError):
        S([])
    s = S([1.0, 2.0])
    assert len(s.coeffs) == s.order + 1
    with pytest.raises(ValueError):
        s.coeffs[0] = 5.0


def test_inverse_square():
    x = 0.1
    assert inverse_square_one_plus_x(40)(x) == pytest.approx(1 / (1 + x) ** 2, rel=1e-14)
    assert series_mul(inverse_square_one_plus_x(6), S([1, 2, 1, 0, 0, 0, 0])) == S.constant(1.0, 6)


def test_derivative_and_helpers():
    s = S([1, 2, 3, 4])
    assert s.derivative() == S([2, 6, 12])
    assert s.shift_down() == S([2, 3, 4])
    assert s(0.5) == pytest.approx(1 + 1 + 0.75 + 0.5)
    assert (s - s) == S.zeros(3)
    assert (2 * s) / 2 == s


coeff = st.floats(min_value=-10, max_value=10, allow_nan=False)


@st.composite
def positive_series(draw, max_order=16):
    n = draw(st.integers(0, max_order))
    c0 = draw(st.floats(min_value=0.1, max_value=10))
    rest = draw(st.lists(coeff, min_size=n, max_size=n))
    return S([c0] + rest)


@st.composite
def series_triple(draw):
    n = draw(st.integers(0, 10))
    return [S(draw(st.lists(coeff, min_size=n + 1, max_size=n + 1))) for _ in range(3)]


@settings(max_examples=200, deadline=None)
@given(positive_series())
def test_sqrt_round_trip(a):
    back = series_mul(series_sqrt(a), series_sqrt(a))
    # coefficients may grow like (|c_i|/c_0)^i, so compare against that scale
    scale = np.maximum(np.abs(a.coeffs), np.max(np.abs(a.coeffs)))
    assert np.all(np.abs(back.coeffs - a.coeffs) <= 1e-12 * scale * (1 + np.abs(series_sqrt(a).coeffs).max()) ** 2)


@settings(max_examples=200, deadline=None)
@given(positive_series())
def test_recip_round_trip(a):
    r = series_recip(a)
    one = series_mul(a, r)
    scale = np.abs(a.coeffs).max() * np.abs(r.coeffs).max()
    assert np.allclose(one.coeffs, S.constant(1.0, a.order).coeffs, rtol=0, atol=1e-12 * max(scale, 1.0))


@settings(max_examples=200, deadline=None)
@given(series_triple())
def test_mul_commutative_associative(abc):
    a, b, c = abc
    assert series_mul(a, b).allclose(series_mul(b, a), rtol=0, atol=1e-12)
    left = series_mul(series_mul(a, b), c)
    right = series_mul(a, series_mul(b, c))
    assert left.allclose(right, rtol=1e-12, atol=1e-9)
