import numpy as np
import pytest
from scipy.optimize import brentq

from hbarpdm.classical import (
    classical_point,
    find_orbit_radius,
    leading_frequency,
    leading_logderiv,
    orbit_residual,
    orbit_roots,
    zeroth_energy,
)
from hbarpdm.coulomb_pdm import CoulombPDM, closed_omega
from hbarpdm.errors import DegenerateDenominatorError, NoStableOrbitError, UnstableOrbitError
from hbarpdm.models import Coulomb, CustomPotential, PowerLawMass, taylor_coeffs
from hbarpdm.series import TruncatedSeries, series_mul, series_sqrt

from helpers import random_model

COUL = Coulomb(10.0)


def pdm(lam, a=0.1):
    return PowerLawMass(0.5, a, lam)


def test_constant_mass_orbit():
    r0 = find_orbit_radius(PowerLawMass(0.5), COUL, 3.0)
    assert r0 == pytest.approx(1.8, rel=1e-13)
    assert zeroth_energy(PowerLawMass(0.5), COUL, 3.0, r0) == pytest.approx(-0.5 * 100 / 18, rel=1e-12)


def test_lambda2_orbit_against_bisection():
    mass = pdm(2.0)
    r0 = find_orbit_radius(mass, COUL, 3.0)
    assert r0 == pytest.approx(2.195122, abs=1e-6)
    ref = brentq(lambda r: orbit_residual(mass, COUL, 3.0, r), 1.0, 4.0, xtol=1e-15)
    assert r0 == pytest.approx(ref, rel=1e-12)
    assert zeroth_energy(mass, COUL, 3.0, r0) == pytest.approx(-1.77778, abs=5e-6)


@pytest.mark.parametrize("lam,e0", [(3.0, 1.18817), (-3.0, 4.04566), (-2.0, 3.64395)])
def test_zeroth_energy_reference(lam, e0):
    mass = pdm(lam)
    r0 = find_orbit_radius(mass, COUL, 3.0)
    assert abs(zeroth_energy(mass, COUL, 3.0, r0)) == pytest.approx(e0, abs=5e-6)


def test_orbit_residual_tight():
    for lam in (-4.0, -1.5, 0.5, 2.5, 3.5):
        mass = pdm(lam)
        r0 = find_orbit_radius(mass, COUL, 3.0)
        scale = 9.0 * (1 + abs(mass.d1(r0)) * r0 / mass.value(r0))
        assert abs(orbit_residual(mass, COUL, 3.0, r0)) < 1e-12 * scale


def test_frequency_constant_mass():
    r0 = 1.8
    m = taylor_coeffs(PowerLawMass(0.5), r0, 6)
    v = taylor_coeffs(COUL, r0, 6)
    omega, shape = leading_frequency(m, v, r0, 4)
    assert omega * r0 == pytest.approx(3.0, rel=1e-13)
    assert shape[0] == 1.0


def test_frequency_lambda2():
    cp = classical_point(pdm(2.0), COUL, 3.0, 4)
    t = 1 + 0.1 * cp.r0
    assert cp.omega == pytest.approx(np.sqrt(0.5 * 10 / (cp.r0 * t**3)), rel=1e-12)
    assert cp.omega == pytest.approx(1.120667, abs=1e-6)


def test_frequency_matches_closed_form_random():
    rng = np.random.default_rng(7)
    for _ in range(20):
        lam, a = rng.uniform(-4, 4), rng.uniform(0.01, 0.2)
        p = CoulombPDM(a=a, lam=lam)
        try:
            cp = classical_point(p.mass, p.potential, 3.0, 4)
        except NoStableOrbitError:
            continue
        assert cp.omega == pytest.approx(closed_omega(p, cp.r0), rel=1e-10)


def test_logderiv_examples():
    zero = TruncatedSeries([1.0, 0, 0, 0])
    assert leading_logderiv(2.0, zero, 3) == TruncatedSeries([-2.0, 0, 0, 0])
    c = leading_logderiv(2.0, TruncatedSeries([1.0, 1.0, 0, 0]), 3)
    assert c[1] == pytest.approx(-1.0) and c[2] == pytest.approx(0.25)


def test_logderiv_two_paths_and_square():
    rng = np.random.default_rng(3)
    for _ in range(10):
        mass, pot = random_model(rng)
        cp = classical_point(mass, pot, 2.0, 12)
        via_sqrt = -cp.omega * series_sqrt(cp.shape)
        assert cp.C0.allclose(via_sqrt, rtol=1e-12, atol=1e-12 * cp.omega)
        sq = series_mul(cp.C0, cp.C0)
        assert sq.allclose(cp.omega**2 * cp.shape, rtol=1e-11, atol=1e-11 * cp.omega**2)
        assert cp.C0[0] < 0


def test_orbit_balance_at_x0():
    for lam in (-3.0, 2.0, 3.0):
        mass = pdm(lam)
        cp = classical_point(mass, COUL, 3.0, 4)
        m0 = mass.value(cp.r0)
        bal = 2 * m0 * (COUL.value(cp.r0) - cp.E0) + 9.0 / cp.r0**2
        assert abs(bal) < 1e-10 * 9.0 / cp.r0**2


def test_no_orbit():
    # lam = 2: r0 = (Lambda^2 / m_c q)(1 + a r0) has no positive root once a Lambda^2 >= m_c q
    with pytest.raises(NoStableOrbitError):
        find_orbit_radius(PowerLawMass(0.5, 0.2, 2.0), COUL, 5.0)
    repulsive = CustomPotential(lambda r: 1.0 / r, lambda r: -1.0 / r**2)
    with pytest.raises(NoStableOrbitError):
        find_orbit_radius(PowerLawMass(0.5), repulsive, 3.0)


def test_unstable_frequency_rejected():
    m = TruncatedSeries([1.0, 0, 0, 0])
    v = TruncatedSeries([0.0, 1.0, -5.0, 0])
    with pytest.raises(UnstableOrbitError):
        leading_frequency(m, v, 1.0, 1)
    with pytest.raises(DegenerateDenominatorError):
        leading_frequency(TruncatedSeries([1.0, -2.0, 0, 0]), v, 1.0, 1)


def test_smallest_stable_root_is_selected():
    # well with two minima: -q/r + Gaussian bump creates several orbits
    def f(r):
        return -10 / r + 4 * np.exp(-((r - 3) ** 2))

    def d1(r):
        return 10 / r**2 - 8 * (r - 3) * np.exp(-((r - 3) ** 2))

    pot = CustomPotential(f, d1)
    roots = orbit_roots(PowerLawMass(0.5), pot, 3.0)
    stable = [r for r, w2 in roots if w2 > 0]
    cp = classical_point(PowerLawMass(0.5), pot, 3.0, 4)
    assert cp.r0 == pytest.approx(min(stable))
    assert cp.meta["stable_roots"] == len(stable)
