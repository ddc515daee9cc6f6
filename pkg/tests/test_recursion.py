import numpy as np
import pytest

from hbarpdm.classical import classical_point
from hbarpdm.models import AmbiguitySet, Coulomb, PowerLawMass, qpf_series, taylor_coeffs
from hbarpdm.recursion import (
    MAX_ORDER,
    CorrectionTable,
    QuantumNumbers,
    centrifugal_split,
    clamp_order,
    correction_table,
    expand_energy,
    partial_sums,
)

COUL = Coulomb(10.0)


@pytest.mark.parametrize("nr,l,lam,A,B", [(0, 2, 3, -1, 0), (1, 1, 3, -3, 2), (0, 0, 1, -1, 0)])
def test_split_examples(nr, l, lam, A, B):
    s = centrifugal_split(QuantumNumbers(nr, l))
    assert (s.lam, s.A, s.B) == (lam, A, B)
    assert s.centrifugal() == l * (l + 1)


def test_split_identity_any_hbar():
    for hbar in (0.3, 1.0, 2.5):
        for nr in range(4):
            for l in range(4):
                s = centrifugal_split(QuantumNumbers(nr, l, hbar))
                assert s.centrifugal() == pytest.approx(hbar**2 * l * (l + 1), rel=1e-14, abs=1e-14)


def test_quantum_numbers_validation():
    with pytest.raises(ValueError):
        QuantumNumbers(-1, 0)
    with pytest.raises(ValueError):
        QuantumNumbers(0, 1.5)
    with pytest.raises(ValueError):
        QuantumNumbers(0, 0, 0.0)
    assert QuantumNumbers(2, 1).n == 4


@pytest.mark.parametrize("n", range(1, 6))
def test_balmer_degeneracy(n):
    energies = []
    for nr in range(n):
        r = expand_energy(PowerLawMass(0.5), COUL, QuantumNumbers(nr, n - 1 - nr), K=5)
        assert r.corrections[0] == pytest.approx(-0.5 * 100 / (2 * n * n), rel=1e-12)
        assert np.all(np.abs(r.corrections[1:]) < 1e-10 * abs(r.corrections[0]))
        energies.append(r.energy)
    assert np.ptp(energies) < 1e-10 * abs(energies[0])


def test_lambda2_first_correction():
    r = expand_energy(PowerLawMass(0.5, 0.1, 2.0), COUL, QuantumNumbers(0, 2), K=6)
    assert r.corrections[1] == pytest.approx(-1 / 6, rel=1e-10)
    assert abs(r.partials[1]) == pytest.approx(1.94444, abs=5e-6)
    assert r.corrections[2] == pytest.approx(1 / 9, rel=1e-9)


@pytest.mark.parametrize("state", [(0, 2), (1, 1)])
def test_lambda2_terminates(state):
    r = expand_energy(PowerLawMass(0.5, 0.1, 2.0), COUL, QuantumNumbers(*state), K=6)
    e4 = abs(r.partials[4])
    assert abs(r.corrections[5]) < 1e-9 * e4
    assert abs(r.corrections[6]) < 1e-9 * e4


def test_lambda3_partials():
    r = expand_energy(PowerLawMass(0.5, 0.1, 3.0), COUL, QuantumNumbers(1, 1), K=5)
    ref = [1.18817, 1.98401, 1.66974, 1.61180, 1.62647, 1.62478]
    assert np.round(np.abs(r.partials), 5).tolist() == ref


def _table(E):
    E = np.asarray(E, dtype=float)
    return CorrectionTable(C=np.zeros((E.size, 2 * E.size)), E=E, r0=1.0, omega=1.0, n_r=0)


def test_partial_sums_weights():
    out = partial_sums(_table([1.0, 1.0, 1.0]), QuantumNumbers(0, 0, 0.5))
    assert np.allclose(out.partials, [1.0, 1.5, 1.75])
    out = partial_sums(_table([-1.77778, -0.16666, 0.11111]), QuantumNumbers(0, 2))
    assert np.allclose(out.partials, [-1.77778, -1.94444, -1.83333])
    flat = partial_sums(_table([-2.0, 0.0, 0.0]), QuantumNumbers(0, 0))
    assert np.all(flat.partials == -2.0) and flat.converged
    for k in range(1, 3):
        assert out.partials[k] == out.partials[k - 1] + out.corrections[k]


def test_partial_sums_hbar_half_physical():
    # same physical problem at a different hbar: Lambda = hbar n stays the expansion variable
    r = expand_energy(PowerLawMass(0.5, 0.1, 2.0), COUL, QuantumNumbers(0, 2, 0.5), K=5)
    assert np.allclose(np.diff(r.partials), r.corrections[1:] * 0.5 ** np.arange(1, 6))


def test_convergence_flag_threshold():
    loose = partial_sums(_table([-1.0, 0.0, 1e-3]), QuantumNumbers(0, 0), tol=1e-4)
    tight = partial_sums(_table([-1.0, 0.0, 1e-3]), QuantumNumbers(0, 0), tol=1e-2)
    assert not loose.converged and tight.converged


def test_quantization_entries_and_immutability():
    qn = QuantumNumbers(2, 1)
    split = centrifugal_split(qn)
    mass = PowerLawMass(0.5, 0.1, -2.0)
    K = 5
    cp = classical_point(mass, COUL, split.lam, 2 * K + 2)
    m = taylor_coeffs(mass, cp.r0, 2 * K + 4)
    F = qpf_series(m, AmbiguitySet(), cp.r0, 2 * K + 2).F
    t = correction_table(cp, split, m.truncate(2 * K + 2), F, qn, K)
    assert t.residue(1) == 2 / cp.r0
    assert all(t.residue(k) == 0.0 for k in range(2, K + 1))
    assert np.all(np.isfinite(t.C))
    with pytest.raises(ValueError):
        t.E[0] = 0.0
    with pytest.raises(ValueError):
        correction_table(cp, split, m.truncate(5), F, qn, K)


def test_order_cap_warns():
    with pytest.warns(RuntimeWarning):
        assert clamp_order(MAX_ORDER + 3) == MAX_ORDER
    with pytest.raises(ValueError):
        clamp_order(-1)
    r = None
    with pytest.warns(RuntimeWarning):
        r = expand_energy(PowerLawMass(0.5, 0.1, 2.0), COUL, QuantumNumbers(0, 2), K=20)
    assert r.corrections.size == MAX_ORDER + 1


def test_ambiguity_changes_energy():
    mass = PowerLawMass(0.5, 0.1, 2.0)
    base = expand_energy(mass, COUL, QuantumNumbers(0, 2)).energy
    other = expand_energy(mass, COUL, QuantumNumbers(0, 2), amb=AmbiguitySet(-0.5, 0.25)).energy
    assert base != pytest.approx(other, rel=1e-6)
