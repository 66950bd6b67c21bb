import numpy as np
import pytest

from fracsusy import fock, grassmann, linalg, susy, wk
from fracsusy.fock import GradedFockSpace
from fracsusy.qnum import root_of_unity


@pytest.mark.parametrize("k", range(2, 9))
def test_calculus_invariants(k):
    gc = grassmann.grassmann_calculus(k)
    assert linalg.max_abs(linalg.matrix_power(gc.theta, k)) == 0.0
    assert linalg.max_abs(linalg.matrix_power(gc.dtheta, k)) == 0.0
    twisted = linalg.q_commutator(gc.dtheta, gc.theta, gc.q.conjugate)
    assert linalg.residual(twisted, np.eye(k)) < 1e-12


def test_order_two_is_ordinary_grassmann():
    gc = grassmann.grassmann_calculus(2)
    anti = gc.dtheta @ gc.theta + gc.theta @ gc.dtheta
    assert linalg.residual(anti, np.eye(2)) < 1e-14


def test_derivative_actions():
    gc = grassmann.grassmann_calculus(3)
    v0 = np.array([1, 0, 0], dtype=complex)
    assert np.max(np.abs(gc.dtheta @ v0)) == 0.0
    v2 = np.array([0, 0, 1], dtype=complex)
    out = gc.dtheta @ v2
    qbar = root_of_unity(3).conjugate
    assert abs(out[1] - (1 + qbar)) < 1e-14


@pytest.mark.parametrize("k", range(2, 9))
def test_cycle_identities(k):
    report = grassmann.verify_grassmann_identities(grassmann.grassmann_calculus(k))
    assert report.passed, report.to_text()
    assert report["shift_cycle_identity"].residual < 1e-12
    assert report["grading_cycle_identity"].residual < 1e-12


def test_cycle_identity_tight_k3():
    report = grassmann.verify_grassmann_identities(grassmann.grassmann_calculus(3))
    assert report["shift_cycle_identity"].residual < 1e-13


def test_boson_calculus():
    bc = grassmann.boson_calculus(15)
    comm = linalg.commutator(bc.ddx, bc.x)
    cols = np.arange(15)  # interior: one raising application
    assert linalg.column_residual(comm, np.eye(16), cols) < 1e-10
    assert linalg.residual(bc.x, linalg.adjoint(bc.x)) < 1e-12
    assert linalg.residual(bc.ddx, -linalg.adjoint(bc.ddx)) < 1e-12


def test_differential_realization_rejects_coupling():
    with pytest.raises(ValueError, match="c = 0"):
        grassmann.differential_realization(3, 0.5, 10)


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("form", ["first", "second"])
def test_differential_realization_relations(k, form):
    real = grassmann.differential_realization(k, 0.0, 15, form)
    report = grassmann.verify_differential_realization(real, guard=2)
    assert report.passed, report.to_text()
    assert report["ladder_commutator_uncoupled"].residual < 1e-9


def test_realization_grading_is_lifted_witten():
    real = grassmann.differential_realization(3, 0.0, 6, "first")
    gc = grassmann.grassmann_calculus(3)
    w = grassmann.witten_operator(gc)
    lifted = grassmann._lift_grade(real.space, w)
    assert linalg.residual(real.grading_op, lifted) == 0.0


def test_supercharges_nilpotent_k2():
    q_minus, q_plus, _ = grassmann.differential_supercharges(2, 12, "first")
    assert linalg.max_abs(q_minus @ q_minus) == 0.0
    assert linalg.max_abs(q_plus @ q_plus) == 0.0


def test_supercharges_nilpotent_k3():
    q_minus, q_plus, _ = grassmann.differential_supercharges(3, 10, "first")
    assert linalg.max_abs(linalg.matrix_power(q_minus, 3)) == 0.0
    assert linalg.max_abs(linalg.matrix_power(q_plus, 3)) == 0.0


def test_super_oscillator_conserves_ladder_charges():
    h = grassmann.super_oscillator_hamiltonian(20)
    q_minus, q_plus, space = grassmann.differential_supercharges(2, 20, "second")
    interior = fock.interior_mask(space, 2)
    assert linalg.column_residual(h @ q_minus, q_minus @ h, interior) < 1e-8
    assert linalg.column_residual(h @ q_plus, q_plus @ h, interior) < 1e-8


def test_super_oscillator_spectrum():
    h = grassmann.super_oscillator_hamiltonian(20)
    space = GradedFockSpace(2, 20)
    report = susy.spectrum_report(h, space, guard=2)
    energies = [lv.energy for lv in report.levels[:3]]
    mults = [lv.multiplicity for lv in report.levels[:3]]
    assert np.allclose(energies, [0.0, 1.0, 2.0], atol=1e-8)
    assert mults == [1, 2, 2]


def test_super_oscillator_matches_abstract_ladder():
    n_max = 20
    h_diff = grassmann.super_oscillator_hamiltonian(n_max)
    space = GradedFockSpace(2, n_max)
    sf = wk.unit_functions(2)
    gens = wk.build_generators(space, sf)
    h_abs = susy.hamiltonian(gens, sf, "oscillator")
    r_diff = susy.spectrum_report(h_diff, space, guard=2)
    r_abs = susy.spectrum_report(h_abs, space, guard=2)
    for a, b in zip(r_diff.levels[:10], r_abs.levels[:10]):
        assert abs(a.energy - b.energy) < 1e-8
        assert a.multiplicity == b.multiplicity
