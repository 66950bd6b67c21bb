import math

import numpy as np
import pytest

from fracsusy import fock, kfermion, linalg, susy, wk
from fracsusy.fock import GradedFockSpace
from fracsusy.qnum import dbox_q


@pytest.mark.parametrize("k", range(2, 9))
def test_pair_invariants(k):
    pair = kfermion.kfermion_matrices(k)
    assert linalg.max_abs(linalg.matrix_power(pair.f_minus, k)) == 0.0
    assert linalg.max_abs(linalg.matrix_power(pair.f_plus, k)) == 0.0
    twisted = linalg.q_commutator(pair.f_minus, pair.f_plus, pair.q.value)
    assert linalg.residual(twisted, np.eye(k)) < 1e-12
    grading = kfermion.grading_commutator(pair)
    expected = np.diag([pair.q.power(s) for s in range(k)])
    assert linalg.residual(grading, expected) < 1e-12
    assert linalg.residual(linalg.matrix_power(grading, k), np.eye(k)) < 1e-12


def test_pair_k2_is_fermion():
    pair = kfermion.kfermion_matrices(2)
    anti = linalg.anticommutator(pair.f_minus, pair.f_plus)
    assert linalg.residual(anti, np.eye(2)) < 1e-14


def test_pair_k3_number_like_product():
    pair = kfermion.kfermion_matrices(3)
    q = pair.q
    got = pair.f_plus @ pair.f_minus
    assert linalg.residual(got, np.diag([0, dbox_q(1, q), dbox_q(2, q)])) < 1e-14


@pytest.mark.parametrize("k", range(2, 9))
def test_cyclic_shift(k):
    pair = kfermion.kfermion_matrices(k)
    s_op = kfermion.cyclic_shift_operator(pair)
    perm = np.zeros((k, k), dtype=complex)
    for s in range(k):
        perm[(s - 1) % k, s] = 1.0
    assert linalg.residual(s_op, perm) < 1e-13
    assert linalg.residual(linalg.matrix_power(s_op, k), np.eye(k)) < 1e-13
    assert linalg.residual(linalg.adjoint(s_op) @ s_op, np.eye(k)) < 1e-13


def test_cyclic_shift_k2_is_swap():
    s_op = kfermion.cyclic_shift_operator(kfermion.kfermion_matrices(2))
    assert linalg.residual(s_op, np.array([[0, 1], [1, 0]], dtype=complex)) < 1e-14
    assert linalg.residual(s_op @ s_op, np.eye(2)) < 1e-14


def test_cyclic_shift_wraps_with_unit_weight():
    s_op = kfermion.cyclic_shift_operator(kfermion.kfermion_matrices(3))
    assert abs(s_op[2, 0] - 1.0) < 1e-14


def test_quon_boson_point():
    quon = kfermion.quon_action(1.0, 8, 0.5, 0.5)
    for n in range(1, 9):
        assert abs(quon.a_minus[n - 1, n] - math.sqrt(n)) < 1e-12


def test_quon_twisted_commutator():
    quon = kfermion.quon_action(0.7, 12, 0.5, 0.5)
    eye = np.eye(13, dtype=complex)
    comm = linalg.q_commutator(quon.a_minus, quon.a_plus, 0.7)
    assert linalg.column_residual(comm, eye, np.arange(12)) < 1e-10
    for mat, sign in ((quon.a_minus, -1.0), (quon.a_plus, 1.0)):
        got = linalg.commutator(quon.number_op, mat)
        assert linalg.column_residual(got, sign * mat, np.arange(12)) < 1e-10


def test_quon_one_sided_weights():
    quon = kfermion.quon_action(0.7, 6, 0.0, 1.0)
    for n in range(1, 7):
        assert abs(quon.a_minus[n - 1, n] - 1.0) < 1e-14


def test_quon_validation():
    with pytest.raises(ValueError):
        kfermion.quon_action(0.0, 5)
    with pytest.raises(ValueError):
        kfermion.quon_action(0.7, 5, 0.7, 0.7)
    with pytest.raises(ValueError):
        kfermion.quon_action(0.7, 5, 1.2, -0.2)
    assert kfermion.quon_action(0.7, 5).sigma == 0.5


def test_boson_limit_monotone():
    errors = kfermion.boson_limit_errors(3, [1e-2, 1e-3, 1e-4])
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 5e-3


PALINDROMIC = {2: (1.0, 0.3), 3: (1.0, 0.2, 0.2), 4: (1.0, 0.2, 0.1, 0.2)}


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("kind", ["unit", "c_lambda"])
def test_composite_matches_direct(k, kind):
    space = GradedFockSpace(k, 12)
    sf = wk.unit_functions(k) if kind == "unit" else wk.c_lambda_functions(k, PALINDROMIC[k])
    gens = kfermion.realize_wk(space, sf)  # raises if it deviates
    direct = wk.build_generators(space, sf)
    interior = fock.interior_mask(space, 1)
    assert linalg.column_residual(gens.x_minus, direct.x_minus, interior) < 1e-12
    assert linalg.column_residual(gens.x_plus, direct.x_plus, interior) < 1e-12
    assert gens.provenance == "kfermion"
    report = wk.verify_wk_relations(gens, sf, guard=2)
    assert report.passed, report.to_text()


def test_composite_commutator_equals_boson_commutator_unit():
    space = GradedFockSpace(3, 12)
    sf = wk.unit_functions(3)
    gens = kfermion.realize_wk(space, sf)
    b_minus = kfermion._level_ladder(space, sf)
    b_plus = linalg.adjoint(b_minus)
    interior = fock.interior_mask(space, 2)
    assert (
        linalg.column_residual(
            linalg.commutator(gens.x_minus, gens.x_plus),
            linalg.commutator(b_minus, b_plus),
            interior,
        )
        < 1e-12
    )


def test_composite_number_identity_unit():
    space = GradedFockSpace(3, 12)
    sf = wk.unit_functions(3)
    gens = kfermion.realize_wk(space, sf)
    interior = fock.interior_mask(space, 1)
    assert linalg.column_residual(gens.x_plus @ gens.x_minus, gens.number_op, interior) < 1e-12


def test_composite_k2_matches_fermion_boson_product():
    # order-2 case: ladder times (lower-shift + raise-shift) on the grade factor
    space = GradedFockSpace(2, 10)
    sf = wk.unit_functions(2)
    gens = kfermion.realize_wk(space, sf)
    pair = kfermion.kfermion_matrices(2)
    swap = kfermion._lift_grade_operator(space, pair.f_minus + pair.f_plus)
    b_minus = kfermion._level_ladder(space, sf)
    assert linalg.residual(gens.x_minus, swap @ b_minus) < 1e-13


def test_supercoherent_state_z0():
    space = GradedFockSpace(3, 6)
    st = kfermion.supercoherent_state(0.0, space)
    assert st.coeffs[0, 0] == 1.0
    assert np.max(np.abs(st.coeffs[1:, :])) == 0.0


def test_supercoherent_grade_ratio_k2():
    space = GradedFockSpace(2, 10)
    st = kfermion.supercoherent_state(0.4, space)
    for n in range(8):
        assert abs(st.coeffs[n, 1] / st.coeffs[n, 0] - 1.0) < 1e-12


def test_supercoherent_tail_guard():
    space = GradedFockSpace(3, 4)
    with pytest.raises(ValueError, match="increase n_max"):
        kfermion.supercoherent_state(2.5, space)


def test_supercoherent_eigenvector_property():
    space = GradedFockSpace(3, 25)
    z = 0.5 + 0.2j
    st = kfermion.supercoherent_state(z, space)
    assert kfermion.coherent_eigenvector_residual(st, z) < 1e-10


def oscillator_hamiltonian(space):
    sf = wk.unit_functions(space.k)
    gens = wk.build_generators(space, sf)
    return susy.hamiltonian(gens, sf, "oscillator")


def test_evolution_at_zero_time_is_identity():
    space = GradedFockSpace(3, 20)
    st = kfermion.supercoherent_state(0.5, space)
    h = oscillator_hamiltonian(space)
    evolved, report = kfermion.evolve_supercoherent(st, h, 0.0)
    assert np.array_equal(evolved.coeffs, st.coeffs)
    assert max(report.grade_residuals) < 1e-14


@pytest.mark.parametrize("k", [2, 3, 4])
def test_evolution_matches_rotated_form(k):
    space = GradedFockSpace(k, 20)
    st = kfermion.supercoherent_state(0.5, space)
    h = oscillator_hamiltonian(space)
    evolved, report = kfermion.evolve_supercoherent(st, h, 0.37)
    for s in range(1, k):
        assert report.grade_residuals[s] < 1e-10
    assert report.grade0_extra_phase_residual < 1e-10
    expect_phase = np.exp(1j * k * (k - 1) * 0.37)
    assert abs(report.grade0_extra_phase - expect_phase) < 1e-12
    assert report.unitarity_residual < 1e-12
    assert abs(evolved.norm() - st.norm()) < 1e-12


def test_evolution_k3_extra_phase_value():
    space = GradedFockSpace(3, 20)
    st = kfermion.supercoherent_state(0.5, space)
    h = oscillator_hamiltonian(space)
    _, report = kfermion.evolve_supercoherent(st, h, 0.37)
    assert abs(report.grade0_extra_phase - np.exp(6j * 0.37)) < 1e-12


def test_evolution_requires_diagonal_hamiltonian():
    space = GradedFockSpace(2, 8)
    st = kfermion.supercoherent_state(0.3, space)
    h = oscillator_hamiltonian(space).copy()
    h[0, 1] = 1.0
    with pytest.raises(ValueError, match="diagonal"):
        kfermion.evolve_supercoherent(st, h, 0.1)


def test_grassmann_vector_json():
    space = GradedFockSpace(2, 10)
    st = kfermion.supercoherent_state(0.3, space)
    d = st.to_dict()
    assert d["k"] == 2
    assert len(d["coeffs"]) == space.dim
    entry = d["coeffs"][0]
    assert set(entry) == {"n", "s", "re", "im"}
