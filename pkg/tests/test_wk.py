import math

import numpy as np
import pytest

from fracsusy import fock, linalg, uqsl2, wk
from fracsusy.fock import GradedFockSpace
from fracsusy.qnum import root_of_unity

PALINDROMIC = {
    2: (1.0, 0.3),
    3: (1.0, 0.2, 0.2),
    4: (1.0, 0.2, 0.1, 0.2),
    5: (1.0, 0.2, 0.1, 0.1, 0.2),
}


def build(k, kind, n_max=20):
    space = GradedFockSpace(k, n_max)
    if kind == "unit":
        sf = wk.unit_functions(k)
    elif kind == "calogero":
        sf = wk.calogero_functions(0.3)
    elif kind == "c_lambda":
        sf = wk.c_lambda_functions(k, PALINDROMIC[k])
    elif kind == "nonlinear":
        sf = wk.nonlinear_functions(k, lambda n: n + 1.0)
    else:
        raise ValueError(kind)
    return space, sf, wk.build_generators(space, sf)


def test_structure_function_values():
    assert wk.unit_functions(4).f(2, 7) == 1.0
    cal = wk.calogero_functions(0.5)
    assert cal.f(0, 3) == 1.5 and cal.f(1, 0) == 0.5
    non = wk.nonlinear_functions(3, lambda n: n + 1.0)
    assert non.f(0, 4) == 5.0
    assert non.f(2, -1) == 0.0  # clamped below the tower


def test_calogero_requires_order_two():
    with pytest.raises(ValueError):
        wk.StructureFunctions(k=3, kind="calogero", c=0.1)


def test_c_lambda_rejects_non_real_sector_functions():
    # without the palindrome symmetry the induced sector constants go complex
    with pytest.raises(ValueError, match="non-real"):
        wk.c_lambda_functions(3, (1.0, 0.2, 0.1))


def test_c_lambda_accepts_symmetric_constants():
    sf = wk.c_lambda_functions(3, (1.0, 0.2, 0.2))
    assert abs(sf.f(0, 0) - 1.4) < 1e-12
    assert abs(sf.f(1, 5) - 0.8) < 1e-12


def test_uqsl2_constants_from_sine():
    sf = wk.uqsl2_functions(3)
    expect = [
        -math.sin(4 * math.pi * s / 3) / math.sin(2 * math.pi / 3) for s in range(3)
    ]
    assert np.allclose([sf.f(s, 0) for s in range(3)], expect)
    assert np.allclose([sf.f(s, 0) for s in range(3)], [0.0, 1.0, -1.0])


def test_sector_prefix():
    assert wk.sector_F(wk.unit_functions(3), 1, 7) == 7.0
    for kind in ("unit", "calogero"):
        sf = wk.unit_functions(2) if kind == "unit" else wk.calogero_functions(0.5)
        assert wk.sector_F(sf, 0, 0) == 0.0
    assert wk.sector_F(wk.calogero_functions(0.5), 0, 2) == 3.0


def test_chain_prefix_matches_sector_for_uniform_kinds():
    sf = wk.nonlinear_functions(4, lambda n: 2 * n + 1.0)
    for s in range(4):
        for n in range(8):
            assert sf.chain_prefix(s, n) == sf.sector_prefix(s, n)


def test_lowering_action_unit_k2():
    space, sf, gens = build(2, "unit", n_max=5)
    v = np.zeros(space.dim, dtype=complex)
    v[space.index(1, 0)] = 1.0  # basis vector 2
    out = gens.x_minus @ v
    expect = np.zeros_like(v)
    expect[space.index(0, 1)] = 1.0
    assert linalg.residual(out.reshape(1, -1), expect.reshape(1, -1)) < 1e-14


def test_lowering_annihilates_ground_levels():
    space, sf, gens = build(3, "unit", n_max=6)
    for s in range(3):
        col = gens.x_minus[:, space.index(0, s)]
        assert np.max(np.abs(col)) == 0.0


def test_unit_commutator_is_identity_on_interior():
    space, sf, gens = build(3, "unit")
    interior = fock.interior_mask(space, 2)
    comm = linalg.commutator(gens.x_minus, gens.x_plus)
    assert linalg.column_residual(comm, np.eye(space.dim), interior) < 1e-10


def test_negative_chain_amplitude_rejected():
    # grade-dependent constants with a negative entry push the chain sums negative
    space = GradedFockSpace(3, 10)
    sf = wk.uqsl2_functions(3)  # constants (0, 1, -1)
    with pytest.raises(ValueError, match="negative squared amplitude"):
        wk.build_generators(space, sf)


def test_lowering_sparsity_structure():
    space, sf, gens = build(4, "c_lambda", n_max=8)
    for col in range(space.dim):
        n, s = space.decompose(col)
        rows = np.nonzero(np.abs(gens.x_minus[:, col]) > 0)[0]
        if n == 0:
            assert len(rows) == 0
        else:
            assert len(rows) <= 1
            if len(rows):
                assert space.decompose(int(rows[0])) == (n - 1, (s - 1) % 4)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
@pytest.mark.parametrize("kind", ["unit", "c_lambda", "nonlinear"])
def test_defining_relations_all_kinds(k, kind):
    space, sf, gens = build(k, kind)
    report = wk.verify_wk_relations(gens, sf, guard=2)
    assert report.passed, report.to_text()
    assert report.max_residual() < 1e-10


def test_defining_relations_calogero():
    space, sf, gens = build(2, "calogero")
    report = wk.verify_wk_relations(gens, sf, guard=2)
    assert report.passed, report.to_text()

    interior = fock.interior_mask(space, 2)
    comm = linalg.commutator(gens.x_minus, gens.x_plus)
    target = np.eye(space.dim) + 0.3 * gens.grading_op
    assert linalg.column_residual(comm, target, interior) < 1e-10


@pytest.mark.parametrize("k", [3, 4, 5])
def test_defining_relations_uqsl2_realization(k):
    gens, sf = uqsl2.to_wk(uqsl2.build_rep(k, "nilpotent"), 20)
    report = wk.verify_wk_relations(gens, sf, guard=2)
    assert report.passed, report.to_text()
    assert report.max_residual() < 1e-10


@pytest.mark.parametrize("k", [2, 3, 4])
def test_c_lambda_commutator_expansion(k):
    space, sf, gens = build(k, "c_lambda")
    interior = fock.interior_mask(space, 2)
    comm = linalg.commutator(gens.x_minus, gens.x_plus)
    q = root_of_unity(k)
    target = sum(
        PALINDROMIC[k][s] * linalg.matrix_power(gens.grading_op, s) for s in range(k)
    )
    assert linalg.column_residual(comm, target, interior) < 1e-10
    # sanity: the expansion really is the grade-diagonal constants
    for s in range(k):
        m = space.index(1, s)
        assert abs(comm[m, m] - sf.f(s, 1)) < 1e-10


def test_prefix_difference_reproduces_constants():
    space, sf, gens = build(3, "nonlinear")
    interior = fock.interior_mask(space, 2)
    down_up = np.diag(wk.expected_downup_diagonal(space, sf))
    up_down = np.diag(wk.expected_updown_diagonal(space, sf))
    fmat = np.zeros((space.dim, space.dim), dtype=complex)
    for m in range(space.dim):
        n, s = space.decompose(m)
        fmat[m, m] = sf.f(s, n)
    assert linalg.column_residual(down_up - up_down, fmat, interior) < 1e-10


def test_truncation_edge_fails_without_guard():
    space, sf, gens = build(3, "unit", n_max=6)
    report = wk.verify_wk_relations(gens, sf, guard=0)
    entry = report["ladder_commutator"]
    assert not entry.passed
    assert entry.note == "truncation edge (expected)"
    assert not report.passed


def test_projector_algebra_report():
    report = wk.verify_projector_algebra(GradedFockSpace(5, 8))
    assert report.passed
    assert report.max_residual() < 1e-11
