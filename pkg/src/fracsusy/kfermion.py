"""k-fermions, generic deformed oscillators, and graded coherent states.

A k-fermion pair lives on the k-dimensional grade space and is nilpotent of
order k; combined with level-ladder bosons through the unit-coefficient
cyclic shift it reproduces the abstract ladder construction entrywise.  The
generic-parameter oscillator and its root-of-unity limit connect the
k-fermion picture back to ordinary bosons, and the graded coherent state
carries both a bosonic amplitude and a nilpotent grade amplitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fock, linalg
from .fock import GradedFockSpace
from .qnum import RootOfUnity, dbox, dbox_factorial, dbox_factorial_generic, dbox_q
from .wk import GeneratorSet, StructureFunctions, build_generators


@dataclass
class KFermionPair:
    """Nilpotent shift pair on the grade space, with the grading commutator built in."""

    k: int
    f_minus: np.ndarray
    f_plus: np.ndarray
    q: RootOfUnity


def kfermion_matrices(k: int) -> KFermionPair:
    """Grade-space shifts: lowering with unit coefficients, raising with brackets.

    The lowering matrix annihilates grade 0 and the raising matrix grade k-1,
    so both k-th powers vanish identically.  The q-twisted commutator of the
    pair is the identity and the plain commutator is the grading operator.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    q = RootOfUnity(k)
    f_minus = np.zeros((k, k), dtype=complex)
    f_plus = np.zeros((k, k), dtype=complex)
    for s in range(1, k):
        f_minus[s - 1, s] = 1.0
    for s in range(k - 1):
        f_plus[s + 1, s] = dbox_q(s + 1, q)
    pair = KFermionPair(k=k, f_minus=f_minus, f_plus=f_plus, q=q)

    eye = linalg.identity(k)
    if linalg.max_abs(linalg.matrix_power(f_minus, k)) != 0.0:
        raise AssertionError("lowering shift is not strictly nilpotent")
    if linalg.max_abs(linalg.matrix_power(f_plus, k)) != 0.0:
        raise AssertionError("raising shift is not strictly nilpotent")
    twist = linalg.residual(linalg.q_commutator(f_minus, f_plus, q.value), eye)
    if twist > 1e-12:
        raise AssertionError(f"twisted commutator deviates from identity by {twist:.3e}")
    grading = linalg.commutator(f_minus, f_plus)
    expected = np.diag(np.array([q.power(s) for s in range(k)], dtype=complex))
    if linalg.residual(grading, expected) > 1e-12:
        raise AssertionError("shift commutator does not reproduce the grading phases")
    if linalg.residual(linalg.matrix_power(grading, k), eye) > 1e-12:
        raise AssertionError("grading commutator is not of order k")
    return pair


def grading_commutator(pair: KFermionPair) -> np.ndarray:
    return linalg.commutator(pair.f_minus, pair.f_plus)


def cyclic_shift_operator(pair: KFermionPair) -> np.ndarray:
    """Lowering shift plus rescaled top power of the raising shift.

    The bracket factorial picked up by the (k-1)-th raising power cancels the
    divisor exactly, so the combination is the unit-coefficient cyclic
    permutation of grades and its k-th power is the identity.
    """
    k = pair.k
    s_op = pair.f_minus + linalg.matrix_power(pair.f_plus, k - 1) / dbox_factorial(
        k - 1, pair.q
    )
    perm = np.zeros((k, k), dtype=complex)
    for s in range(k):
        perm[(s - 1) % k, s] = 1.0
    if linalg.residual(s_op, perm) > 1e-12:
        raise AssertionError("shift combination is not the unit cyclic permutation")
    if linalg.residual(linalg.matrix_power(s_op, k), linalg.identity(k)) > 1e-12:
        raise AssertionError("cyclic shift is not of order k")
    return s_op


@dataclass
class QuonAlgebra:
    """Generic-parameter deformed oscillator on a single level tower.

    The ladder weights split the bracket between lowering and raising through
    the exponents (alpha, beta) with alpha + beta = 1; sigma is the fixed
    half-unit zero-point offset, which makes every bracket argument an
    integer.
    """

    big_q: complex
    n_max: int
    alpha: float
    beta: float
    a_minus: np.ndarray
    a_plus: np.ndarray
    number_op: np.ndarray

    @property
    def sigma(self) -> float:
        return 0.5


def quon_action(big_q: complex, n_max: int, alpha: float = 0.5, beta: float = 0.5) -> QuonAlgebra:
    if big_q == 0:
        raise ValueError("deformation parameter must be nonzero")
    if not (0.0 <= alpha <= 1.0 and 0.0 <= beta <= 1.0):
        raise ValueError(f"exponents must lie in [0, 1], got alpha={alpha}, beta={beta}")
    if abs(alpha + beta - 1.0) > 1e-12:
        raise ValueError(f"exponents must satisfy alpha + beta = 1, got {alpha + beta}")
    dim = n_max + 1
    a_minus = np.zeros((dim, dim), dtype=complex)
    a_plus = np.zeros((dim, dim), dtype=complex)
    for n in range(1, dim):
        a_minus[n - 1, n] = complex(dbox(n, big_q)) ** alpha
    for n in range(dim - 1):
        a_plus[n + 1, n] = complex(dbox(n + 1, big_q)) ** beta
    number_op = np.diag(np.arange(dim).astype(complex))
    return QuonAlgebra(
        big_q=big_q,
        n_max=n_max,
        alpha=alpha,
        beta=beta,
        a_minus=a_minus,
        a_plus=a_plus,
        number_op=number_op,
    )


def boson_limit_errors(k: int, epsilons, n_max: int = 16) -> list[float]:
    """Distance of the rescaled k-step ladder from ordinary boson amplitudes.

    With the deformation parameter approaching the k-th root of unity along
    q*(1 - eps), the k-th ladder powers rescaled by the square root of the
    bracket factorial act between levels k*n and k*(n +- 1) like an ordinary
    boson pair.  Returns one max-error per epsilon, in the given order.
    """
    q = RootOfUnity(k)
    errors = []
    for eps in epsilons:
        big_q = q.value * (1.0 - eps)
        quon = quon_action(big_q, n_max, 0.5, 0.5)
        scale = np.sqrt(dbox_factorial_generic(k, big_q))
        down = linalg.matrix_power(quon.a_minus, k) / scale
        up = linalg.matrix_power(quon.a_plus, k) / scale
        worst = 0.0
        n = 1
        while k * n <= n_max:
            worst = max(worst, abs(down[k * (n - 1), k * n] - math.sqrt(n)))
            n += 1
        n = 0
        while k * (n + 1) <= n_max:
            worst = max(worst, abs(up[k * (n + 1), k * n] - math.sqrt(n + 1)))
            n += 1
        errors.append(worst)
    return errors


def _lift_grade_operator(space: GradedFockSpace, small: np.ndarray) -> np.ndarray:
    """Repeat a k x k grade-space operator over every level block."""
    k = space.k
    big = np.zeros((space.dim, space.dim), dtype=complex)
    for n in range(space.n_max + 1):
        base = k * n
        big[base : base + k, base : base + k] = small
    return big


def _level_ladder(space: GradedFockSpace, sf: StructureFunctions) -> np.ndarray:
    """Grade-preserving lowering ladder whose squared amplitudes are the chain sums.

    For grade-uniform structure functions this is the textbook same-grade
    prefix ladder; grade-dependent functions shift the prefix along the
    raising chain so that the composite with the cyclic shift closes the
    algebra (the shift relabels which grade a level transition belongs to).
    """
    dim = space.dim
    b_minus = np.zeros((dim, dim), dtype=complex)
    for n in range(1, space.n_max + 1):
        for s in range(space.k):
            amp2 = sf.chain_prefix(s, n)
            if amp2 < -1e-12:
                raise ValueError(
                    f"negative squared amplitude {amp2:.6g} at (grade={s}, level={n})"
                )
            b_minus[space.index(n - 1, s), space.index(n, s)] = np.sqrt(max(amp2, 0.0))
    return b_minus


def realize_wk(space: GradedFockSpace, sf: StructureFunctions) -> GeneratorSet:
    """Boson + k-fermion composite realization of the ladder algebra.

    Lowering is the cyclic grade shift applied after the level ladder (the
    shift-after-lowering order ties each amplitude to its source grade, which
    is what Hermitian conjugation requires); raising is the exact adjoint.
    The result must coincide entrywise with the direct construction, and this
    is asserted on the interior.
    """
    pair = kfermion_matrices(space.k)
    shift = _lift_grade_operator(space, cyclic_shift_operator(pair))
    b_minus = _level_ladder(space, sf)
    x_minus = shift @ b_minus
    x_plus = linalg.adjoint(x_minus)
    gens = GeneratorSet(
        space=space,
        x_minus=x_minus,
        x_plus=x_plus,
        number_op=fock.number_matrix(space),
        grading_op=_lift_grade_operator(space, grading_commutator(pair)),
        projectors=fock.projectors(space),
        provenance="kfermion",
    )

    direct = build_generators(space, sf)
    interior = fock.interior_mask(space, 1)
    for name, mine, theirs in (
        ("lowering", gens.x_minus, direct.x_minus),
        ("raising", gens.x_plus, direct.x_plus),
        ("number", gens.number_op, direct.number_op),
        ("grading", gens.grading_op, direct.grading_op),
    ):
        dev = linalg.column_residual(mine, theirs, interior)
        if dev > 1e-12:
            raise AssertionError(
                f"composite {name} operator deviates from the direct construction by {dev:.3e}"
            )
    return gens


@dataclass
class GrassmannVector:
    """Fock vector with one coefficient per (level, grade-monomial) slot.

    The grade index doubles as the power of the nilpotent amplitude, so only
    powers 0..k-1 exist by construction.
    """

    space: GradedFockSpace
    coeffs: np.ndarray  # shape (n_max + 1, k), complex

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def to_fock_vector(self) -> np.ndarray:
        return self.coeffs.reshape(-1)

    def to_dict(self) -> dict:
        entries = []
        for n in range(self.space.n_max + 1):
            for s in range(self.space.k):
                z = self.coeffs[n, s]
                entries.append(
                    {"n": n, "s": s, "re": float(z.real), "im": float(z.imag)}
                )
        return {"k": self.space.k, "coeffs": entries}


def required_levels(z: complex, tail_tol: float = 1e-12) -> int:
    """Smallest truncation level keeping the bosonic tail below tail_tol of the mass."""
    zz = abs(z) ** 2
    term = 1.0
    terms = [term]
    for n in range(1, 400):
        term *= zz / n
        terms.append(term)
        if term < 1e-300:
            break
    total = sum(terms)
    tail = total
    for n, term in enumerate(terms):
        tail -= term
        if tail <= tail_tol * total:
            return n
    return len(terms)


def supercoherent_state(z: complex, space: GradedFockSpace, tail_tol: float = 1e-12) -> GrassmannVector:
    """Graded coherent state: bosonic amplitude z across levels, bracket-normalized grades.

    Coefficients are z**n / sqrt(n!) times 1 / sqrt(bracket factorial of s),
    with the principal square root used for the complex bracket factorials.
    The truncated bosonic tail must stay below tail_tol of the total mass.
    """
    needed = required_levels(z, tail_tol)
    if needed > space.n_max:
        raise ValueError(
            f"truncation too short for |z| = {abs(z):.4g}: tail mass exceeds "
            f"{tail_tol:.1e}; increase n_max to at least {needed}"
        )
    q = space.q
    coeffs = np.zeros((space.n_max + 1, space.k), dtype=complex)
    for n in range(space.n_max + 1):
        zn = z**n / math.sqrt(math.factorial(n))
        for s in range(space.k):
            coeffs[n, s] = zn / np.sqrt(dbox_factorial(s, q))
    return GrassmannVector(space=space, coeffs=coeffs)


def coherent_eigenvector_residual(state: GrassmannVector, z: complex) -> float:
    """Deviation of the state from the joint-lowering eigenvector relation.

    Applying the symmetric-weight grade lowering together with the boson
    lowering must reproduce z times the coefficient one grade-power down:
    sqrt(n+1) * sqrt(bracket(s+1)) * c[n+1, s+1] = z * c[n, s].  The same
    principal branch is used here as in the state normalization, so the
    relation is branch-neutral.
    """
    space = state.space
    q = space.q
    worst = 0.0
    for n in range(space.n_max):
        for s in range(space.k - 1):
            lhs = (
                math.sqrt(n + 1)
                * np.sqrt(dbox_q(s + 1, q))
                * state.coeffs[n + 1, s + 1]
            )
            worst = max(worst, abs(lhs - z * state.coeffs[n, s]))
    return worst


@dataclass
class EvolutionReport:
    """Per-grade comparison of the evolved state against the rotated-arguments form."""

    t: float
    k: int
    grade_residuals: list[float]
    grade0_extra_phase: complex
    grade0_extra_phase_residual: float
    unitarity_residual: float

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "k": self.k,
            "grade_residuals": self.grade_residuals,
            "grade0_extra_phase": [
                float(self.grade0_extra_phase.real),
                float(self.grade0_extra_phase.imag),
            ],
            "grade0_extra_phase_residual": self.grade0_extra_phase_residual,
            "unitarity_residual": self.unitarity_residual,
        }


def evolve_supercoherent(
    state: GrassmannVector, h: np.ndarray, t: float
) -> tuple[GrassmannVector, EvolutionReport]:
    """Phase evolution under a diagonal Hamiltonian, compared per grade.

    The claimed closed form rotates the bosonic amplitude by exp(-i(k-1)t),
    the grade amplitude by exp(+i(k-1)t), and multiplies by a global phase.
    Grades s >= 1 match it exactly; the grade-0 tower differs by the constant
    extra phase exp(+i k (k-1) t), which is reported rather than absorbed.
    """
    space = state.space
    k = space.k
    offdiag = linalg.max_abs(h - np.diag(np.diag(h)))
    if offdiag > 1e-10:
        raise ValueError(f"evolution requires a diagonal hamiltonian, off-diagonal {offdiag:.3e}")
    energies = np.diag(h).real.reshape(space.n_max + 1, k)
    evolved = GrassmannVector(
        space=space, coeffs=np.exp(-1j * energies * t) * state.coeffs
    )

    global_phase = np.exp(-0.5j * (k - 1) * (k + 2) * t)
    levels = np.arange(space.n_max + 1)
    claimed = np.empty_like(state.coeffs)
    for s in range(k):
        claimed[:, s] = (
            global_phase
            * np.exp(-1j * (k - 1) * levels * t)
            * np.exp(1j * (k - 1) * s * t)
            * state.coeffs[:, s]
        )

    grade_residuals = [
        float(np.max(np.abs(evolved.coeffs[:, s] - claimed[:, s]))) for s in range(k)
    ]
    extra = np.exp(1j * k * (k - 1) * t)
    grade0_res = float(np.max(np.abs(evolved.coeffs[:, 0] - extra * claimed[:, 0])))
    unitarity = abs(evolved.norm() - state.norm())
    report = EvolutionReport(
        t=t,
        k=k,
        grade_residuals=grade_residuals,
        grade0_extra_phase=complex(extra),
        grade0_extra_phase_residual=grade0_res,
        unitarity_residual=unitarity,
    )
    return evolved, report
