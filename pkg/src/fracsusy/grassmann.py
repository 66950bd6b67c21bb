"""Generalized Grassmann calculus and differential ladder realizations.

A nilpotent variable of order k and its derivative act on the monomial basis
as shift matrices; a bosonic coordinate and derivative act on a truncated
level tower through the usual oscillator ladder.  Composites of the two give
matrix realizations of the graded ladder algebra and of the order-2
super-oscillator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fock, linalg
from .fock import GradedFockSpace
from .qnum import RootOfUnity
from .report import VerificationReport


@dataclass
class GrassmannCalculus:
    """Multiplication by the nilpotent variable and its twisted derivative.

    theta raises the monomial power by one with unit coefficients; dtheta
    lowers it with conjugate-bracket coefficients.  Both are strictly
    nilpotent of order k.
    """

    k: int
    theta: np.ndarray
    dtheta: np.ndarray

    @property
    def q(self) -> RootOfUnity:
        return RootOfUnity(self.k)


def grassmann_calculus(k: int) -> GrassmannCalculus:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    q = RootOfUnity(k)
    theta = np.zeros((k, k), dtype=complex)
    dtheta = np.zeros((k, k), dtype=complex)
    for s in range(k - 1):
        theta[s + 1, s] = 1.0
    for s in range(1, k):
        dtheta[s - 1, s] = (1.0 - q.power(-s)) / (1.0 - q.conjugate)
    return GrassmannCalculus(k=k, theta=theta, dtheta=dtheta)


def witten_operator(gc: GrassmannCalculus) -> np.ndarray:
    """Grading involution-like commutator of derivative and variable."""
    return linalg.commutator(gc.dtheta, gc.theta)


def _conjugate_bracket_factorial(gc: GrassmannCalculus, n: int) -> complex:
    out = 1.0 + 0j
    q = gc.q
    for j in range(1, n + 1):
        out *= (1.0 - q.power(-j)) / (1.0 - q.conjugate)
    return out


def verify_grassmann_identities(gc: GrassmannCalculus, tol: float = 1e-12) -> VerificationReport:
    """Cycle identities of the calculus plus the grading structure."""
    k = gc.k
    eye = linalg.identity(k)
    report = VerificationReport(title=f"grassmann calculus identities (k={k})")

    report.add(
        "nilpotent_variable",
        linalg.max_abs(linalg.matrix_power(gc.theta, k)),
        0.0,
    )
    report.add(
        "nilpotent_derivative",
        linalg.max_abs(linalg.matrix_power(gc.dtheta, k)),
        0.0,
    )
    report.add(
        "twisted_commutator_unit",
        linalg.residual(
            linalg.q_commutator(gc.dtheta, gc.theta, gc.q.conjugate), eye
        ),
        tol,
    )
    shift = gc.dtheta + linalg.matrix_power(gc.theta, k - 1) / _conjugate_bracket_factorial(
        gc, k - 1
    )
    report.add(
        "shift_cycle_identity",
        linalg.residual(linalg.matrix_power(shift, k), eye),
        tol,
    )
    w = witten_operator(gc)
    report.add(
        "grading_cycle_identity",
        linalg.residual(linalg.matrix_power(w, k), eye),
        tol,
    )
    offdiag = linalg.max_abs(w - np.diag(np.diag(w)))
    modulus = float(np.max(np.abs(np.abs(np.diag(w)) - 1.0)))
    report.add("grading_diagonal_unit_modulus", max(offdiag, modulus), tol)
    return report


@dataclass
class BosonCalculus:
    """Coordinate and derivative on a truncated level tower.

    Built from the oscillator ladder, so the canonical commutator holds
    exactly below the truncation edge; the coordinate is Hermitian and the
    derivative anti-Hermitian.
    """

    n_max: int
    lower: np.ndarray
    raise_: np.ndarray
    x: np.ndarray
    ddx: np.ndarray


def boson_calculus(n_max: int) -> BosonCalculus:
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    dim = n_max + 1
    lower = np.zeros((dim, dim), dtype=complex)
    for n in range(1, dim):
        lower[n - 1, n] = np.sqrt(n)
    raise_ = linalg.adjoint(lower)
    x = (raise_ + lower) / np.sqrt(2.0)
    ddx = (lower - raise_) / np.sqrt(2.0)
    return BosonCalculus(n_max=n_max, lower=lower, raise_=raise_, x=x, ddx=ddx)


def _lift_level(space: GradedFockSpace, a: np.ndarray) -> np.ndarray:
    """Level-tower operator acting identically on every grade."""
    big = np.zeros((space.dim, space.dim), dtype=complex)
    for n1 in range(space.n_max + 1):
        for n2 in range(space.n_max + 1):
            if a[n1, n2] != 0:
                for s in range(space.k):
                    big[space.index(n1, s), space.index(n2, s)] = a[n1, n2]
    return big


def _lift_grade(space: GradedFockSpace, g: np.ndarray) -> np.ndarray:
    big = np.zeros((space.dim, space.dim), dtype=complex)
    for n in range(space.n_max + 1):
        base = space.k * n
        big[base : base + space.k, base : base + space.k] = g
    return big


@dataclass
class DifferentialRealization:
    """Composite-space ladder triple built from coordinate and nilpotent factors."""

    space: GradedFockSpace
    x_minus: np.ndarray
    x_plus: np.ndarray
    grading_op: np.ndarray
    form: str


def differential_realization(
    k: int, c: float, n_max: int, form: str = "first"
) -> DifferentialRealization:
    """Ladder operators on the (level, monomial-power) composite space.

    form "first" uses the bare coordinate and derivative; form "second" uses
    their canonically conjugate ladder combinations, which makes the pair
    mutually adjoint.  Only the uncoupled case c = 0 is representable: the
    coupling term requires inverting the coordinate, and a truncated
    coordinate matrix has no faithful inverse.
    """
    if c != 0.0:
        raise ValueError(
            "only c = 0 is supported: the 1/x coupling has no faithful "
            "truncated matrix representation"
        )
    if form not in ("first", "second"):
        raise ValueError(f"form must be 'first' or 'second', got {form!r}")
    gc = grassmann_calculus(k)
    bc = boson_calculus(n_max)
    space = GradedFockSpace(k, n_max)

    shift = gc.dtheta + linalg.matrix_power(gc.theta, k - 1) / _conjugate_bracket_factorial(
        gc, k - 1
    )
    shift_up = linalg.matrix_power(shift, k - 1)
    if form == "first":
        down_level, up_level = bc.ddx, bc.x
    else:
        # canonically conjugate pair collapses to the plain ladder at c = 0
        down_level = (bc.x + bc.ddx) / np.sqrt(2.0)
        up_level = (bc.x - bc.ddx) / np.sqrt(2.0)
    x_minus = _lift_level(space, down_level) @ _lift_grade(space, shift_up)
    x_plus = _lift_level(space, up_level) @ _lift_grade(space, shift)
    grading_op = _lift_grade(space, witten_operator(gc))
    return DifferentialRealization(
        space=space, x_minus=x_minus, x_plus=x_plus, grading_op=grading_op, form=form
    )


def verify_differential_realization(
    real: DifferentialRealization, guard: int = 2, tol: float = 1e-9
) -> VerificationReport:
    """Ladder commutator and grading twists of the composite realization (c = 0)."""
    space = real.space
    interior = fock.interior_mask(space, guard)
    eye = linalg.identity(space.dim)
    q = space.q
    report = VerificationReport(
        title=f"differential realization (k={space.k}, form={real.form})"
    )
    report.add(
        "ladder_commutator_uncoupled",
        linalg.column_residual(
            linalg.commutator(real.x_minus, real.x_plus), eye, interior
        ),
        tol,
    )
    report.add(
        "grading_twist_raise",
        linalg.max_abs(linalg.q_commutator(real.grading_op, real.x_plus, q.value)),
        tol,
    )
    report.add(
        "grading_twist_lower",
        linalg.max_abs(linalg.q_commutator(real.grading_op, real.x_minus, q.conjugate)),
        tol,
    )
    report.add(
        "grading_order_k",
        linalg.residual(linalg.matrix_power(real.grading_op, space.k), eye),
        1e-12,
    )
    return report


def differential_supercharges(
    k: int, n_max: int, form: str = "first"
) -> tuple[np.ndarray, np.ndarray, GradedFockSpace]:
    """Charge pair from the coordinate/derivative factors times monomial shifts.

    form "first" pairs the bare derivative with multiplication by theta and
    the bare coordinate with the theta-derivative; both charges are strictly
    nilpotent of order k, but they mix raising and lowering on the level
    tower and so do not commute with the super-oscillator Hamiltonian.
    form "second" replaces coordinate and derivative by the canonically
    conjugate ladder pair, which is what the Hamiltonian conserves.
    """
    gc = grassmann_calculus(k)
    bc = boson_calculus(n_max)
    space = GradedFockSpace(k, n_max)
    if form == "first":
        q_minus = _lift_level(space, bc.ddx) @ _lift_grade(space, gc.theta)
        q_plus = _lift_level(space, bc.x) @ _lift_grade(space, gc.dtheta)
    elif form == "second":
        q_minus = _lift_level(space, bc.lower) @ _lift_grade(space, gc.theta)
        q_plus = _lift_level(space, bc.raise_) @ _lift_grade(space, gc.dtheta)
    else:
        raise ValueError(f"form must be 'first' or 'second', got {form!r}")
    return q_minus, q_plus, space


def super_oscillator_hamiltonian(n_max: int) -> np.ndarray:
    """Order-2 super-oscillator on the composite space.

    Minus half the squared derivative plus half the squared coordinate,
    shifted down by half the grading operator; the interior spectrum is
    0, 1, 1, 2, 2, ... with a singlet ground state.
    """
    k = 2
    gc = grassmann_calculus(k)
    bc = boson_calculus(n_max)
    space = GradedFockSpace(k, n_max)
    h_level = -0.5 * (bc.ddx @ bc.ddx) + 0.5 * (bc.x @ bc.x)
    return _lift_level(space, h_level) - 0.5 * _lift_grade(space, witten_operator(gc))
