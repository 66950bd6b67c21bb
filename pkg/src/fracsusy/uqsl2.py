"""k-dimensional representations of the quantum algebra U_q(sl2) at q**k = 1.

Three representation families are distinguished by the scalars the k-th
ladder powers collapse to: both zero (nilpotent), both one (cyclic), or one
of each (semi-periodic).  The weight operator is kept with an integer
spectrum so that its exponential has exact order k; ladder coefficients are
then fixed by the bracket commutation relation, which leaves them
non-Hermitian whenever the brackets go negative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fock, linalg
from .fock import GradedFockSpace
from .qnum import RootOfUnity, box_q
from .report import VerificationReport
from .wk import GeneratorSet, StructureFunctions, uqsl2_functions

REP_TYPES = ("nilpotent", "cyclic", "semiperiodic_plus", "semiperiodic_minus")

# (lower-power scalar, raise-power scalar) per representation family
_POWER_SCALARS = {
    "nilpotent": (0.0, 0.0),
    "cyclic": (1.0, 1.0),
    "semiperiodic_plus": (0.0, 1.0),
    "semiperiodic_minus": (1.0, 0.0),
}


@dataclass
class UqRep:
    k: int
    reptype: str
    j_minus: np.ndarray
    j_plus: np.ndarray
    q_j3: np.ndarray
    q_j3_inv: np.ndarray
    j3_diag: list[int]

    @property
    def q(self) -> RootOfUnity:
        return RootOfUnity(self.k)

    @property
    def power_scalars(self) -> tuple[float, float]:
        return _POWER_SCALARS[self.reptype]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "reptype": self.reptype,
            "j3_diag": list(self.j3_diag),
            "j_minus": linalg.matrix_to_dict(self.j_minus),
            "j_plus": linalg.matrix_to_dict(self.j_plus),
            "q_j3": linalg.matrix_to_dict(self.q_j3),
            "q_j3_inv": linalg.matrix_to_dict(self.q_j3_inv),
        }


def _edge_products(k: int, q: RootOfUnity, w: float) -> list[float]:
    """Edge products e_s around the grade cycle solving the bracket recursion.

    The commutation relation pins e_{s-1} - e_s to the bracket of 2s, which
    telescopes to e_s = w - (bracket(2) + ... + bracket(2s)); the free
    constant w is the wrap-edge product.  The full-cycle bracket sum vanishes
    for k >= 3, so the recursion closes.
    """
    sigma = 0.0
    edges = []
    for s in range(k):
        if s > 0:
            sigma += box_q(2 * s, q)
        edges.append(w - sigma)
    return edges


def _assemble(k: int, reptype: str, alphas: list[float], betas: list[float]) -> UqRep:
    """Build the matrices in grade ordering: weight s at basis index s."""
    q = RootOfUnity(k)
    j_plus = np.zeros((k, k), dtype=complex)
    j_minus = np.zeros((k, k), dtype=complex)
    for s in range(k):
        j_plus[(s + 1) % k, s] = alphas[s]
        j_minus[(s - 1) % k, s] = betas[s]
    j3_diag = list(range(k))
    q_j3 = np.diag(np.array([q.power(v) for v in j3_diag], dtype=complex))
    q_j3_inv = np.diag(np.array([q.power(-v) for v in j3_diag], dtype=complex))
    return UqRep(
        k=k,
        reptype=reptype,
        j_minus=j_minus,
        j_plus=j_plus,
        q_j3=q_j3,
        q_j3_inv=q_j3_inv,
        j3_diag=j3_diag,
    )


def _classic_nilpotent(k: int) -> UqRep:
    """One-sided ladder for odd k, where the natural weights are already integers.

    Basis index m runs from the highest weight down: the raising coefficient
    at m is the bracket of m, the lowering coefficient the bracket of k-1-m.
    """
    q = RootOfUnity(k)
    j = (k - 1) // 2
    j_plus = np.zeros((k, k), dtype=complex)
    j_minus = np.zeros((k, k), dtype=complex)
    for m in range(1, k):
        j_plus[m - 1, m] = box_q(m, q)
    for m in range(k - 1):
        j_minus[m + 1, m] = box_q(k - 1 - m, q)
    j3_diag = [j - m for m in range(k)]
    q_j3 = np.diag(np.array([q.power(v) for v in j3_diag], dtype=complex))
    q_j3_inv = np.diag(np.array([q.power(-v) for v in j3_diag], dtype=complex))
    return UqRep(
        k=k,
        reptype="nilpotent",
        j_minus=j_minus,
        j_plus=j_plus,
        q_j3=q_j3,
        q_j3_inv=q_j3_inv,
        j3_diag=j3_diag,
    )


def _solve_cyclic_wrap(k: int, q: RootOfUnity) -> float:
    """Real wrap product making the full cycle of edge products multiply to one."""
    sigmas = []
    sigma = 0.0
    for s in range(k):
        if s > 0:
            sigma += box_q(2 * s, q)
        sigmas.append(sigma)
    poly = np.poly(sigmas)  # monic with roots at the sigmas
    poly[-1] -= 1.0
    roots = np.roots(poly)
    real_roots = sorted(r.real for r in roots if abs(r.imag) < 1e-9)
    if not real_roots:
        raise AssertionError(f"no real wrap product for the cyclic family at k={k}")
    # the rightmost root sits above every sigma, keeping all edges nonzero
    return real_roots[-1]


def build_rep(k: int, reptype: str) -> UqRep:
    """Construct a k-dimensional representation of the given family.

    k = 2 is rejected: a two-dimensional carrier cannot support both an
    integer weight spectrum (needed for the grading exponential to have
    order 2) and the bracket commutation relation, because the bracket loses
    its k-periodicity in the limit.
    """
    if reptype not in REP_TYPES:
        raise ValueError(f"unknown representation family {reptype!r}, expected {REP_TYPES}")
    if k < 3:
        raise ValueError(
            "no representation with an integer weight spectrum exists below k=3; "
            "the bracket recursion around the 2-cycle is inconsistent"
        )
    q = RootOfUnity(k)

    if reptype == "nilpotent" and k % 2 == 1:
        rep = _classic_nilpotent(k)
    else:
        if reptype == "cyclic":
            w = _solve_cyclic_wrap(k, q)
            edges = _edge_products(k, q, w)
            alphas = [1.0] * k  # wrap raising weight included
            betas = [0.0] * k
            for s in range(k - 1):
                betas[s + 1] = edges[s]
            betas[0] = edges[k - 1]  # wrap lowering weight carries the whole product
        elif reptype == "semiperiodic_plus":
            edges = _edge_products(k, q, 0.0)
            alphas = [1.0] * k
            betas = [0.0] * k
            for s in range(k - 1):
                betas[s + 1] = edges[s]
            betas[0] = 0.0
        elif reptype == "semiperiodic_minus":
            edges = _edge_products(k, q, 0.0)
            betas = [1.0] * k
            alphas = [0.0] * k
            for s in range(k - 1):
                alphas[s] = edges[s]
            alphas[k - 1] = 0.0
        else:  # nilpotent, even k
            edges = _edge_products(k, q, 0.0)
            alphas = [0.0] * k
            betas = [0.0] * k
            for s in range(k - 1):
                if abs(edges[s]) > 1e-12:
                    alphas[s] = 1.0
                    betas[s + 1] = edges[s]
        rep = _assemble(k, reptype, alphas, betas)

    report = verify_uq_invariants(rep)
    if not report.passed:
        raise AssertionError(
            "constructed representation violates its invariants:\n" + report.to_text()
        )
    return rep


def verify_uq_invariants(rep: UqRep, tol: float = 1e-10) -> VerificationReport:
    """All defining relations of the representation family, with residuals."""
    k = rep.k
    q = rep.q
    eye = linalg.identity(k)
    report = VerificationReport(title=f"quantum-algebra representation (k={k}, {rep.reptype})")

    report.add(
        "weight_inverse_pair",
        max(
            linalg.residual(rep.q_j3 @ rep.q_j3_inv, eye),
            linalg.residual(rep.q_j3_inv @ rep.q_j3, eye),
        ),
        1e-12,
    )
    bracket = np.diag(np.array([box_q(2 * v, q) for v in rep.j3_diag], dtype=complex))
    report.add(
        "ladder_commutator_bracket",
        linalg.residual(linalg.commutator(rep.j_plus, rep.j_minus), bracket),
        tol,
    )
    report.add(
        "weight_twist_raise",
        linalg.residual(rep.q_j3 @ rep.j_plus @ rep.q_j3_inv, q.value * rep.j_plus),
        tol,
    )
    report.add(
        "weight_twist_lower",
        linalg.residual(rep.q_j3 @ rep.j_minus @ rep.q_j3_inv, q.conjugate * rep.j_minus),
        tol,
    )
    report.add(
        "weight_exponential_order_k",
        linalg.residual(linalg.matrix_power(rep.q_j3, k), eye),
        1e-12,
    )
    a, b = rep.power_scalars
    report.add(
        "lower_power_scalar",
        linalg.residual(linalg.matrix_power(rep.j_minus, k), a * eye),
        tol,
    )
    report.add(
        "raise_power_scalar",
        linalg.residual(linalg.matrix_power(rep.j_plus, k), b * eye),
        tol,
    )
    return report


def casimir(rep: UqRep) -> np.ndarray:
    """Quadratic invariant; both orderings must agree and commute with everything.

    The denominator (q - 1/q) squared vanishes at k = 2, where the invariant
    does not exist in this form; such representations are rejected upstream.
    """
    if rep.k < 3:
        raise ValueError("the quadratic invariant is singular below k=3 (q equals 1/q)")
    report = casimir_report(rep)
    if not report.passed:
        raise AssertionError("quadratic invariant checks failed:\n" + report.to_text())
    q = rep.q
    denom = (q.value - q.conjugate) ** 2
    q2 = np.diag(np.array([q.power(2 * v) for v in rep.j3_diag], dtype=complex))
    q2inv = np.diag(np.array([q.power(-2 * v) for v in rep.j3_diag], dtype=complex))
    return rep.j_minus @ rep.j_plus + (q.value * q2 + q.conjugate * q2inv) / denom


def casimir_report(rep: UqRep, tol: float = 1e-10) -> VerificationReport:
    if rep.k < 3:
        raise ValueError("the quadratic invariant is singular below k=3")
    q = rep.q
    denom = (q.value - q.conjugate) ** 2
    q2 = np.diag(np.array([q.power(2 * v) for v in rep.j3_diag], dtype=complex))
    q2inv = np.diag(np.array([q.power(-2 * v) for v in rep.j3_diag], dtype=complex))
    first = rep.j_minus @ rep.j_plus + (q.value * q2 + q.conjugate * q2inv) / denom
    second = rep.j_plus @ rep.j_minus + (q.conjugate * q2 + q.value * q2inv) / denom
    report = VerificationReport(title=f"quadratic invariant (k={rep.k}, {rep.reptype})")
    report.add("invariant_forms_agree", linalg.residual(first, second), tol)
    report.add(
        "invariant_commutes_raise",
        linalg.max_abs(linalg.commutator(first, rep.j_plus)),
        tol,
    )
    report.add(
        "invariant_commutes_lower",
        linalg.max_abs(linalg.commutator(first, rep.j_minus)),
        tol,
    )
    report.add(
        "invariant_commutes_weight",
        linalg.max_abs(linalg.commutator(first, rep.q_j3)),
        tol,
    )
    return report


def _grade_permutation(rep: UqRep) -> list[int]:
    """Carrier index holding each grade; the weights must cover all residues."""
    k = rep.k
    by_grade = [-1] * k
    for i, v in enumerate(rep.j3_diag):
        g = v % k
        if by_grade[g] != -1:
            raise AssertionError("weight spectrum does not cover every grade once")
        by_grade[g] = i
    return by_grade


def to_wk(rep: UqRep, n_max: int) -> tuple[GeneratorSet, StructureFunctions]:
    """Generators of the ladder algebra carried by the representation.

    The nilpotent family embeds into the graded Fock tower by acting on the
    grade coordinate of every level identically; the number operator is the
    weight shifted to be nonnegative, so it counts within the grade cycle
    rather than levels.  Invertible-ladder families cannot satisfy an
    additive number relation around their cycle, so they come back on the
    bare k-dimensional carrier (single-level space) for inspection and
    export, without any Fock embedding.
    """
    k = rep.k
    sf = uqsl2_functions(k)
    perm = _grade_permutation(rep)
    offset = -min(rep.j3_diag)

    def to_grade_order(small: np.ndarray) -> np.ndarray:
        out = np.zeros_like(small)
        for g1 in range(k):
            for g2 in range(k):
                out[g1, g2] = small[perm[g1], perm[g2]]
        return out

    number_small = np.diag(
        np.array([rep.j3_diag[perm[g]] + offset for g in range(k)], dtype=complex)
    )

    if rep.reptype == "nilpotent":
        space = GradedFockSpace(k, n_max)
    else:
        space = GradedFockSpace(k, 0)

    def lift(small: np.ndarray) -> np.ndarray:
        big = np.zeros((space.dim, space.dim), dtype=complex)
        for n in range(space.n_max + 1):
            base = k * n
            big[base : base + k, base : base + k] = small
        return big

    gens = GeneratorSet(
        space=space,
        x_minus=lift(to_grade_order(rep.j_minus)),
        x_plus=lift(to_grade_order(rep.j_plus)),
        number_op=lift(number_small),
        grading_op=fock.grading_matrix(space),
        projectors=fock.projectors(space),
        provenance="uqsl2",
    )
    return gens, sf
