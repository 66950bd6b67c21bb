"""Truncated Z_k-graded Fock space: indexing, grading operator, projectors.

Basis vectors are labelled m = k*n + s with level n in [0, n_max] and grade
s in [0, k).  Every grade carries the same number of levels, so intertwining
relations between projectors and shift operators hold exactly away from the
truncation edge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import residual
from .qnum import RootOfUnity


@dataclass(frozen=True)
class GradedFockSpace:
    k: int
    n_max: int

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 2:
            raise ValueError(f"k must be an integer >= 2, got {self.k!r}")
        # n_max = 0 is the degenerate single-level space used to carry bare
        # k-dimensional representations; regular towers use n_max >= 1
        if not isinstance(self.n_max, int) or self.n_max < 0:
            raise ValueError(f"n_max must be an integer >= 0, got {self.n_max!r}")

    @property
    def dim(self) -> int:
        return self.k * (self.n_max + 1)

    @property
    def q(self) -> RootOfUnity:
        return RootOfUnity(self.k)

    def index(self, n: int, s: int) -> int:
        if not 0 <= s < self.k:
            raise ValueError(f"grade {s} out of range [0, {self.k})")
        if not 0 <= n <= self.n_max:
            raise ValueError(f"level {n} out of range [0, {self.n_max}]")
        return self.k * n + s

    def decompose(self, m: int) -> tuple[int, int]:
        """Inverse of index: m -> (n, s) by Euclidean division."""
        if not 0 <= m < self.dim:
            raise ValueError(f"basis index {m} out of range [0, {self.dim})")
        return m // self.k, m % self.k

    def levels(self) -> np.ndarray:
        """Level of every basis index, in basis order."""
        return np.arange(self.dim) // self.k

    def grades(self) -> np.ndarray:
        """Grade of every basis index, in basis order."""
        return np.arange(self.dim) % self.k

    def label(self, m: int) -> str:
        n, s = self.decompose(m)
        return f"|{m}⟩ (n={n}, s={s})"


def grading_matrix(space: GradedFockSpace) -> np.ndarray:
    """Diagonal unitary with eigenvalue q**s on every grade-s basis vector."""
    q = space.q
    diag = np.array([q.power(s) for s in space.grades()], dtype=complex)
    return np.diag(diag)


def number_matrix(space: GradedFockSpace) -> np.ndarray:
    return np.diag(space.levels().astype(complex))


def projector_matrix(s: int, space: GradedFockSpace) -> np.ndarray:
    """Projector onto grade s (index taken mod k, so s = -1 wraps to k - 1).

    Built by direct grade selection; cross-checked on the fly against the
    discrete Fourier polynomial (1/k) * sum_t q**(-s*t) K**t in the grading
    operator, which must agree to 1e-12.
    """
    s = s % space.k
    direct = np.diag((space.grades() == s).astype(complex))

    q = space.q
    kmat = grading_matrix(space)
    acc = np.zeros((space.dim, space.dim), dtype=complex)
    power = np.eye(space.dim, dtype=complex)
    for t in range(space.k):
        acc += q.power(-s * t) * power
        power = power @ kmat
    fourier = acc / space.k

    drift = residual(direct, fourier)
    if drift > 1e-12:
        raise AssertionError(
            f"grade-{s} projector self-test failed: Fourier form deviates by {drift:.3e}"
        )
    return direct


def projectors(space: GradedFockSpace) -> list[np.ndarray]:
    return [projector_matrix(s, space) for s in range(space.k)]


def interior_mask(space: GradedFockSpace, guard: int) -> np.ndarray:
    """Basis indices with level n <= n_max - guard.

    Identities that involve up to g raising applications are asserted only on
    these columns; the guard band absorbs the truncation edge.
    """
    if not 0 <= guard <= space.n_max:
        raise ValueError(f"guard {guard} out of range [0, {space.n_max}]")
    return np.nonzero(space.levels() <= space.n_max - guard)[0]
