"""Dense complex operator algebra on numpy arrays.

Matrices are plain ``numpy.ndarray`` values of dtype complex128; everything
here is a pure function of its inputs.  Tolerance comparisons are
absolute-plus-relative: |x - y| <= atol + rtol * max(|x|, |y|).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ATOL = 1e-10
RTOL = 1e-10


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def adjoint(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def q_commutator(a: np.ndarray, b: np.ndarray, lam: complex) -> np.ndarray:
    """A @ B - lam * B @ A; lam = 1 is the commutator, lam = -1 the anti-commutator."""
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b - lam * (b @ a)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return q_commutator(a, b, 1.0)


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return q_commutator(a, b, -1.0)


def matrix_power(a: np.ndarray, m: int) -> np.ndarray:
    if m < 0:
        raise ValueError(f"exponent must be >= 0, got {m}")
    return np.linalg.matrix_power(a, m)


def max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


def residual(a: np.ndarray, b: np.ndarray) -> float:
    """Max entry modulus of A - B."""
    return max_abs(np.asarray(a) - np.asarray(b))


def column_residual(a: np.ndarray, b: np.ndarray, cols: np.ndarray) -> float:
    """Max entry modulus of (A - B) restricted to the given columns."""
    d = np.asarray(a) - np.asarray(b)
    return max_abs(d[:, cols])


def close(x: complex, y: complex, atol: float = ATOL, rtol: float = RTOL) -> bool:
    return abs(x - y) <= atol + rtol * max(abs(x), abs(y))


def allclose(a: np.ndarray, b: np.ndarray, atol: float = ATOL, rtol: float = RTOL) -> bool:
    a = np.asarray(a)
    b = np.asarray(b)
    return bool(np.all(np.abs(a - b) <= atol + rtol * np.maximum(np.abs(a), np.abs(b))))


@dataclass
class EigenSystem:
    """Ascending eigenvalues and matching orthonormal column eigenvectors."""

    values: np.ndarray
    vectors: np.ndarray


def hermitian_eigensystem(a: np.ndarray, herm_tol: float = 1e-10) -> EigenSystem:
    """Diagonalize a Hermitian matrix; rejects non-Hermitian input.

    Backed by LAPACK via ``numpy.linalg.eigh``; eigenvalues come out
    ascending with orthonormal eigenvector columns.
    """
    asym = max_abs(a - adjoint(a))
    if asym > herm_tol:
        raise ValueError(
            f"matrix is not Hermitian: max |A - A^dagger| entry = {asym:.3e} "
            f"exceeds tolerance {herm_tol:.1e}"
        )
    values, vectors = np.linalg.eigh(a)
    return EigenSystem(values=values, vectors=vectors)


def matrix_to_dict(a: np.ndarray) -> dict:
    """JSON-ready form {"dim": D, "entries": [[re, im], ...]} in row-major order.

    Python float serialization round-trips exactly, so re-importing an
    exported matrix reproduces it bit for bit.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    entries = [[float(z.real), float(z.imag)] for z in a.ravel()]
    return {"dim": int(a.shape[0]), "entries": entries}


def matrix_from_dict(d: dict) -> np.ndarray:
    dim = int(d["dim"])
    entries = d["entries"]
    if len(entries) != dim * dim:
        raise ValueError(f"expected {dim * dim} entries, got {len(entries)}")
    flat = np.array([complex(re, im) for re, im in entries], dtype=complex)
    return flat.reshape(dim, dim)
