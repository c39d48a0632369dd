"""Dense complex 4x4 matrix helpers and the two numerical workhorses.

Everything here is deliberately self-contained: ``expm`` (scaling and
squaring with a truncated Taylor series) and ``eigvals_hermitian`` (cyclic
Jacobi sweeps) are the ground-truth routes the rest of the package is
checked against, so they must not share code with the closed forms they
arbitrate.  Matrices are plain numpy arrays of shape (4, 4); the dimension
is fixed because the physics upstream never needs anything else.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceError, InvalidInputError

DIM = 4

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
ID2 = np.eye(2, dtype=complex)
ID4 = np.eye(4, dtype=complex)

# Default accuracy target for the iterative routines.
DEFAULT_TOL = 1e-12

# Cap on Jacobi sweeps; quadratic convergence makes hitting it pathological.
JACOBI_MAX_SWEEPS = 64


def as_matrix4(m, where: str = "matrix") -> np.ndarray:
    """Coerce input to a complex (4, 4) array, rejecting bad shapes and NaNs.

    Args:
        m: array-like expected to hold a 4x4 complex matrix.
        where: label used in error messages.

    Returns:
        A fresh complex128 numpy array of shape (4, 4).
    """
    a = np.array(m, dtype=complex)
    if a.shape != (DIM, DIM):
        raise InvalidInputError(f"{where}: expected shape (4, 4), got {a.shape}")
    if not np.all(np.isfinite(a.view(float))):
        raise InvalidInputError(f"{where}: entries must be finite")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def max_abs(m: np.ndarray) -> float:
    """Max-norm: largest entrywise modulus."""
    return float(np.max(np.abs(m)))


def frobenius(m: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(m))


def kron2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two single-qubit operators."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def expm(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a Taylor core.

    The input is scaled by 2**s until its Frobenius norm is at most 1/2,
    the series is summed to enough terms that the truncation remainder is
    below tol / 2**s (so the squaring stage cannot amplify it past tol for
    the norm-preserving inputs this package cares about), and the result
    is squared back up.

    Args:
        m: 4x4 complex matrix.
        tol: truncation target, must be positive.

    Returns:
        exp(m) as a 4x4 complex array.
    """
    a = as_matrix4(m, "expm")
    if not (tol > 0):
        raise InvalidInputError(f"expm: tol must be positive, got {tol}")

    norm = frobenius(a)
    s = 0
    if norm > 0.5:
        s = int(math.ceil(math.log2(norm / 0.5)))
    scaled = a / (2.0**s)
    theta = norm / (2.0**s)

    # Remainder of the truncated series: theta^(n+1) / ((n+1)! (1 - theta)).
    target = tol / (2.0**s)
    n_terms = 1
    remainder = theta**2 / (2.0 * (1.0 - theta))
    while remainder > target and n_terms < 40:
        n_terms += 1
        remainder *= theta / (n_terms + 1)

    result = ID4.copy()
    for k in range(n_terms, 0, -1):
        result = ID4 + (scaled @ result) / k
    for _ in range(s):
        result = result @ result
    return result


def _off_diagonal_mass(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def eigvals_hermitian(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Eigenvalues of a Hermitian 4x4 matrix via cyclic Jacobi rotations.

    Each rotation annihilates one off-diagonal pivot; sweeps repeat until
    the off-diagonal Frobenius mass drops to tol.  Exceeding the sweep cap
    raises rather than returning a half-converged answer.

    Args:
        m: Hermitian 4x4 matrix (Hermitian within tol in max-norm).
        tol: convergence target and Hermiticity tolerance, positive.

    Returns:
        The four eigenvalues, ascending, as a float array.
    """
    a = as_matrix4(m, "eigvals_hermitian")
    if not (tol > 0):
        raise InvalidInputError(f"eigvals_hermitian: tol must be positive, got {tol}")
    if max_abs(a - dagger(a)) > tol:
        raise InvalidInputError("eigvals_hermitian: matrix is not Hermitian within tol")
    a = (a + dagger(a)) / 2.0

    for _ in range(JACOBI_MAX_SWEEPS):
        if _off_diagonal_mass(a) <= tol:
            return np.sort(np.diag(a).real)
        for p in range(DIM - 1):
            for q in range(p + 1, DIM):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if tau >= 0:
                    t = 1.0 / (tau + math.hypot(1.0, tau))
                else:
                    t = -1.0 / (-tau + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # Right-multiply by the rotation, then left-multiply by its
                # adjoint; only rows/columns p and q move.
                col_p = c * a[:, p] - s * np.conj(phase) * a[:, q]
                col_q = s * phase * a[:, p] + c * a[:, q]
                a[:, p], a[:, q] = col_p, col_q
                row_p = c * a[p, :] - s * phase * a[q, :]
                row_q = s * np.conj(phase) * a[p, :] + c * a[q, :]
                a[p, :], a[q, :] = row_p, row_q
        a = (a + dagger(a)) / 2.0

    if _off_diagonal_mass(a) <= tol:
        return np.sort(np.diag(a).real)
    raise ConvergenceError(
        f"eigvals_hermitian: no convergence in {JACOBI_MAX_SWEEPS} sweeps"
    )


def trace_product(a, b) -> complex:
    """Tr(a @ b) accumulated directly, without forming the product matrix."""
    am = as_matrix4(a, "trace_product")
    bm = as_matrix4(b, "trace_product")
    return complex(np.einsum("ij,ji->", am, bm))
