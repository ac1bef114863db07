"""Dense complex-matrix kernel.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. This is
the only module that calls into LAPACK.
"""
import numpy as np

HERMITIAN_TOL = 1e-10
MAX_DIM = 4096


class NumericError(ValueError):
    """Raised for malformed matrices (shape, finiteness, Hermiticity)."""


def as_matrix(m, name="matrix"):
    """Return ``m`` as a finite 2-D complex128 array, or raise NumericError."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise NumericError(f"{name} must be 2-D, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NumericError(f"{name} has non-finite entries")
    return a


def kron(a, b):
    """Kronecker product; entry ``(i1*rb + i2, j1*cb + j2) = a[i1,j1] * b[i2,j2]``."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows > MAX_DIM**2 or cols > MAX_DIM**2:
        raise NumericError(f"kron result {rows}x{cols} is too large")
    return np.kron(a, b)


def matmul(a, b):
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape[1] != b.shape[0]:
        raise NumericError(f"shape mismatch: {a.shape} @ {b.shape}")
    return a @ b


def hermiticity_error(m):
    """Largest ``|m[i,j] - conj(m[j,i])|``."""
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m - m.conj().T)))


def hermitian_eigenvalues(m, tol=HERMITIAN_TOL):
    """Real eigenvalues of a Hermitian matrix in non-decreasing order.

    The input is checked against ``tol`` and then symmetrized as
    ``(m + m^dagger) / 2`` before the solve.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise NumericError(f"matrix must be square, got {m.shape}")
    err = hermiticity_error(m)
    if err > tol:
        raise NumericError(f"matrix is not Hermitian (max deviation {err:.3g} > {tol:g})")
    h = 0.5 * (m + m.conj().T)
    return np.linalg.eigvalsh(h)


def trace_norm(m, tol=HERMITIAN_TOL):
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(hermitian_eigenvalues(m, tol))))
