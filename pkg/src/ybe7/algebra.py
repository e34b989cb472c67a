"""Dense complex matrix helpers used by the Yang-Baxter residual engine.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  The helpers here
only add shape checks and the two tensor embeddings of a 4x4 matrix into the
8x8 space of three two-state lines.
"""

from __future__ import annotations

import numpy as np

E2 = np.eye(2, dtype=complex)


class DimensionError(ValueError):
    pass


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a finite 2-D complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def _check_r(r) -> np.ndarray:
    r = as_matrix(r)
    if r.shape != (4, 4):
        raise DimensionError(f"R-matrix must be 4x4, got {r.shape}")
    return r


def embed12(r) -> np.ndarray:
    """R acting on lines 1 and 2 of three: ``R (x) E``."""
    return np.kron(_check_r(r), E2)


def embed23(r) -> np.ndarray:
    """R acting on lines 2 and 3 of three: ``E (x) R``."""
    return np.kron(E2, _check_r(r))


def max_abs(m) -> float:
    a = np.asarray(m, dtype=complex)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a)))
