"""Spin-chain couplings and small open-chain Hamiltonians."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .algebra import E2, kron

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)

MAX_SITES = 12


@dataclass(frozen=True)
class Couplings:
    Jx: complex
    Jy: complex
    Jz: complex
    h: complex

    def __post_init__(self):
        for name in ("Jx", "Jy", "Jz", "h"):
            v = complex(getattr(self, name))
            if not cmath.isfinite(v):
                raise ValueError(f"coupling {name} is not finite")
            object.__setattr__(self, name, v)

    def as_tuple(self) -> tuple:
        return (self.Jx, self.Jy, self.Jz, self.h)


def _require_spectral(c) -> None:
    if getattr(c, "mode", "spectral") != "spectral":
        raise ValueError(f"couplings need spectral-mode coefficients, got {c.mode!r}")


def couplings(c) -> Couplings:
    _require_spectral(c)
    m1, m2, m3, m4, m5, m6, m7 = c.as_tuple()
    return Couplings(
        (m5 + m6 + m7) / 4,
        (m5 + m6 - m7) / 4,
        (m1 - m3 + m4 - m2) / 4,
        (m1 - m3 - m4 + m2) / 4,
    )


def site_operator(op: np.ndarray, j: int, n: int) -> np.ndarray:
    """``op`` acting on site ``j`` (0-based) of an ``n``-site chain."""
    return reduce(kron, [op if i == j else E2 for i in range(n)])


def chain_hamiltonian(cpl: Couplings, n_sites: int, include_field: bool = True) -> np.ndarray:
    """Open-boundary XYZ chain with optional field term ``h/2 (sz_j + sz_{j+1})`` per bond."""
    n = int(n_sites)
    if not 2 <= n <= MAX_SITES:
        raise ValueError(f"chain length must be between 2 and {MAX_SITES}, got {n}")
    dim = 2 ** n
    H = np.zeros((dim, dim), dtype=complex)
    sx = [site_operator(SX, j, n) for j in range(n)]
    sy = [site_operator(SY, j, n) for j in range(n)]
    sz = [site_operator(SZ, j, n) for j in range(n)]
    for j in range(n - 1):
        H += cpl.Jx * sx[j] @ sx[j + 1] + cpl.Jy * sy[j] @ sy[j + 1] + cpl.Jz * sz[j] @ sz[j + 1]
        if include_field:
            H += cpl.h * 0.5 * (sz[j] + sz[j + 1])
    return H


def spectrum(H: np.ndarray) -> list:
    """Eigenvalues sorted by (re, im)."""
    vals = np.linalg.eigvals(np.asarray(H, dtype=complex))
    return sorted((complex(v) for v in vals), key=lambda z: (z.real, z.imag))


def check_coefficient_symmetry(c, rel_tol: float = 1e-8) -> bool:
    _require_spectral(c)
    m = c.as_tuple()
    s = max(1.0, max(abs(x) for x in m) ** 2)
    m1, m4, m5, m6 = m[0], m[3], m[4], m[5]
    return abs(m1 * m1 - m4 * m4) <= rel_tol * s and abs(m5 * m5 - m6 * m6) <= rel_tol * s
