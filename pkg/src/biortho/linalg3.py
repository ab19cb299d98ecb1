"""Closed-form spectra of symmetric 3x3 matrices.

The trigonometric (Cardano) solution of the characteristic polynomial of the
deviatoric part loses roughly half the digits when two eigenvalues
coincide, which happens on every homogeneous model. The result is
therefore polished in closed form as well: the best separated root gets an
eigenvector from a cross product of two rows of ``B - lam I``, its Rayleigh
quotient replaces it, and the other two roots come from the exact 2x2
restriction to the orthogonal complement.
"""

from __future__ import annotations

import math

import numpy as np

# Spread below this (relative to the matrix scale) is treated as a triple root.
_TRIPLE_TOL = 1e-14


def _cross_eigenvector(m: np.ndarray) -> np.ndarray:
    """Null vector of a rank-2 symmetric 3x3 matrix, from its rows."""
    c = (np.cross(m[0], m[1]), np.cross(m[0], m[2]), np.cross(m[1], m[2]))
    norms = [float(np.dot(x, x)) for x in c]
    k = int(np.argmax(norms))
    return c[k] / math.sqrt(norms[k])


def _complement_basis(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    e = np.zeros(3)
    e[int(np.argmin(np.abs(v)))] = 1.0
    x = np.cross(v, e)
    x /= np.linalg.norm(x)
    return x, np.cross(v, x)


def cardano_eigenvalues(a: np.ndarray) -> tuple[float, float, float]:
    """Raw trigonometric solution, ascending. Kept separate for testing."""
    a = np.asarray(a, dtype=float)
    q = float(np.trace(a)) / 3.0
    b = a - q * np.eye(3)
    p2 = float(np.sum(b * b)) / 6.0
    scale = max(1.0, float(np.max(np.abs(a))))
    if p2 <= (_TRIPLE_TOL * scale) ** 2:
        return q, q, q
    p = math.sqrt(p2)
    r = float(np.linalg.det(b / p)) / 2.0
    r = min(1.0, max(-1.0, r))
    phi = math.acos(r) / 3.0
    hi = q + 2.0 * p * math.cos(phi)
    lo = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    mid = 3.0 * q - hi - lo
    return tuple(sorted((lo, mid, hi)))  # type: ignore[return-value]


def sym3_eigenvalues(a: np.ndarray) -> tuple[float, float, float]:
    """Eigenvalues of a symmetric 3x3 matrix in ascending order."""
    a = np.asarray(a, dtype=float)
    a = 0.5 * (a + a.T)
    lo, mid, hi = cardano_eigenvalues(a)
    if lo == hi:
        return lo, mid, hi
    # polish the root that is farthest from its neighbours
    iso = hi if (hi - mid) >= (mid - lo) else lo
    v = _cross_eigenvector(a - iso * np.eye(3))
    iso = float(v @ a @ v)
    x, y = _complement_basis(v)
    axx, ayy, axy = float(x @ a @ x), float(y @ a @ y), float(x @ a @ y)
    centre = 0.5 * (axx + ayy)
    radius = math.hypot(0.5 * (axx - ayy), axy)
    vals = sorted((iso, centre - radius, centre + radius))
    return vals[0], vals[1], vals[2]


def sym3_smallest_eigenvector(a: np.ndarray) -> np.ndarray:
    """Unit eigenvector for the smallest eigenvalue (any one, if repeated)."""
    a = 0.5 * (np.asarray(a, dtype=float) + np.asarray(a, dtype=float).T)
    lo, mid, hi = sym3_eigenvalues(a)
    if lo == hi:
        return np.array([1.0, 0.0, 0.0])
    if mid - lo > 1e-9 * max(1.0, hi - lo):
        return _cross_eigenvector(a - lo * np.eye(3))
    # lo is (nearly) double: anything orthogonal to the top eigenvector works
    w = _cross_eigenvector(a - hi * np.eye(3))
    return _complement_basis(w)[0]
