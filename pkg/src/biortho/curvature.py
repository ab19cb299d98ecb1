"""Algebraic curvature tensors in dimension four.

A curvature tensor is stored as a symmetric operator on 2-forms in the
ordered orthonormal basis ``e12, e13, e14, e23, e24, e34`` with
``R_ijkl = <R(e_i ^ e_j), e_k ^ e_l>``. The round unit sphere is the
identity and has scalar curvature 12; sectional curvature of an orthonormal
pair is ``<R(u ^ v), u ^ v>``.

Self-dual and anti-self-dual forms use the bases

    w1± = (e12 ± e34)/√2,  w2± = (e13 ∓ e24)/√2,  w3± = (e14 ± e23)/√2

for the positive orientation ``e1 ^ e2 ^ e3 ^ e4``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

import numpy as np

from .errors import InvalidPlane, SymmetryViolation
from .linalg3 import sym3_eigenvalues

PAIRS: tuple[tuple[int, int], ...] = tuple(combinations(range(4), 2))
PAIR_INDEX = {p: a for a, p in enumerate(PAIRS)}

# Entry tolerance for values built in double precision.
EXACT_TOL = 1e-12
# Tolerance for user-supplied component tables.
INPUT_TOL = 1e-9

_R2 = 1.0 / math.sqrt(2.0)


def _hodge() -> np.ndarray:
    star = np.zeros((6, 6))
    star[5, 0] = star[0, 5] = 1.0  # e12 <-> e34
    star[4, 1] = star[1, 4] = -1.0  # e13 <-> -e24
    star[3, 2] = star[2, 3] = 1.0  # e14 <-> e23
    return star


_STAR = _hodge()
_STAR.setflags(write=False)

# columns: w1+, w2+, w3+, w1-, w2-, w3-
_SD_BASIS = _R2 * np.array(
    [
        [1, 0, 0, 1, 0, 0],
        [0, 1, 0, 0, 1, 0],
        [0, 0, 1, 0, 0, 1],
        [0, 0, 1, 0, 0, -1],
        [0, -1, 0, 0, 1, 0],
        [1, 0, 0, -1, 0, 0],
    ],
    dtype=float,
)
_SD_BASIS.setflags(write=False)


def hodge_star() -> np.ndarray:
    """The Hodge star on 2-forms as a 6x6 involution."""
    return _STAR.copy()


def lambda_projectors() -> tuple[np.ndarray, np.ndarray]:
    """Orthogonal projectors onto self-dual and anti-self-dual 2-forms."""
    eye = np.eye(6)
    return 0.5 * (eye + _STAR), 0.5 * (eye - _STAR)


def self_dual_basis() -> np.ndarray:
    """6x6 orthogonal matrix whose columns are w1+, w2+, w3+, w1-, w2-, w3-."""
    return _SD_BASIS.copy()


def wedge(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Components of ``u ^ v`` in the ``e_ij`` basis; works on stacked rows."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.stack([u[..., i] * v[..., j] - u[..., j] * v[..., i] for i, j in PAIRS], axis=-1)


def _scale(a: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(a))))


def bianchi_residual(op: np.ndarray) -> float:
    """``R1234 + R1342 + R1423``; equals ``trace(R *) / 2`` for symmetric R."""
    op = np.asarray(op, dtype=float)
    return float(op[0, 5] - op[1, 4] + op[2, 3])


@dataclass(frozen=True, eq=False)
class Plane:
    """Oriented 2-plane in R^4 spanned by an orthonormal pair."""

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self) -> None:
        u = np.array(self.u, dtype=float).reshape(4)
        v = np.array(self.v, dtype=float).reshape(4)
        if abs(u @ u - 1.0) > EXACT_TOL or abs(v @ v - 1.0) > EXACT_TOL:
            raise InvalidPlane("plane vectors must be unit length")
        if abs(u @ v) > EXACT_TOL:
            raise InvalidPlane("plane vectors must be orthogonal")
        u.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @classmethod
    def from_vectors(cls, a, b, tol: float = 1e-10) -> "Plane":
        """Gram-Schmidt on two spanning vectors."""
        from .errors import DegeneratePlane

        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        na = np.linalg.norm(a)
        if na < tol:
            raise DegeneratePlane("first vector vanishes")
        u = a / na
        b = b - (b @ u) * u
        nb = np.linalg.norm(b)
        if nb < tol:
            raise DegeneratePlane("vectors are linearly dependent")
        return cls(u, b / nb)

    @classmethod
    def coordinate(cls, i: int, j: int) -> "Plane":
        """The plane ``span(e_i, e_j)`` with 1-based indices."""
        eye = np.eye(4)
        return cls(eye[i - 1], eye[j - 1])

    @property
    def bivector(self) -> np.ndarray:
        return wedge(self.u, self.v)

    @property
    def projector(self) -> np.ndarray:
        return np.outer(self.u, self.u) + np.outer(self.v, self.v)


@dataclass(frozen=True, eq=False)
class CurvatureTensor:
    """Symmetric operator on 2-forms satisfying the first Bianchi identity."""

    operator: np.ndarray

    def __post_init__(self) -> None:
        op = np.array(self.operator, dtype=float)
        if op.shape != (6, 6):
            raise SymmetryViolation(f"operator must be 6x6, got {op.shape}")
        tol = EXACT_TOL * _scale(op)
        if np.max(np.abs(op - op.T)) >= tol:
            raise SymmetryViolation("curvature operator is not symmetric")
        if abs(bianchi_residual(op)) >= tol:
            raise SymmetryViolation("first Bianchi identity fails")
        op.setflags(write=False)
        object.__setattr__(self, "operator", op)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CurvatureTensor):
            return NotImplemented
        return bool(np.array_equal(self.operator, other.operator))

    def __hash__(self) -> int:
        return hash(self.operator.tobytes())

    def __add__(self, other: "CurvatureTensor") -> "CurvatureTensor":
        return CurvatureTensor(self.operator + other.operator)

    def scaled(self, factor: float) -> "CurvatureTensor":
        return CurvatureTensor(factor * self.operator)

    @property
    def scalar(self) -> float:
        return 2.0 * float(np.trace(self.operator))

    def tensor4(self) -> np.ndarray:
        """Full ``R_ijkl`` array (0-based indices)."""
        r = np.zeros((4, 4, 4, 4))
        for a, (i, j) in enumerate(PAIRS):
            for b, (k, l) in enumerate(PAIRS):
                val = self.operator[a, b]
                r[i, j, k, l] = val
                r[j, i, k, l] = -val
                r[i, j, l, k] = -val
                r[j, i, l, k] = val
        return r

    def ricci(self) -> np.ndarray:
        """``Ric_ij = sum_k R_ikjk``."""
        return np.einsum("ikjk->ij", self.tensor4())


def _project(op: np.ndarray) -> np.ndarray:
    """Nearest symmetric operator satisfying Bianchi (Frobenius metric)."""
    op = 0.5 * (op + op.T)
    return op - (np.sum(op * _STAR) / 6.0) * _STAR


def curvature_from_components(table) -> CurvatureTensor:
    """Build a curvature tensor from ``R_ijkl`` values.

    ``table`` is either a full 4x4x4x4 array (0-based) or a mapping from
    1-based index quadruples ``(i, j, k, l)`` to values. Quadruples with
    ``i > j`` or ``k > l`` are folded in with the matching sign; an entry and
    its pair-swapped partner may both be given but must agree. Missing
    entries are zero.
    """
    op = np.zeros((6, 6))
    if isinstance(table, Mapping):
        seen = np.zeros((6, 6), dtype=bool)
        for key, value in table.items():
            i, j, k, l = (int(x) - 1 for x in key)
            if i == j or k == l:
                if abs(value) > INPUT_TOL:
                    raise SymmetryViolation(f"R{key} must vanish (repeated index)")
                continue
            sign = 1.0
            if i > j:
                i, j, sign = j, i, -sign
            if k > l:
                k, l, sign = l, k, -sign
            a, b = PAIR_INDEX[(i, j)], PAIR_INDEX[(k, l)]
            val = sign * float(value)
            for x, y in ((a, b), (b, a)):
                if seen[x, y] and abs(op[x, y] - val) > INPUT_TOL:
                    raise SymmetryViolation(f"pair symmetry fails at R{key}")
                op[x, y] = val
                seen[x, y] = True
    else:
        r = np.asarray(table, dtype=float)
        if r.shape != (4, 4, 4, 4):
            raise SymmetryViolation(f"component array must be 4x4x4x4, got {r.shape}")
        tol = INPUT_TOL * _scale(r)
        if (
            np.max(np.abs(r + r.transpose(1, 0, 2, 3))) > tol
            or np.max(np.abs(r + r.transpose(0, 1, 3, 2))) > tol
        ):
            raise SymmetryViolation("components are not antisymmetric in each pair")
        if np.max(np.abs(r - r.transpose(2, 3, 0, 1))) > tol:
            raise SymmetryViolation("pair symmetry fails")
        for a, (i, j) in enumerate(PAIRS):
            for b, (k, l) in enumerate(PAIRS):
                op[a, b] = r[i, j, k, l]
    tol = INPUT_TOL * _scale(op)
    if np.max(np.abs(op - op.T)) > tol:
        raise SymmetryViolation("pair symmetry fails")
    if abs(bianchi_residual(op)) > tol:
        raise SymmetryViolation(f"first Bianchi identity fails (residual {bianchi_residual(op):.3e})")
    return CurvatureTensor(_project(op))


def sectional(ct: CurvatureTensor, plane: Plane) -> float:
    xi = plane.bivector
    return float(xi @ ct.operator @ xi)


# --- Singer-Thorpe decomposition ------------------------------------------


def kulkarni_nomizu_identity(h: np.ndarray) -> np.ndarray:
    """Operator of ``(h ⊙ g) / 2`` for a symmetric 4x4 ``h``."""
    d = np.eye(4)
    op = np.zeros((6, 6))
    for a, (i, j) in enumerate(PAIRS):
        for b, (k, l) in enumerate(PAIRS):
            op[a, b] = 0.5 * (h[i, k] * d[j, l] + h[j, l] * d[i, k] - h[i, l] * d[j, k] - h[j, k] * d[i, l])
    return op


def _traceless_basis() -> list[np.ndarray]:
    out = []
    for i, j in PAIRS:
        e = np.zeros((4, 4))
        e[i, j] = e[j, i] = _R2
        out.append(e)
    diag = np.array([[1, -1, 0, 0], [1, 1, -2, 0], [1, 1, 1, -3]], dtype=float)
    for row in diag:
        out.append(np.diag(row / np.linalg.norm(row)))
    return out


_TRACELESS = _traceless_basis()


def _offdiag_block(op: np.ndarray) -> np.ndarray:
    return (_SD_BASIS.T @ op @ _SD_BASIS)[:3, 3:]


_RIC_TO_BLOCK = np.column_stack([_offdiag_block(kulkarni_nomizu_identity(t)).ravel() for t in _TRACELESS])
_BLOCK_TO_RIC = np.linalg.inv(_RIC_TO_BLOCK)


@dataclass(frozen=True, eq=False)
class WeylBlocks:
    """Scalar, traceless Ricci and self-dual/anti-self-dual Weyl parts."""

    s: float
    ric0: np.ndarray
    wplus: np.ndarray
    wminus: np.ndarray
    eigplus: tuple[float, float, float]
    eigminus: tuple[float, float, float]
    ric0_contracted: np.ndarray = field(repr=False)

    @property
    def wplus_sq(self) -> float:
        return float(np.sum(self.wplus**2))

    @property
    def wminus_sq(self) -> float:
        return float(np.sum(self.wminus**2))

    @property
    def ric0_sq(self) -> float:
        return float(np.sum(self.ric0**2))

    @property
    def ric0_mismatch(self) -> float:
        """Largest disagreement between the block and contraction routes."""
        return float(np.max(np.abs(self.ric0 - self.ric0_contracted)))


def singer_thorpe_decompose(ct: CurvatureTensor) -> WeylBlocks:
    op = ct.operator
    s = ct.scalar
    rot = _SD_BASIS.T @ op @ _SD_BASIS
    a, b, c = rot[:3, :3], rot[:3, 3:], rot[3:, 3:]
    wplus = 0.5 * (a + a.T) - (np.trace(a) / 3.0) * np.eye(3)
    wminus = 0.5 * (c + c.T) - (np.trace(c) / 3.0) * np.eye(3)
    coeffs = _BLOCK_TO_RIC @ b.ravel()
    ric0 = sum(x * t for x, t in zip(coeffs, _TRACELESS))
    ric = ct.ricci()
    ric0_contracted = ric - (np.trace(ric) / 4.0) * np.eye(4)
    return WeylBlocks(
        s=s,
        ric0=ric0,
        wplus=wplus,
        wminus=wminus,
        eigplus=sym3_eigenvalues(wplus),
        eigminus=sym3_eigenvalues(wminus),
        ric0_contracted=ric0_contracted,
    )


def recompose(blocks: WeylBlocks) -> CurvatureTensor:
    """Inverse of :func:`singer_thorpe_decompose`."""
    diag = np.zeros((6, 6))
    diag[:3, :3] = blocks.wplus
    diag[3:, 3:] = blocks.wminus
    op = _SD_BASIS @ diag @ _SD_BASIS.T
    op += (blocks.s / 12.0) * np.eye(6)
    op += kulkarni_nomizu_identity(blocks.ric0)
    return CurvatureTensor(0.5 * (op + op.T))


def weyl_eigenvalues(blocks: WeylBlocks):
    return blocks.eigplus, blocks.eigminus


def weyl_plus_operator(blocks: WeylBlocks) -> np.ndarray:
    """W+ as a 6x6 operator on 2-forms (zero on anti-self-dual forms)."""
    u = _SD_BASIS[:, :3]
    return u @ blocks.wplus @ u.T


def random_curvature_tensor(seed: int, kind: str = "general", scale: float = 1.0) -> CurvatureTensor:
    """Random algebraic curvature tensor.

    A standard Gaussian symmetric 6x6 matrix is projected onto the Bianchi
    subspace; ``kind="einstein"`` also removes the traceless Ricci block.
    """
    if kind not in ("general", "einstein"):
        raise ValueError(f"unknown tensor class {kind!r}")
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((6, 6))
    op = _project(scale * m)
    if kind == "einstein":
        rot = _SD_BASIS.T @ op @ _SD_BASIS
        rot[:3, 3:] = 0.0
        rot[3:, :3] = 0.0
        op = _project(_SD_BASIS @ rot @ _SD_BASIS.T)
    return CurvatureTensor(op)
