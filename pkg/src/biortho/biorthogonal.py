"""Biorthogonal curvature and its pointwise minimum.

``K⊥(P)`` averages the sectional curvatures of a plane and its orthogonal
complement. Its minimum over the Grassmannian is available in closed form
from the smallest Weyl eigenvalues; :func:`k1perp_bruteforce` recomputes it
by sampling planes, without the Hodge star or the Weyl decomposition, and
serves as the independent check of the closed form.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .curvature import (
    CurvatureTensor,
    Plane,
    WeylBlocks,
    lambda_projectors,
    sectional,
    self_dual_basis,
    singer_thorpe_decompose,
    weyl_plus_operator,
)
from .errors import DegeneratePlane, NotSelfDual
from .report import CheckReport

DEFAULT_SAMPLES = 200_000
CHUNK = 25_000
REJECT_TOL = 1e-8
MIN_STEP = 1e-7
START_STEP = 0.05


def _complements(u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Positively oriented orthonormal bases of the complements of stacked planes.

    Returns ``(x, y, residual)`` where residual is the smallest column norm
    used during the projection; rows are independent planes.
    """
    n = u.shape[0]
    rows = np.arange(n)
    proj = np.eye(4) - u[:, :, None] * u[:, None, :] - v[:, :, None] * v[:, None, :]
    norms = np.linalg.norm(proj, axis=1)
    k = np.argmax(norms, axis=1)
    r1 = norms[rows, k]
    x = proj[rows, :, k] / r1[:, None]
    proj = proj - x[:, :, None] * x[:, None, :]
    norms = np.linalg.norm(proj, axis=1)
    k = np.argmax(norms, axis=1)
    r2 = norms[rows, k]
    y = proj[rows, :, k] / r2[:, None]
    # Gram-Schmidt once more against accumulated rounding
    y = y - np.sum(y * x, axis=1)[:, None] * x
    y /= np.linalg.norm(y, axis=1)[:, None]
    det = np.linalg.det(np.stack([u, v, x, y], axis=1))
    y = np.where(det[:, None] < 0, -y, y)
    return x, y, np.minimum(r1, r2)


def orthogonal_plane(plane: Plane, tol: float = 1e-10) -> Plane:
    """Orthogonal complement, oriented so that ``u ^ v ^ u' ^ v'`` is positive."""
    x, y, res = _complements(plane.u[None, :], plane.v[None, :])
    if res[0] < tol:
        raise DegeneratePlane(f"complement residual {res[0]:.3e} below {tol}")
    return Plane(x[0], y[0])


def biorthogonal_curvature(ct: CurvatureTensor, plane: Plane) -> float:
    return 0.5 * (sectional(ct, plane) + sectional(ct, orthogonal_plane(plane)))


def k1perp_from_blocks(blocks: WeylBlocks) -> float:
    return 0.5 * (blocks.eigplus[0] + blocks.eigminus[0]) + blocks.s / 12.0


def k1perp_closed_form(ct: CurvatureTensor) -> float:
    """Minimum biorthogonal curvature ``(w1+ + w1-)/2 + s/12``."""
    return k1perp_from_blocks(singer_thorpe_decompose(ct))


# --- brute-force search over Gr(2,4) ---------------------------------------


def _sample_planes(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    us, vs = [], []
    need = n
    while need > 0:
        a = rng.standard_normal((need, 4))
        b = rng.standard_normal((need, 4))
        u = a / np.linalg.norm(a, axis=1)[:, None]
        b = b - np.sum(b * u, axis=1)[:, None] * u
        r = np.linalg.norm(b, axis=1)
        keep = r >= REJECT_TOL
        us.append(u[keep])
        vs.append(b[keep] / r[keep, None])
        need -= int(keep.sum())
    return np.concatenate(us)[:n], np.concatenate(vs)[:n]


def _pair_matrix(ct_op: np.ndarray) -> np.ndarray:
    """``R_ijkl`` rearranged as a 16x16 matrix indexed by ``(ik), (jl)``."""
    return CurvatureTensor(ct_op).tensor4().transpose(0, 2, 1, 3).reshape(16, 16)


def _projector_sectional(m16: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Sectional curvature of the planes with stacked projectors ``q``.

    For a rank-2 orthogonal projector, ``sum R_ijkl Q_ik Q_jl = 2 K``.
    """
    qf = q.reshape(q.shape[0], 16)
    return 0.5 * np.sum((qf @ m16) * qf, axis=1)


def _biortho_batch(m16: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    # both sectional curvatures from projectors: the complement needs neither
    # a basis nor the Hodge star
    p = u[:, :, None] * u[:, None, :] + v[:, :, None] * v[:, None, :]
    return 0.5 * (_projector_sectional(m16, p) + _projector_sectional(m16, np.eye(4) - p))


def _sectional_batch(m16: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    p = u[:, :, None] * u[:, None, :] + v[:, :, None] * v[:, None, :]
    return _projector_sectional(m16, p)


_OBJECTIVES: dict[str, Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]] = {
    "biorthogonal": _biortho_batch,
    "sectional": _sectional_batch,
}


def _gram_schmidt(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    u = a / np.linalg.norm(a)
    b = b - (b @ u) * u
    return u, b / np.linalg.norm(b)


def _refine(f, u: np.ndarray, v: np.ndarray, best: float, max_moves: int = 200_000):
    """Coordinate descent in a local chart of Gr(2,4), halving the step."""
    x, y, _ = _complements(u[None], v[None])
    x, y = x[0], y[0]
    step = START_STEP
    moves = 0
    while step >= MIN_STEP and moves < max_moves:
        improved = False
        for k in range(4):
            for d in (step, -step):
                cu, cv = u, v
                if k == 0:
                    cu = u + d * x
                elif k == 1:
                    cu = u + d * y
                elif k == 2:
                    cv = v + d * x
                else:
                    cv = v + d * y
                cu, cv = _gram_schmidt(cu, cv)
                val = f(cu, cv)
                if val < best:
                    best, u, v = val, cu, cv
                    x, y, _ = _complements(u[None], v[None])
                    x, y = x[0], y[0]
                    improved = True
                    moves += 1
                    break
            if improved:
                break
        if not improved:
            step /= 2.0
    return best, u, v


@dataclass(frozen=True)
class SearchResult:
    value: float
    raw_min: float
    plane: Plane


def minimize_over_planes(
    ct: CurvatureTensor,
    objective: str = "biorthogonal",
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    workers: int = 1,
) -> SearchResult:
    """Sample uniform planes, keep the best, then polish it locally.

    Samples are drawn in fixed-size chunks with one spawned seed per chunk,
    so the result does not depend on ``workers``.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    batch = _OBJECTIVES[objective]
    op = _pair_matrix(ct.operator)
    sizes = [CHUNK] * (samples // CHUNK)
    if samples % CHUNK:
        sizes.append(samples % CHUNK)
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(job):
        size, seq = job
        u, v = _sample_planes(np.random.default_rng(seq), size)
        vals = batch(op, u, v)
        k = int(np.argmin(vals))
        return float(vals[k]), u[k], v[k]

    jobs = list(zip(sizes, seqs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(j) for j in jobs]
    raw, u, v = min(results, key=lambda r: r[0])

    def single(a, b):
        return float(batch(op, a[None], b[None])[0])

    best, u, v = _refine(single, u, v, raw)
    return SearchResult(value=min(best, raw), raw_min=raw, plane=Plane(*_gram_schmidt(u, v)))


def k1perp_bruteforce(ct: CurvatureTensor, samples: int = DEFAULT_SAMPLES, seed: int = 0, workers: int = 1) -> float:
    return minimize_over_planes(ct, "biorthogonal", samples, seed, workers).value


def min_sectional_bruteforce(ct: CurvatureTensor, samples: int = DEFAULT_SAMPLES, seed: int = 0, workers: int = 1) -> float:
    return minimize_over_planes(ct, "sectional", samples, seed, workers).value


# --- modified scalar curvatures -------------------------------------------


@dataclass(frozen=True)
class ModifiedScalars:
    s: float
    k1perp: float
    k1_sec: float

    @property
    def ms_bio(self) -> float:
        return 12.0 * self.k1perp

    @property
    def ms_mixed(self) -> float:
        """``(K1⊥ + s/12) / 2``."""
        return 0.5 * (self.k1perp + self.s / 12.0)

    @property
    def ms_mixed_x12(self) -> float:
        """``s + 3(w1+ + w1-)``, twelve times :attr:`ms_mixed`."""
        return 12.0 * self.ms_mixed


def modified_scalars(
    ct: CurvatureTensor,
    k1_sec: float | None = None,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> ModifiedScalars:
    """Modified scalar curvatures; ``k1_sec`` is searched for unless supplied."""
    if k1_sec is None:
        k1_sec = min_sectional_bruteforce(ct, samples=samples, seed=seed)
    return ModifiedScalars(s=ct.scalar, k1perp=k1perp_closed_form(ct), k1_sec=float(k1_sec))


def einstein_gap(ct: CurvatureTensor) -> float:
    """``|W+|^2 + |W-|^2 + s^2/24 - 2 K1⊥^2``; nonnegative for every tensor."""
    b = singer_thorpe_decompose(ct)
    k = k1perp_from_blocks(b)
    return b.wplus_sq + b.wminus_sq + b.s**2 / 24.0 - 2.0 * k * k


def weitzenboeck_pointwise(ct: CurvatureTensor, alpha, tol: float = 1e-12) -> CheckReport:
    """Pointwise Weitzenböck bounds for a self-dual 2-form ``alpha``.

    ``alpha`` is a 6-vector in the ``e_ij`` basis or a 3-vector in the
    ``w+`` basis. The report compares ``<W+ a, a>`` with
    ``(w1+ + w1-)|a|^2``; ``data`` also carries the eigenvalue margin
    ``<W+ a, a> - w1+|a|^2`` and both sides of the integrand inequality
    ``2<W+ a,a> - (s/3)|a|^2 >= (2/3)(6 K1⊥ - s)|a|^2``.
    """
    a = np.asarray(alpha, dtype=float).ravel()
    if a.shape == (3,):
        a = self_dual_basis()[:, :3] @ a
    if a.shape != (6,):
        raise NotSelfDual(f"expected a 2-form with 3 or 6 components, got {a.shape}")
    _, pminus = lambda_projectors()
    if np.linalg.norm(pminus @ a) > 1e-10 * max(1.0, float(np.linalg.norm(a))):
        raise NotSelfDual("form has an anti-self-dual component")
    b = singer_thorpe_decompose(ct)
    k1 = k1perp_from_blocks(b)
    norm2 = float(a @ a)
    wa = float(a @ weyl_plus_operator(b) @ a)
    w1p, w1m = b.eigplus[0], b.eigminus[0]
    integrand_lhs = 2.0 * wa - (b.s / 3.0) * norm2
    integrand_rhs = (2.0 / 3.0) * (6.0 * k1 - b.s) * norm2
    return CheckReport(
        name="weitzenboeck",
        lhs=wa,
        rhs=(w1p + w1m) * norm2,
        relation=">=",
        tol=tol,
        data={
            "eigen_margin": wa - w1p * norm2,
            "integrand_lhs": integrand_lhs,
            "integrand_rhs": integrand_rhs,
            "integrand_margin": integrand_lhs - integrand_rhs,
        },
    )
