"""Pointwise algebra of 4-dimensional submanifolds of space forms.

A point is described by the ambient curvature ``c`` and the Weingarten
operators ``A_1, ..., A_m`` in an orthonormal normal frame. After
:func:`normalize_frame`, ``xi_1`` points along the mean curvature vector,
so ``tr A_1 = 4H`` and ``tr A_b = 0`` for ``b >= 2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .biorthogonal import k1perp_closed_form, minimize_over_planes
from .curvature import CurvatureTensor, Plane, curvature_from_components, sectional
from .errors import InvalidP, InvalidParameter, MixedAmbient
from .report import CheckReport

N = 4
# Below this mean curvature the lambda_i = 0 convention applies.
H_ZERO = 1e-12


@dataclass(frozen=True, eq=False)
class ImmersionPoint:
    c: float
    A: tuple[np.ndarray, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        mats = tuple(np.array(a, dtype=float) for a in self.A)
        if not mats:
            raise InvalidParameter("need at least one Weingarten operator")
        for k, a in enumerate(mats):
            if a.shape != (N, N):
                raise InvalidParameter(f"A[{k}] must be 4x4, got {a.shape}")
            if np.max(np.abs(a - a.T)) > 1e-12 * max(1.0, float(np.max(np.abs(a)))):
                raise InvalidParameter(f"A[{k}] is not symmetric")
            a.setflags(write=False)
        traces = np.array([np.trace(a) for a in mats])
        if np.linalg.norm(traces) / N > H_ZERO:
            rest = np.abs(traces[1:])
            if rest.size and np.max(rest) > 1e-10 * max(1.0, abs(traces[0])):
                raise InvalidParameter("tr A_b must vanish for b >= 2; call normalize_frame first")
        object.__setattr__(self, "A", mats)
        object.__setattr__(self, "c", float(self.c))

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def alpha_sq(self) -> float:
        """``||alpha||^2 = sum_b tr(A_b^2)``."""
        return float(sum(np.sum(a * a) for a in self.A))


def normalize_frame(c: float, mats, label: str = "") -> ImmersionPoint:
    """Rotate the normal frame so that ``xi_1`` is parallel to the mean curvature."""
    mats = [0.5 * (np.asarray(a, float) + np.asarray(a, float).T) for a in mats]
    m = len(mats)
    traces = np.array([np.trace(a) for a in mats])
    norm = float(np.linalg.norm(traces))
    if norm / N <= H_ZERO:
        return ImmersionPoint(c, tuple(mats), label)
    # orthogonal matrix whose first row is traces/|traces| (Householder)
    t = traces / norm
    w = t.copy()
    w[0] -= 1.0
    if np.linalg.norm(w) < 1e-15:
        rot = np.eye(m)
    else:
        w /= np.linalg.norm(w)
        rot = np.eye(m) - 2.0 * np.outer(w, w)
    new = [sum(rot[g, b] * mats[b] for b in range(m)) for g in range(m)]
    new = [0.5 * (a + a.T) for a in new]
    return ImmersionPoint(c, tuple(new), label)


def random_immersion_point(rng: np.random.Generator, m: int | None = None, c: float | None = None) -> ImmersionPoint:
    """Gaussian symmetrized Weingarten operators in a normalized frame."""
    if m is None:
        m = int(rng.integers(1, 4))
    if c is None:
        c = float(rng.choice([0.0, 1.0, rng.uniform(0.0, 2.0)]))
    mats = []
    for _ in range(m):
        g = rng.standard_normal((N, N))
        mats.append(0.5 * (g + g.T))
    return normalize_frame(c, mats)


def mean_curvature(ip: ImmersionPoint) -> tuple[float, float]:
    """``(H, lambda_1)``; ``lambda_1 = 0`` when ``H`` vanishes."""
    traces = np.array([np.trace(a) for a in ip.A])
    h = float(np.linalg.norm(traces)) / N
    if h <= H_ZERO:
        return h, 0.0
    a1 = ip.A[0] if traces[0] >= 0 else -ip.A[0]
    return h, float(np.linalg.eigvalsh(a1)[0])


def gauss_components(ip: ImmersionPoint) -> np.ndarray:
    d = np.eye(N)
    r = ip.c * (np.einsum("ik,jl->ijkl", d, d) - np.einsum("il,jk->ijkl", d, d))
    for a in ip.A:
        r += np.einsum("ik,jl->ijkl", a, a) - np.einsum("il,jk->ijkl", a, a)
    return r


def induced_curvature(ip: ImmersionPoint) -> CurvatureTensor:
    """Intrinsic curvature from the Gauss equation."""
    return curvature_from_components(gauss_components(ip))


def scalar_from_gauss(ip: ImmersionPoint) -> float:
    """``s = 12 c + 16 H^2 - ||alpha||^2``."""
    h, _ = mean_curvature(ip)
    return N * (N - 1) * ip.c + N * N * h * h - ip.alpha_sq


def ricci_from_gauss(ip: ImmersionPoint) -> np.ndarray:
    """``Ric(e_i) = sum_j Rbar_ijij + sum_{b,j} [a_ii a_jj - a_ij^2]`` as a vector."""
    ric = np.full(N, (N - 1) * ip.c)
    for a in ip.A:
        ric += np.diag(a) * np.trace(a) - np.sum(a * a, axis=1)
    return ric


def k1perp_lower_bound_check(ip: ImmersionPoint, tol: float = 1e-9) -> CheckReport:
    """``4 K1⊥ >= -||alpha||^2 + 4(2H^2 + c)``."""
    h, _ = mean_curvature(ip)
    k1 = k1perp_closed_form(induced_curvature(ip))
    return CheckReport(
        "k1perp_lower_bound",
        4.0 * k1,
        -ip.alpha_sq + 8.0 * h * h + 4.0 * ip.c,
        ">=",
        tol,
        data={"H": h, "alpha_sq": ip.alpha_sq, "k1perp": k1},
    )


def ricci_pair_bound_check(ip: ImmersionPoint, i: int, j: int, tol: float = 1e-9) -> tuple[CheckReport, CheckReport]:
    """Pointwise steps behind the lower bound, for the coordinate plane ``(e_i, e_j)``.

    Returns reports for ``2K(e_i, e_j) >= Ric_i + Ric_j - 4H^2 - 4c`` and
    ``4K⊥(P) >= s - 8H^2 - 8c``. Indices are 1-based.
    """
    if not (1 <= i <= N and 1 <= j <= N) or i == j:
        raise IndexError(f"need distinct indices in 1..4, got ({i}, {j})")
    ct = induced_curvature(ip)
    h, _ = mean_curvature(ip)
    ric = np.diag(ct.ricci())
    k_ij = sectional(ct, Plane.coordinate(i, j))
    k_, l_ = (x for x in range(1, N + 1) if x not in (i, j))
    k_perp = 0.5 * (k_ij + sectional(ct, Plane.coordinate(k_, l_)))
    pair = CheckReport(
        f"ricci_pair.{i}{j}",
        2.0 * k_ij,
        ric[i - 1] + ric[j - 1] - 4.0 * h * h - 4.0 * ip.c,
        ">=",
        tol,
    )
    perp = CheckReport(
        f"biorthogonal_pair.{i}{j}",
        4.0 * k_perp,
        ct.scalar - 8.0 * h * h - 8.0 * ip.c,
        ">=",
        tol,
    )
    return pair, perp


# --- verdicts ---------------------------------------------------------------

HOMEO_SPHERE = "HomeoSphere"
POSITIVE_BIORTHOGONAL = "PositiveBiorthogonal"
NONNEGATIVE_BIORTHOGONAL = "NonnegativeBiorthogonal"
MINIMAL_SUBMANIFOLD = "MinimalSubmanifold"
PRODUCT_OF_SPHERES = "ProductOfSpheres"
INCONCLUSIVE = "Inconclusive"

AMBIENT_CURVATURE = {"sphere": 1.0, "euclidean": 0.0}


@dataclass(frozen=True)
class SphereVerdict:
    labels: tuple[str, ...]
    worst_margin: float
    max_alpha_sq: float
    notes: tuple[str, ...] = ()

    @property
    def verdict(self) -> str:
        """The strongest label."""
        for name in (PRODUCT_OF_SPHERES, MINIMAL_SUBMANIFOLD, HOMEO_SPHERE, POSITIVE_BIORTHOGONAL,
                     NONNEGATIVE_BIORTHOGONAL):
            if name in self.labels:
                return name
        return INCONCLUSIVE


def sphere_theorem_verdict(
    ips: list[ImmersionPoint],
    ambient: str,
    pi1_finite: bool,
    samples: int = 20_000,
    seed: int = 0,
    zero_tol: float = 1e-8,
) -> SphereVerdict:
    """Apply the pinching sphere theorems to sampled points.

    Conditions are checked at every supplied point. The topological
    conclusions are quoted from the literature and never verified here.
    """
    if ambient not in AMBIENT_CURVATURE:
        raise InvalidParameter(f"ambient must be one of {sorted(AMBIENT_CURVATURE)}")
    if not ips:
        raise InvalidParameter("need at least one point")
    c = AMBIENT_CURVATURE[ambient]
    if any(abs(ip.c - c) > 1e-12 for ip in ips) or len({ip.m for ip in ips}) != 1:
        raise MixedAmbient("all points must share the ambient curvature and codimension")
    m = ips[0].m
    alpha = [ip.alpha_sq for ip in ips]
    hs = [mean_curvature(ip)[0] for ip in ips]
    margins = [4.0 * (2.0 * h * h + c) - a for a, h in zip(alpha, hs)]
    labels: list[str] = []
    notes = ["conditions checked on sampled points only"]
    if min(margins) > 0 and pi1_finite:
        labels.append(HOMEO_SPHERE)
        notes.append("homeomorphic to S4 via vanishing H2 (Asperti-Costa) and finite pi1")
    if c == 1.0:
        amax = max(alpha)
        if amax < 4.0:
            labels.append(POSITIVE_BIORTHOGONAL)
        elif amax <= 4.0 + 1e-12:
            labels.append(NONNEGATIVE_BIORTHOGONAL)
            mins = [
                minimize_over_planes(induced_curvature(ip), "biorthogonal", samples, seed).value for ip in ips
            ]
            if all(abs(v) <= zero_tol for v in mins):
                labels.append(MINIMAL_SUBMANIFOLD)
                if m == 1:
                    labels.append(PRODUCT_OF_SPHERES)
                    notes.append("hypersurface case: Chern-do Carmo-Kobayashi product of spheres")
    if not labels:
        labels.append(INCONCLUSIVE)
    seen: list[str] = []
    for lab in labels:
        if lab not in seen:
            seen.append(lab)
    return SphereVerdict(tuple(seen), float(min(margins)), float(max(alpha)), tuple(notes))


def asperti_costa_condition(ip: ImmersionPoint, p: int = 2, tol: float = 1e-12) -> CheckReport:
    """Strict pinching ``||alpha||^2 < n^2H^2/(n-p) + n(n-2p)H lambda_1/(n-p) + nc``, n = 4."""
    if isinstance(p, bool) or int(p) != p or not 2 <= p <= N // 2:
        raise InvalidP(f"p must satisfy 2 <= p <= n/2 = 2, got {p}")
    if ip.c < 0:
        raise InvalidParameter("ambient curvature must be nonnegative")
    h, lam1 = mean_curvature(ip)
    threshold = N * N * h * h / (N - p) + N * (N - 2 * p) * h * lam1 / (N - p) + N * ip.c
    return CheckReport("asperti_costa", threshold, ip.alpha_sq, ">", tol, data={"p": p, "H": h, "lambda1": lam1})


def lawson_simons_condition(ip: ImmersionPoint, tol: float = 1e-12) -> CheckReport:
    """``||alpha||^2 < 3`` for 4-dimensional submanifolds of the unit sphere."""
    if abs(ip.c - 1.0) > 1e-12:
        raise InvalidParameter("the Lawson-Simons condition is stated in the unit sphere (c = 1)")
    return CheckReport("lawson_simons", 3.0, ip.alpha_sq, ">", tol)


# --- fixtures ---------------------------------------------------------------


def umbilic_sphere(lam: float, c: float = 0.0) -> ImmersionPoint:
    """Totally umbilic hypersurface with ``A = lam Id``."""
    return ImmersionPoint(c, (lam * np.eye(N),), label="umbilic")


def clifford_point() -> ImmersionPoint:
    """Minimal ``S2(1/√2) x S2(1/√2)`` in the unit 5-sphere."""
    return ImmersionPoint(1.0, (np.diag([1.0, 1.0, -1.0, -1.0]),), label="clifford")


FIXTURES = {
    "clifford": clifford_point,
    "umbilic_r1_euclidean": lambda: umbilic_sphere(1.0, 0.0),
    "umbilic_half_sphere": lambda: umbilic_sphere(0.5, 1.0),
}
