"""Homogeneous model geometries, rescaling and constraint normalization.

Closed models (``s4``, ``cp2``, ``s2xs2``, ``flat``) carry an absolute
volume. Compact quotients of ``h4``, ``ch2`` and ``h2xh2`` are described by
their volume per unit Euler characteristic, since only ``chi`` (and the
signature it forces) ever enters the checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from .biorthogonal import k1perp_closed_form
from .curvature import CurvatureTensor, curvature_from_components, singer_thorpe_decompose
from .errors import ConstraintVacuous, InvalidParameter, UnknownModel

PI2 = math.pi**2

CONSTRAINTS = ("yamabe", "gromov", "mixed", "mixed-bio")


@dataclass(frozen=True)
class ModelSpace:
    name: str
    ct: CurvatureTensor
    einstein: bool
    kahler: bool
    k1_sec: float
    chi: float
    tau: float
    vol_absolute: float | None = None
    vol_per_chi: float | None = None
    params: dict[str, Any] = field(default_factory=dict)
    scale: float = 1.0

    @property
    def is_quotient(self) -> bool:
        return self.vol_absolute is None

    @property
    def volume(self) -> float:
        if self.vol_absolute is not None:
            return self.vol_absolute
        return self.vol_per_chi * self.chi

    def with_chi(self, chi: float) -> "ModelSpace":
        """Same geometry for a quotient with a different Euler characteristic."""
        if not self.is_quotient:
            raise InvalidParameter(f"{self.name} is a closed model with fixed chi")
        tau = chi / 3.0 if self.name == "ch2" else self.tau
        return replace(self, chi=chi, tau=tau)


def kahler_constant_holomorphic(hol: float) -> np.ndarray:
    """``R_ijkl`` of constant holomorphic sectional curvature ``hol``.

    The complex structure is ``J e1 = e2, J e3 = e4``, so the Kähler form
    ``e12 + e34`` is self-dual.
    """
    j = np.zeros((4, 4))
    j[1, 0], j[0, 1], j[3, 2], j[2, 3] = 1.0, -1.0, 1.0, -1.0
    g = np.eye(4)
    jg = j.T  # jg[x, z] = <J e_x, e_z>
    r = (
        np.einsum("ik,jl->ijkl", g, g)
        - np.einsum("il,jk->ijkl", g, g)
        + np.einsum("ik,jl->ijkl", jg, jg)
        - np.einsum("il,jk->ijkl", jg, jg)
        + 2.0 * np.einsum("ij,kl->ijkl", g @ j, g @ j)
    )
    return 0.25 * hol * r


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not value > 0 or not math.isfinite(value):
        raise InvalidParameter(f"{name} must be positive, got {value}")
    return value


def _negative(name: str, value: float) -> float:
    value = float(value)
    if not value < 0 or not math.isfinite(value):
        raise InvalidParameter(f"{name} must be negative, got {value}")
    return value


def _einstein(ct: CurvatureTensor) -> bool:
    return bool(np.sqrt(singer_thorpe_decompose(ct).ric0_sq) < 1e-12)


def model(name: str, **params: Any) -> ModelSpace:
    """Catalog constructor.

    ==========  ====================  ==========================================
    name        parameters            geometry
    ==========  ====================  ==========================================
    s4          r=1                   round sphere of radius r
    h4          r=1, chi=1            real hyperbolic quotient, K = -1/r^2
    flat        volume=1              flat torus
    cp2         hol=4                 Fubini-Study, holomorphic curvature hol
    ch2         hol=-4, chi=1         complex hyperbolic quotient
    s2xs2       k1=1, k2=1            product of round spheres
    h2xh2       k1=-1, k2=-1, chi=1   product of hyperbolic surfaces
    ==========  ====================  ==========================================
    """
    p = dict(params)

    def take(key, default):
        return p.pop(key, default)

    if name == "s4":
        r = _positive("r", take("r", 1.0))
        ms = ModelSpace(
            name, CurvatureTensor(np.eye(6) / r**2), True, False, 1.0 / r**2, 2, 0,
            vol_absolute=8.0 * PI2 * r**4 / 3.0, params={"r": r},
        )
    elif name == "h4":
        r = _positive("r", take("r", 1.0))
        chi = float(take("chi", 1))
        ms = ModelSpace(
            name, CurvatureTensor(-np.eye(6) / r**2), True, False, -1.0 / r**2, chi, 0,
            vol_per_chi=4.0 * PI2 * r**4 / 3.0, params={"r": r},
        )
    elif name == "flat":
        vol = _positive("volume", take("volume", 1.0))
        ms = ModelSpace(
            name, CurvatureTensor(np.zeros((6, 6))), True, True, 0.0, 0, 0,
            vol_absolute=vol, params={"volume": vol},
        )
    elif name == "cp2":
        hol = _positive("hol", take("hol", 4.0))
        ct = curvature_from_components(kahler_constant_holomorphic(hol))
        ms = ModelSpace(
            name, ct, True, True, hol / 4.0, 3, 1,
            vol_absolute=0.5 * PI2 * (4.0 / hol) ** 2, params={"hol": hol},
        )
    elif name == "ch2":
        hol = _negative("hol", take("hol", -4.0))
        chi = float(take("chi", 1))
        ct = curvature_from_components(kahler_constant_holomorphic(hol))
        ms = ModelSpace(
            name, ct, True, True, hol, chi, chi / 3.0,
            vol_per_chi=PI2 / 6.0 * (4.0 / hol) ** 2, params={"hol": hol},
        )
    elif name == "s2xs2":
        k1 = _positive("k1", take("k1", 1.0))
        k2 = _positive("k2", take("k2", 1.0))
        ct = CurvatureTensor(np.diag([k1, 0, 0, 0, 0, k2]))
        ms = ModelSpace(
            name, ct, _einstein(ct), True, 0.0, 4, 0,
            vol_absolute=16.0 * PI2 / (k1 * k2), params={"k1": k1, "k2": k2},
        )
    elif name == "h2xh2":
        k1 = _negative("k1", take("k1", -1.0))
        k2 = _negative("k2", take("k2", -1.0))
        chi = float(take("chi", 1))
        ct = CurvatureTensor(np.diag([k1, 0, 0, 0, 0, k2]))
        ms = ModelSpace(
            name, ct, _einstein(ct), True, min(k1, k2), chi, 0,
            vol_per_chi=4.0 * PI2 / (k1 * k2), params={"k1": k1, "k2": k2},
        )
    else:
        raise UnknownModel(f"unknown model {name!r}")
    if p:
        raise InvalidParameter(f"unexpected parameters for {name}: {sorted(p)}")
    return ms


MODEL_NAMES = ("s4", "h4", "flat", "cp2", "ch2", "s2xs2", "h2xh2")


def rescale(ms: ModelSpace, t: float) -> ModelSpace:
    """Metric ``g -> t^2 g``: curvature scales by ``1/t^2``, volume by ``t^4``."""
    t = float(t)
    if not t > 0 or not math.isfinite(t):
        raise InvalidParameter(f"scale factor must be positive, got {t}")
    if t == 1.0:
        return ms
    t2, t4 = t * t, t**4
    return replace(
        ms,
        ct=ms.ct.scaled(1.0 / t2),
        k1_sec=ms.k1_sec / t2,
        vol_absolute=None if ms.vol_absolute is None else ms.vol_absolute * t4,
        vol_per_chi=None if ms.vol_per_chi is None else ms.vol_per_chi * t4,
        scale=ms.scale * t,
    )


def constraint_quantity(ms: ModelSpace, constraint: str) -> float:
    """The curvature quantity each minimal volume bounds below by -1."""
    s12 = ms.ct.scalar / 12.0
    if constraint == "yamabe":
        return s12
    if constraint == "gromov":
        return ms.k1_sec
    if constraint == "mixed":
        return 0.5 * (ms.k1_sec + s12)
    if constraint == "mixed-bio":
        return 0.5 * (k1perp_closed_form(ms.ct) + s12)
    raise InvalidParameter(f"unknown constraint {constraint!r}; expected one of {CONSTRAINTS}")


def normalize_to_constraint(ms: ModelSpace, constraint: str) -> tuple[float, ModelSpace]:
    """Rescale so the constrained quantity is exactly -1."""
    q = constraint_quantity(ms, constraint)
    if q >= 0:
        raise ConstraintVacuous(f"{constraint} quantity {q:.6g} is nonnegative on {ms.name}")
    t = math.sqrt(-q)
    return t, rescale(ms, t)
