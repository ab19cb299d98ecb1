"""Biorthogonal curvature of Riemannian 4-manifolds.

Closed-form minimum biorthogonal curvature, a brute-force oracle, model
geometries, topological inequalities and submanifold pinching checks.
"""

from .biorthogonal import (
    biorthogonal_curvature,
    k1perp_bruteforce,
    k1perp_closed_form,
    modified_scalars,
    orthogonal_plane,
)
from .curvature import (
    CurvatureTensor,
    Plane,
    curvature_from_components,
    random_curvature_tensor,
    sectional,
    singer_thorpe_decompose,
)
from .models import MODEL_NAMES, model, normalize_to_constraint, rescale
from .report import CheckReport

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "CurvatureTensor",
    "MODEL_NAMES",
    "Plane",
    "biorthogonal_curvature",
    "curvature_from_components",
    "k1perp_bruteforce",
    "k1perp_closed_form",
    "model",
    "modified_scalars",
    "normalize_to_constraint",
    "orthogonal_plane",
    "random_curvature_tensor",
    "rescale",
    "sectional",
    "singer_thorpe_decompose",
]
