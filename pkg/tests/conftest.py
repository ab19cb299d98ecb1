import numpy as np
import pytest

from biortho.curvature import curvature_from_components
from biortho.models import kahler_constant_holomorphic


@pytest.fixture
def h2xh2_ct():
    t = np.zeros((4, 4, 4, 4))
    for i, j in ((0, 1), (2, 3)):
        t[i, j, i, j] = t[j, i, j, i] = -1.0
        t[i, j, j, i] = t[j, i, i, j] = 1.0
    return curvature_from_components(t)


@pytest.fixture
def cp2_ct():
    return curvature_from_components(kahler_constant_holomorphic(4.0))
