import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biortho.linalg3 import cardano_eigenvalues, sym3_eigenvalues, sym3_smallest_eigenvector

entries = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)


def _sym(vals):
    a = np.array(vals, dtype=float).reshape(3, 3)
    return 0.5 * (a + a.T)


@settings(max_examples=400, deadline=None)
@given(st.lists(entries, min_size=9, max_size=9))
def test_matches_eigvalsh(vals):
    a = _sym(vals)
    ref = np.linalg.eigvalsh(a)
    got = np.array(sym3_eigenvalues(a))
    scale = max(1.0, float(np.max(np.abs(a))))
    assert np.all(np.diff(got) >= 0)
    assert np.max(np.abs(got - ref)) <= 1e-12 * scale


@settings(max_examples=200, deadline=None)
@given(st.lists(entries, min_size=9, max_size=9))
def test_smallest_eigenvector(vals):
    a = _sym(vals)
    v = sym3_smallest_eigenvector(a)
    lam = np.linalg.eigvalsh(a)[0]
    scale = max(1.0, float(np.max(np.abs(a))))
    assert abs(np.linalg.norm(v) - 1.0) < 1e-12
    assert float(v @ a @ v) - lam <= 1e-9 * scale


@pytest.mark.parametrize(
    "diag",
    [(0.0, 0.0, 0.0), (1.0, 1.0, 1.0), (-2.0, -2.0, 4.0), (-4.0, 2.0, 2.0), (1e-20, 0.0, -1e-20)],
)
def test_degenerate_spectra(diag):
    q = np.linalg.qr(np.random.default_rng(3).standard_normal((3, 3)))[0]
    a = q @ np.diag(diag) @ q.T
    a = 0.5 * (a + a.T)
    assert np.allclose(sym3_eigenvalues(a), sorted(diag), atol=1e-13)
    assert np.allclose(cardano_eigenvalues(a), sorted(diag), atol=1e-7)
