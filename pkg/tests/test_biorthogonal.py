import numpy as np
import pytest

from biortho.biorthogonal import (
    biorthogonal_curvature,
    einstein_gap,
    k1perp_bruteforce,
    k1perp_closed_form,
    minimize_over_planes,
    modified_scalars,
    orthogonal_plane,
    weitzenboeck_pointwise,
)
from biortho.curvature import CurvatureTensor, Plane, random_curvature_tensor, singer_thorpe_decompose
from biortho.errors import NotSelfDual
from biortho.models import model, normalize_to_constraint, rescale


def test_biorthogonal_values(h2xh2_ct):
    s4 = CurvatureTensor(np.eye(6))
    rng = np.random.default_rng(0)
    p = Plane.from_vectors(rng.standard_normal(4), rng.standard_normal(4))
    assert biorthogonal_curvature(s4, p) == pytest.approx(1.0)
    assert biorthogonal_curvature(h2xh2_ct, Plane.coordinate(1, 2)) == pytest.approx(-1.0)
    assert biorthogonal_curvature(h2xh2_ct, Plane.coordinate(1, 3)) == pytest.approx(0.0, abs=1e-15)


def test_orthogonal_plane():
    assert np.allclose(orthogonal_plane(Plane.coordinate(1, 2)).projector, Plane.coordinate(3, 4).projector)
    assert np.allclose(orthogonal_plane(Plane.coordinate(1, 3)).projector, Plane.coordinate(2, 4).projector)
    rng = np.random.default_rng(2)
    for _ in range(20):
        p = Plane.from_vectors(rng.standard_normal(4), rng.standard_normal(4))
        assert np.allclose(p.projector + orthogonal_plane(p).projector, np.eye(4), atol=1e-10)


def test_closed_form_models(h2xh2_ct, cp2_ct):
    assert k1perp_closed_form(CurvatureTensor(np.eye(6))) == pytest.approx(1.0)
    assert k1perp_closed_form(h2xh2_ct) == pytest.approx(-1.0)
    assert k1perp_closed_form(cp2_ct) == pytest.approx(1.0)


def test_bruteforce_models(h2xh2_ct):
    assert k1perp_bruteforce(CurvatureTensor(np.eye(6)), samples=10_000) == pytest.approx(1.0, abs=1e-9)
    assert k1perp_bruteforce(h2xh2_ct, samples=200_000) == pytest.approx(-1.0, abs=1e-6)


def test_bruteforce_matches_closed_form_random():
    for seed in range(10):
        ct = random_curvature_tensor(seed)
        assert abs(k1perp_bruteforce(ct, samples=50_000, seed=seed) - k1perp_closed_form(ct)) < 1e-6


def test_search_deterministic_across_workers():
    ct = random_curvature_tensor(3)
    a = minimize_over_planes(ct, samples=60_000, seed=9, workers=1)
    b = minimize_over_planes(ct, samples=60_000, seed=9, workers=3)
    assert a.value == b.value and a.raw_min == b.raw_min


def test_minimizer_attains_value():
    ct = random_curvature_tensor(8)
    res = minimize_over_planes(ct, samples=50_000)
    assert biorthogonal_curvature(ct, res.plane) == pytest.approx(res.value, abs=1e-10)


def test_modified_scalars():
    _, h = normalize_to_constraint(model("h2xh2"), "mixed-bio")
    m = modified_scalars(h.ct, k1_sec=h.k1_sec)
    assert m.s == pytest.approx(-6.0)
    assert m.ms_mixed == pytest.approx(-1.0)
    assert m.ms_mixed_x12 == pytest.approx(-12.0)

    flat = modified_scalars(CurvatureTensor(np.zeros((6, 6))), k1_sec=0.0)
    assert (flat.s, flat.k1perp, flat.ms_bio, flat.ms_mixed) == (0.0, 0.0, 0.0, 0.0)

    ch = rescale(model("ch2"), np.sqrt(3.0))
    m = modified_scalars(ch.ct, k1_sec=ch.k1_sec)
    assert m.s == pytest.approx(-8.0)
    assert m.k1perp == pytest.approx(-4 / 3)
    assert m.ms_mixed == pytest.approx(-1.0)


def test_einstein_gap_nonnegative():
    for seed in range(100):
        assert einstein_gap(random_curvature_tensor(seed)) >= -1e-12


def test_weitzenboeck_equality_case():
    ct = model("cp2").ct
    b = singer_thorpe_decompose(ct)
    w = np.linalg.eigh(b.wplus)[1][:, 0]
    r = weitzenboeck_pointwise(ct, w)
    assert abs(r.margin) < 1e-12
    assert abs(r.data["eigen_margin"]) < 1e-12
    assert r.verdict == "equality"


def test_weitzenboeck_zero_wplus():
    ct = CurvatureTensor(np.eye(6))
    r = weitzenboeck_pointwise(ct, [1.0, 2.0, -0.5])
    assert r.lhs == pytest.approx(0.0, abs=1e-14)
    assert r.margin >= -1e-12


def test_weitzenboeck_rejects_asd():
    with pytest.raises(NotSelfDual):
        weitzenboeck_pointwise(CurvatureTensor(np.eye(6)), [1, 0, 0, 0, 0, -1])
