import numpy as np
import pytest

from biortho.biorthogonal import k1perp_closed_form
from biortho.errors import InvalidP, InvalidParameter, MixedAmbient
from biortho.submanifolds import (
    ImmersionPoint,
    asperti_costa_condition,
    clifford_point,
    induced_curvature,
    k1perp_lower_bound_check,
    lawson_simons_condition,
    mean_curvature,
    normalize_frame,
    random_immersion_point,
    ricci_from_gauss,
    ricci_pair_bound_check,
    scalar_from_gauss,
    sphere_theorem_verdict,
    umbilic_sphere,
)


def test_mean_curvature():
    assert mean_curvature(umbilic_sphere(2.0)) == pytest.approx((2.0, 2.0))
    assert mean_curvature(clifford_point()) == (0.0, 0.0)
    h, lam = mean_curvature(ImmersionPoint(0.0, (np.diag([3.0, 1.0, 0.0, 0.0]),)))
    assert (h, lam) == pytest.approx((1.0, 0.0))


def test_gauss_equation():
    r = 0.5
    ct = induced_curvature(umbilic_sphere(1 / r))
    assert np.allclose(ct.operator, np.eye(6) / r**2)
    cl = clifford_point()
    assert induced_curvature(cl).scalar == pytest.approx(8.0)
    assert scalar_from_gauss(cl) == pytest.approx(8.0)
    assert np.allclose(induced_curvature(ImmersionPoint(0.0, (np.zeros((4, 4)),))).operator, 0.0)


def test_lower_bound_equalities():
    assert k1perp_lower_bound_check(clifford_point()).verdict == "equality"
    assert k1perp_lower_bound_check(umbilic_sphere(1.3)).verdict == "equality"


def test_ricci_pair():
    pair, perp = ricci_pair_bound_check(umbilic_sphere(2.0), 1, 2)
    assert pair.verdict == "equality"
    pair, _ = ricci_pair_bound_check(clifford_point(), 1, 2)
    assert pair.margin == pytest.approx(4.0)
    with pytest.raises(IndexError):
        ricci_pair_bound_check(clifford_point(), 2, 2)
    with pytest.raises(IndexError):
        ricci_pair_bound_check(clifford_point(), 0, 5)


def test_fuzz_small():
    rng = np.random.default_rng(0)
    for _ in range(300):
        ip = random_immersion_point(rng)
        assert k1perp_lower_bound_check(ip).margin >= -1e-9
        ct = induced_curvature(ip)
        assert abs(np.trace(ct.ricci()) - scalar_from_gauss(ip)) < 1e-10
        assert np.max(np.abs(np.diag(ct.ricci()) - ricci_from_gauss(ip))) < 1e-10


def test_frame_covariance():
    rng = np.random.default_rng(4)
    for _ in range(20):
        ip = random_immersion_point(rng)
        q = np.linalg.qr(rng.standard_normal((4, 4)))[0]
        if np.linalg.det(q) < 0:
            q[:, 0] *= -1
        rot = ImmersionPoint(ip.c, tuple(q @ a @ q.T for a in ip.A))
        assert np.allclose(mean_curvature(rot), mean_curvature(ip), atol=1e-10)
        assert rot.alpha_sq == pytest.approx(ip.alpha_sq, abs=1e-10)
        assert k1perp_closed_form(induced_curvature(rot)) == pytest.approx(
            k1perp_closed_form(induced_curvature(ip)), abs=1e-10
        )


def test_normalize_frame_validation():
    a, b = np.diag([1.0, 0, 0, 0]), np.diag([0, 1.0, 0, 0])
    with pytest.raises(InvalidParameter):
        ImmersionPoint(1.0, (a, b))
    ip = normalize_frame(1.0, [a, b])
    assert abs(np.trace(ip.A[1])) < 1e-12
    assert ip.alpha_sq == pytest.approx(2.0)


def test_sphere_verdicts():
    v = sphere_theorem_verdict([clifford_point()], "sphere", pi1_finite=True, samples=20_000)
    assert v.verdict == "ProductOfSpheres"
    v = sphere_theorem_verdict([umbilic_sphere(0.5, 1.0)], "sphere", pi1_finite=True)
    assert "HomeoSphere" in v.labels and "PositiveBiorthogonal" in v.labels
    v = sphere_theorem_verdict([umbilic_sphere(2.0, 0.0)], "euclidean", pi1_finite=True)
    assert v.verdict == "HomeoSphere"
    v = sphere_theorem_verdict([umbilic_sphere(2.0, 0.0)], "euclidean", pi1_finite=False)
    assert v.verdict == "Inconclusive"
    with pytest.raises(MixedAmbient):
        sphere_theorem_verdict([umbilic_sphere(1.0, 1.0), umbilic_sphere(1.0, 0.0)], "sphere", True)


def test_ac_ls():
    ip = umbilic_sphere(1.0, 1.0)
    assert lawson_simons_condition(ip).verdict == "fail"
    ac = asperti_costa_condition(ip)
    assert ac.lhs == pytest.approx(12.0) and ac.verdict == "pass"
    small = ImmersionPoint(1.0, (np.sqrt(2.9 / 4) * np.diag([1.0, -1.0, 1.0, -1.0]),))
    assert lawson_simons_condition(small).verdict == "pass"
    assert asperti_costa_condition(small).verdict == "pass"
    flat = ImmersionPoint(0.0, (np.diag([1.0, -1.0, 0.0, 0.0]),))
    assert asperti_costa_condition(flat).verdict == "fail"
    with pytest.raises(InvalidP):
        asperti_costa_condition(ip, p=3)
