import math

import numpy as np
import pytest

from biortho.biorthogonal import k1perp_closed_form
from biortho.curvature import singer_thorpe_decompose
from biortho.errors import ConstraintVacuous, InvalidParameter, UnknownModel
from biortho.invariants import euler_density
from biortho.models import MODEL_NAMES, constraint_quantity, model, normalize_to_constraint, rescale

PI2 = math.pi**2

EXPECTED = {
    # name: (s, k1perp)
    "s4": (12.0, 1.0),
    "h4": (-12.0, -1.0),
    "flat": (0.0, 0.0),
    "cp2": (24.0, 1.0),
    "ch2": (-24.0, -4.0),
    "s2xs2": (4.0, 0.0),
    "h2xh2": (-4.0, -1.0),
}


@pytest.mark.parametrize("name", MODEL_NAMES)
def test_catalog_values(name):
    ms = model(name)
    s, k = EXPECTED[name]
    assert ms.ct.scalar == pytest.approx(s)
    assert k1perp_closed_form(ms.ct) == pytest.approx(k, abs=1e-14)


def test_volumes():
    assert model("s4").volume == pytest.approx(8 * PI2 / 3)
    assert model("cp2").volume == pytest.approx(PI2 / 2)
    assert model("h2xh2", chi=3).volume == pytest.approx(12 * PI2)
    assert model("ch2", chi=2).tau == pytest.approx(2 / 3)


def test_h2xh2_product():
    b = singer_thorpe_decompose(model("h2xh2").ct)
    assert b.wplus_sq == pytest.approx(b.s**2 / 24)
    assert b.wminus_sq == pytest.approx(b.s**2 / 24)


def test_bad_parameters():
    with pytest.raises(UnknownModel):
        model("t4")
    with pytest.raises(InvalidParameter):
        model("s4", r=-1)
    with pytest.raises(InvalidParameter):
        model("ch2", hol=4)
    with pytest.raises(InvalidParameter):
        model("cp2", radius=2)


def test_rescale():
    ms = rescale(model("s4"), 2.0)
    assert ms.ct.scalar == pytest.approx(3.0)
    assert ms.volume == pytest.approx(8 * PI2 / 3 * 16)
    base = model("cp2")
    assert rescale(base, 1.0) is base
    big = rescale(base, 3.0)
    assert euler_density(big.ct) * 3.0**4 == pytest.approx(euler_density(base.ct))


def test_normalization():
    _, h = normalize_to_constraint(model("h2xh2"), "mixed-bio")
    assert h.ct.scalar == pytest.approx(-6.0)
    _, c = normalize_to_constraint(model("ch2"), "yamabe")
    assert c.ct.scalar == pytest.approx(-12.0)
    for con in ("yamabe", "gromov", "mixed", "mixed-bio"):
        with pytest.raises(ConstraintVacuous):
            normalize_to_constraint(model("s4"), con)
        t, ms = normalize_to_constraint(model("h4", r=0.7), con)
        assert constraint_quantity(ms, con) == pytest.approx(-1.0)
    with pytest.raises(InvalidParameter):
        constraint_quantity(model("h4"), "ricci")


def test_kahler_form_self_dual():
    b = singer_thorpe_decompose(model("cp2", hol=2.0).ct)
    assert b.wminus_sq < 1e-28
    assert np.allclose(b.eigplus, [-1, -1, 2])
