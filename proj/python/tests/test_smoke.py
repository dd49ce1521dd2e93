import cmath
import math
import random

import pytest

import mnv_blowup as mnv


def test_enneper_surface_point():
    x, y = 0.4, -1.3
    u = mnv.surface_point(mnv.Spinor.enneper(), complex(x, y))
    expected = (y * (y * y / 3 - x * x - 1), x * (1 + y * y - x * x / 3), x * x - y * y)
    assert u == pytest.approx(expected, abs=1e-12)


def test_unit_normal():
    n = mnv.normal(mnv.Spinor.enneper(), 0.7 + 0.2j)
    assert math.fsum(c * c for c in n) == pytest.approx(1.0, abs=1e-12)


def test_pipeline_matches_closed_form():
    rng = random.Random(7)
    C = 0.5
    e = mnv.Spinor.enneper()
    for _ in range(200):
        x, y, t = rng.uniform(-3, 3), rng.uniform(-3, 3), C + rng.uniform(-2, 2)
        U, _ = mnv.potentials(e, x, y, t, C)
        assert U == pytest.approx(mnv.enneper_closed_form(x, y, t, C), abs=1e-11)


def test_polar_form_at_blow_up_time():
    r, phi = 1.5, 0.3
    U = mnv.enneper_closed_form(r * math.cos(phi), r * math.sin(phi), 0.0, 0.0)
    assert U == pytest.approx(mnv.enneper_polar_form(r, phi), abs=1e-12)


def test_blow_up_point_raises():
    with pytest.raises(mnv.MnvError):
        mnv.potentials(mnv.Spinor.enneper(), 0.0, 0.0, 1.0, 1.0)


def test_s_tilde_vanishes_at_blow_up_point():
    S = mnv.s_tilde(mnv.Spinor.enneper(), 0j, 2.0, 2.0)
    assert abs(S[0][0] * S[1][1] - S[0][1] * S[1][0]) == 0.0


def test_double_inversion():
    p = (0.3, -2.0, 1.1)
    assert mnv.invert_point(mnv.invert_point(p)) == pytest.approx(p, rel=1e-12)


def test_residuals_and_order():
    r = mnv.verify_point(mnv.Spinor.enneper(), 0.5, -0.7, -0.3, 0.0)
    assert r["mnv_residual"] <= 1e-4
    assert r["constraint_residual"] <= 1e-4
    assert 1.7 <= r["mnv_order"] <= 2.3


def test_conserved_quantity():
    e = mnv.Spinor.enneper()
    assert mnv.l2_integral(e, 1.0, 0.0)["value"] == pytest.approx(3 * math.pi, abs=1e-3)
    assert mnv.l2_integral(e, 0.0, 0.0)["value"] == pytest.approx(2 * math.pi, abs=1e-3)


def test_custom_spinor():
    s = mnv.Spinor([0, 0, 1], [1])
    psi1, psi2 = s(1 + 1j)
    assert psi1 == pytest.approx((1 + 1j) ** 2)
    assert psi2 == pytest.approx(1.0)
    with pytest.raises(mnv.InvalidArgument):
        mnv.l2_integral(s, 0.0, 0.0, tol=-1.0)
