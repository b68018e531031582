import numpy as np
import pytest

import szegolab as sz
import szegolab.berezin as brz
from szegolab.errors import DomainError


def test_torus_fejer_damping():
    # the transform of 2 + cos damps the first harmonic by 1 - 1/(2n+1)
    t = sz.make_setting("torus", d=1)
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    th = np.linspace(-np.pi, np.pi, 17)
    got = brz.berezin_transform(t, sig, 1, th)
    assert np.allclose(got, 2.0 + (2.0 / 3.0) * np.cos(th), atol=1e-13)


def test_group_full_dual_is_identity():
    g = sz.make_setting("group", moduli=(12,))
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    pts = np.arange(12)[None, :]
    got = brz.berezin_transform(g, sig, 6, pts)
    vals = 2.0 + np.cos(2.0 * np.pi * np.arange(12) / 12.0)
    assert np.allclose(got, vals, atol=1e-12)


def test_fock_gaussian_closed_form():
    f = sz.make_setting("fock")
    g = sz.parse_symbol("exp(-r2)")
    a = 2.0
    tr = brz.radial_transform(f, g, a)
    t = np.linspace(0.0, 6.0, 25)
    closed = a / (a + 1.0) * np.exp(-a * t / (a + 1.0))
    assert np.max(np.abs(tr(t) - closed)) <= 1e-8


@pytest.mark.parametrize("kind,symbol,alpha,x", [
    ("torus", "2 + cos(theta1)", 2, 0.8),
    ("bergman", "(1 - r2)^2", 4.0, 0.3 + 0.2j),
    ("fock", "exp(-r2)", 2.0, 0.5 + 0.5j),
    ("paley_wiener", "exp(-x^2)", 2.0, 0.7),
])
def test_cross_route_agreement(kind, symbol, alpha, x):
    s = sz.make_setting(kind)
    d = 1 if kind == "torus" else None
    sig = sz.parse_symbol(symbol, d=d)
    fast = brz.berezin_transform(s, sig, alpha, x)
    slow = brz.berezin_transform_quadrature(s, sig, alpha, x)
    assert fast == pytest.approx(slow, abs=2e-8)


def test_group_cross_route():
    g = sz.make_setting("group", moduli=(12,))
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    pt = np.array([2])
    fast = brz.berezin_transform(g, sig, 2, pt)
    slow = brz.berezin_transform_quadrature(g, sig, 2, pt)
    assert fast == pytest.approx(slow, abs=1e-12)


def test_bergman_point_outside_disk_rejected():
    b = sz.make_setting("bergman")
    r = sz.parse_symbol("(1 - r2)^2")
    with pytest.raises(DomainError):
        brz.berezin_transform(b, r, 4.0, 1.2)


def test_radial_transform_rejects_torus():
    t = sz.make_setting("torus", d=1)
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    with pytest.raises(DomainError):
        brz.radial_transform(t, sig, 2)


def test_contraction_sup_norm():
    t = sz.make_setting("torus", d=1)
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    out = brz.contraction_report(t, sig, 1, np.inf)
    assert out["p"] == "inf"
    assert out["lhs"] <= out["rhs"] + 1e-12
    assert out["lhs"] == pytest.approx(8.0 / 3.0, rel=1e-10)
    assert out["rhs"] == pytest.approx(3.0, rel=1e-10)


def test_contraction_l1_norm():
    t = sz.make_setting("torus", d=1)
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    out = brz.contraction_report(t, sig, 2, 1)
    assert out["p"] == "1"
    assert out["lhs"] <= out["rhs"] + 1e-8
    assert out["lhs"] == pytest.approx(2.0, rel=1e-8)


def test_contraction_fock_sup_exact():
    f = sz.make_setting("fock")
    g = sz.parse_symbol("exp(-r2)")
    out = brz.contraction_report(f, g, 1.0, np.inf)
    # transform of the Gaussian peaks at the origin with value 1/2
    assert out["lhs"] == pytest.approx(0.5, abs=1e-9)


def test_fubini_exchange():
    t = sz.make_setting("torus", d=1)
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    out = brz.fubini_check(t, sig, 2)
    assert out["transform_integral"] == pytest.approx(
        out["symbol_integral"], abs=1e-10)

    f = sz.make_setting("fock")
    g = sz.parse_symbol("exp(-r2)")
    out = brz.fubini_check(f, g, np.pi)
    assert out["transform_integral"] == pytest.approx(np.pi, rel=1e-7)


def test_fubini_paley_wiener():
    p = sz.make_setting("paley_wiener")
    h = sz.parse_symbol("exp(-x^2)")
    out = brz.fubini_check(p, h, 4.0)
    assert out["transform_integral"] == pytest.approx(np.sqrt(np.pi),
                                                      rel=1e-6)


def test_berezin_field_shape_and_csv():
    t = sz.make_setting("torus", d=1)
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    field = brz.berezin_field(t, sig, 2)
    assert field.window_mass == 1.0
    assert field.values.shape == field.sigma_values.shape
    csv = field.to_csv()
    assert csv.splitlines()[0] == "alpha,theta,sigma,sigma_tilde,abs_err"
    assert "np." not in csv


def test_exceedance_decreases_along_ladder():
    t = sz.make_setting("torus", d=1)
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    table = brz.convergence_in_measure(t, sig, [2, 4, 8, 16])
    meas = np.array(table["measures"])
    # at fixed epsilon the exceedance measure shrinks as alpha grows
    for col in range(meas.shape[1]):
        assert np.all(np.diff(meas[:, col]) <= 1e-12)
    assert table["epsilons"] == list(brz.DEFAULT_EPSILONS)


def test_exceedance_csv_format():
    t = sz.make_setting("torus", d=1)
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    table = brz.convergence_in_measure(t, sig, [2, 4])
    csv = brz.exceedance_csv(table)
    lines = csv.strip().splitlines()
    assert lines[0] == "alpha,epsilon,measure"
    assert len(lines) == 1 + 2 * len(brz.DEFAULT_EPSILONS)


def test_transform_stays_inside_symbol_range():
    # averaging cannot leave the closed convex hull of the range
    b = sz.make_setting("bergman")
    r = sz.parse_symbol("(1 - r2)^2")
    field = brz.berezin_field(b, r, 8.0)
    assert np.all(field.values >= -1e-10)
    assert np.all(field.values <= 1.0 + 1e-10)
