import numpy as np
import pytest

import szegolab as sz
import szegolab.frames as fr
import szegolab.quadrature as quad
from szegolab.errors import DomainError, IntegrabilityError


def test_make_setting_kinds():
    assert isinstance(fr.make_setting("torus", d=2), fr.TorusSetting)
    assert isinstance(fr.make_setting("group", moduli=(6, 4)), fr.GroupSetting)
    assert isinstance(fr.make_setting("bergman"), fr.BergmanSetting)
    assert isinstance(fr.make_setting("fock"), fr.FockSetting)
    assert isinstance(fr.make_setting("paley_wiener"), fr.PaleyWienerSetting)


def test_catalog_lists_five_kinds():
    kinds = {e["kind"] for e in fr.catalog()}
    assert kinds == {"torus", "group", "bergman", "fock", "paley_wiener"}


def test_scaling_constants():
    assert fr.make_setting("torus", d=1).scaling_constant(1) == 3.0
    assert fr.make_setting("torus", d=2).scaling_constant(1) == 9.0
    assert fr.make_setting("group", moduli=(12,)).scaling_constant(2) == 5.0
    assert fr.make_setting("bergman").scaling_constant(3.0) == 4.0
    assert fr.make_setting("fock").scaling_constant(np.pi) == \
        pytest.approx(1.0, rel=1e-15)
    assert fr.make_setting("paley_wiener").scaling_constant(3.0) == 6.0


def test_torus_overlap_dirichlet_value():
    s = fr.make_setting("torus", d=1)
    # |D_1(pi)/3|^2 = 1/9
    assert s.kernel_overlap(1, np.pi, 0.0) == pytest.approx(1.0 / 9.0,
                                                            rel=1e-12)
    assert s.kernel_overlap(1, 0.7, 0.7) == pytest.approx(1.0, rel=1e-14)


def test_torus_overlap_symmetric_bitwise():
    s = fr.make_setting("torus", d=1)
    assert s.kernel_overlap(3, 0.7, -1.1) == s.kernel_overlap(3, -1.1, 0.7)


def test_bergman_overlap_moebius_invariant_form():
    b = fr.make_setting("bergman")
    # ((1-|z|^2)(1-|w|^2)/|1 - z conj(w)|^2)^(alpha+2) at z=0.3, w=0
    assert b.kernel_overlap(2.0, 0.3, 0.0) == pytest.approx(0.91 ** 4,
                                                            rel=1e-12)
    za, wb = 0.3 + 0.1j, -0.5j
    assert b.kernel_overlap(2.0, za, wb) == b.kernel_overlap(2.0, wb, za)


def test_fock_overlap_gaussian():
    f = fr.make_setting("fock")
    assert f.kernel_overlap(2.0, 1.0, 0.0) == pytest.approx(np.exp(-2.0),
                                                            rel=1e-12)
    assert f.kernel_overlap(2.0, 1.0 + 1.0j, 1.0 + 1.0j) == \
        pytest.approx(1.0, rel=1e-14)


def test_pw_overlap_sinc_squared():
    p = fr.make_setting("paley_wiener")
    assert p.kernel_overlap(2.0, 0.125, 0.0) == pytest.approx(
        (np.sin(np.pi / 2) / (np.pi / 2)) ** 2, rel=1e-12)
    # zero of the sinc at a half-integer argument
    assert p.kernel_overlap(2.0, 0.25, 0.0) == pytest.approx(0.0, abs=1e-30)


def test_frame_normalization_torus():
    s = fr.make_setting("torus", d=1)
    th, w = quad.periodic_grid(1, 256)
    val = np.dot(s.kernel_overlap(1, th, np.zeros_like(th)), w) * \
        s.scaling_constant(1)
    assert val == pytest.approx(1.0, rel=1e-12)


def test_frame_normalization_bergman():
    b = fr.make_setting("bergman")
    a = 2.0
    val = b.scaling_constant(a) * b.integrate_base(
        lambda t: (1.0 - t) ** (a + 2.0))
    assert val == pytest.approx(1.0, rel=1e-9)


def test_bergman_tail_closed_form():
    b = fr.make_setting("bergman")
    # mass of the overlap outside a hyperbolic ball: (1 - tanh^2 R)^(alpha+1)
    for a in (1.0, 2.0, 4.0):
        for s2 in (0.25, 0.5, 0.75):
            R = np.arctanh(np.sqrt(s2))
            assert b.assumption2_tail(a, 0.0, R) == pytest.approx(
                (1.0 - s2) ** (a + 1.0), rel=1e-6)


def test_fock_tail_closed_form():
    f = fr.make_setting("fock")
    assert f.assumption2_tail(2.0, 0.0, np.sqrt(2.0)) == pytest.approx(
        np.exp(-4.0), rel=1e-6)


def test_pw_tail_bound():
    p = fr.make_setting("paley_wiener")
    tail = p.assumption2_tail(4.0, 0.0, 1.0)
    assert 0.0 < tail <= 1.0 / (np.pi ** 2 * 4.0)


@pytest.mark.parametrize("kind,kw", [("torus", {"d": 1}), ("bergman", {}),
                                     ("fock", {}), ("paley_wiener", {})])
def test_tail_monotone_in_radius(kind, kw):
    s = fr.make_setting(kind, **kw)
    alpha = 2 if kind == "torus" else 2.0
    radii = (0.5, 1.0, 2.0)
    tails = [s.assumption2_tail(alpha, 0.0, r) for r in radii]
    assert all(a >= b - 1e-12 for a, b in zip(tails, tails[1:]))


def test_validate_alpha_rejects_bad_values():
    with pytest.raises(DomainError):
        fr.make_setting("torus", d=1).validate_alpha(0)
    with pytest.raises(DomainError):
        fr.make_setting("torus", d=1).validate_alpha(2.5)
    with pytest.raises(DomainError):
        fr.make_setting("bergman").validate_alpha(-1.0)
    with pytest.raises(DomainError):
        fr.make_setting("fock").validate_alpha(0.0)


def test_group_setting_shape():
    g = fr.make_setting("group", moduli=(6, 4))
    assert g.d == 2
    assert g.size == 24
    box = g.dual_box(1)
    assert len(box) == 2
    assert all(list(axis) == [-1, 0, 1] for axis in box)


def test_group_sample_symbol():
    g = fr.make_setting("group", moduli=(12,))
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    vals = g.sample_symbol(sig)
    assert vals.shape == (12,)
    assert vals[0] == pytest.approx(3.0)
    assert vals[6] == pytest.approx(1.0)


def test_norms_torus():
    s = fr.make_setting("torus", d=1)
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    out = fr.norms(s, sig)
    assert out["l1_nu"] == pytest.approx(2.0, rel=1e-10)
    assert out["linf"] == pytest.approx(3.0, rel=1e-10)


def test_bergman_integrate_base_rejects_divergent():
    b = fr.make_setting("bergman")
    # (1-t)^0 against (1-t)^-2 dt diverges at the boundary
    one = sz.parse_symbol("1")
    with pytest.raises(IntegrabilityError):
        b.integrate_base(one)


def test_fock_integrate_base_gaussian():
    f = fr.make_setting("fock")
    g = sz.parse_symbol("exp(-r2)")
    # integral over the plane of e^{-|z|^2} = pi
    assert f.integrate_base(g) == pytest.approx(np.pi, rel=1e-9)


def test_pw_integrate_base_gaussian():
    p = fr.make_setting("paley_wiener")
    h = sz.parse_symbol("exp(-x^2)")
    assert p.integrate_base(h) == pytest.approx(np.sqrt(np.pi), rel=1e-9)
