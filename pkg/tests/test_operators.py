import numpy as np
import pytest
from scipy.special import polygamma

import szegolab as sz
import szegolab.operators as ops
from szegolab.errors import ConfigError, DomainError, IntegrabilityError


def test_torus_tridiagonal_matrix():
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    op = ops.assemble_torus(sig, 1)
    expected = np.array([[2.0, 0.5, 0.0], [0.5, 2.0, 0.5], [0.0, 0.5, 2.0]])
    assert op.dim == 3
    assert np.allclose(op.matrix, expected, atol=1e-14)
    assert op.hermiticity_defect() <= 1e-14
    eigs = np.linalg.eigvalsh(op.matrix)
    assert np.allclose(sorted(eigs),
                       [2.0 - np.sqrt(2) / 2, 2.0, 2.0 + np.sqrt(2) / 2],
                       atol=1e-12)


def test_torus_two_dimensional():
    sig = sz.parse_symbol("3 + cos(theta1) + cos(theta2)", d=2)
    op = ops.assemble_torus(sig, 1, d=2)
    assert op.dim == 9
    assert op.trace() == pytest.approx(27.0, rel=1e-12)
    assert op.basis.kind == "exponentials"
    assert len(op.basis.labels) == 9


def test_torus_smooth_symbol_coefficients_stabilize():
    sig = sz.parse_symbol("exp(cos(theta1))", d=1)
    op = ops.assemble_torus(sig, 2)
    from scipy.special import i0
    # diagonal entries are the mean of the symbol
    assert op.trace() == pytest.approx(5.0 * i0(1.0), rel=1e-10)
    assert op.hermiticity_defect() <= 1e-12


def test_group_matches_character_sum():
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    op = ops.assemble_group(sig, (12,), 2)
    assert op.dim == 5
    vals = 2.0 + np.cos(2.0 * np.pi * np.arange(12) / 12.0)
    ks = [k for (k,) in op.basis.labels]
    direct = np.empty((5, 5), dtype=complex)
    for i, k in enumerate(ks):
        for j, l in enumerate(ks):
            phase = np.exp(-2j * np.pi * (k - l) * np.arange(12) / 12.0)
            direct[i, j] = np.mean(vals * phase)
    assert np.allclose(op.matrix, direct, atol=1e-12)


def test_bergman_polynomial_closed_form():
    sig = sz.parse_symbol("(1 - r2)^2")
    b = sz.make_setting("bergman")
    a = 4.0
    op = ops.assemble_bergman(sig, a)
    n = np.arange(op.dim)
    lam = (a + 1) * (a + 2) / ((n + a + 2) * (n + a + 3))
    assert np.max(np.abs(op.diagonal - lam)) <= 1e-10
    assert op.is_diagonal
    assert op.basis.kind == "monomials"


def test_bergman_quadrature_profile_matches_ratio_profile():
    a = 3.0
    poly = np.array([1.0, -2.0, 1.0])
    ratio = ops._beta_ratio_profile(poly, a)
    g = lambda t: (1.0 - np.asarray(t)) ** 2
    quadp = ops._bergman_quad_profile(g, a, 64)
    x = np.arange(0, 64, dtype=float)
    assert np.max(np.abs(ratio(x) - quadp(x))) <= 1e-10


def test_bergman_tail_telescopes():
    b = sz.make_setting("bergman")
    sig = sz.parse_symbol("(1 - r2)^2")
    a, N = 3.0, 40
    tail, residual = ops.bergman_trace_tail(b, sig.eval_radial, a, N)
    exact = (a + 1) * (a + 2) / (N + a + 2)
    assert tail == pytest.approx(exact, abs=1e-9)
    assert residual <= 1e-9


def test_fock_geometric_eigenvalues():
    sig = sz.parse_symbol("exp(-r2)")
    a = 4.0
    op = ops.assemble_fock(sig, a)
    n = np.arange(op.dim)
    q = a / (a + 1.0)
    assert np.max(np.abs(op.diagonal - q ** (n + 1))) <= 1e-12


def test_fock_tail_geometric():
    sig = sz.parse_symbol("exp(-r2)")
    a, N = 4.0, 30
    tail, _ = ops.fock_trace_tail(sig.eval_radial, a, N, 40.0)
    q = a / (a + 1.0)
    assert tail == pytest.approx(q ** (N + 1) / (1.0 - q), rel=1e-10)


def test_fock_rejects_unbounded_polynomial():
    sig = sz.parse_symbol("1 + r2")
    with pytest.raises(IntegrabilityError):
        ops.assemble_fock(sig, 2.0)


def test_bergman_rejects_slow_boundary_decay():
    sig = sz.parse_symbol("1")
    with pytest.raises(IntegrabilityError):
        ops.assemble_bergman(sig, 2.0)


def test_pw_assembly_and_trace():
    sig = sz.parse_symbol("exp(-x^2)")
    a = 2.0
    op = ops.assemble_paley_wiener(sig, a)
    assert op.basis.kind == "shifted_sinc"
    assert op.hermiticity_defect() <= 1e-12
    # block trace + exact overlap deficit recovers the full trace
    assert op.trace() == pytest.approx(2.0 * a * np.sqrt(np.pi), rel=1e-7)
    assert op.tail_estimate > 0.0


def test_pw_block_trace_converges_without_matrix():
    sig = sz.parse_symbol("exp(-x^2)")
    a = 2.0
    tr = ops.pw_block_trace(sig, a, 100000)
    assert tr / (2.0 * a) == pytest.approx(np.sqrt(np.pi), abs=1e-5)


def test_pw_overlap_deficit_properties():
    u = np.linspace(0.0, 3.0, 7)
    rho_small = ops.pw_overlap_deficit(u, 8)
    rho_large = ops.pw_overlap_deficit(u, 64)
    assert np.all(rho_small >= -1e-12)
    assert np.all(rho_large <= rho_small + 1e-12)
    # integer arguments sit on sinc zeros
    assert ops.pw_overlap_deficit(np.array([1.0]), 16)[0] == pytest.approx(
        0.0, abs=1e-14)


def test_pw_zero_symbol():
    sig = sz.parse_symbol("0")
    op = ops.assemble_paley_wiener(sig, 2.0)
    assert op.block_trace() == 0.0
    assert op.hermiticity_defect() == 0.0
    assert op.tail_estimate == 0.0


def test_pw_rejects_nonzero_constant():
    sig = sz.parse_symbol("1")
    with pytest.raises(IntegrabilityError):
        ops.assemble_paley_wiener(sig, 2.0)


def test_pw_band_too_small_for_window():
    sig = sz.parse_symbol("exp(-x^2)")
    with pytest.raises(ConfigError):
        ops.assemble_paley_wiener(sig, 4.0, K=2)


def test_profile_tail_sum_geometric():
    value, residual = ops.profile_tail_sum(
        lambda x: 2.0 ** (-np.asarray(x)), 10)
    assert abs(value - 2.0 ** -9) <= residual


def test_profile_tail_sum_power_law():
    value, residual = ops.profile_tail_sum(
        lambda x: (np.asarray(x) + 1.0) ** -4.0, 50)
    exact = polygamma(3, 51) / 6.0
    assert abs(value - exact) <= residual
    assert residual <= 1e-11


def test_profile_tail_sum_zero_profile():
    value, residual = ops.profile_tail_sum(
        lambda x: np.zeros(np.shape(x)), 10)
    assert value == 0.0 and residual == 0.0


def test_profile_tail_sum_rejects_non_decaying():
    with pytest.raises(IntegrabilityError):
        ops.profile_tail_sum(lambda x: np.ones(np.shape(x)) +
                             0.0 * np.asarray(x), 10)


def test_assemble_dispatcher_routes_by_kind():
    torus = sz.make_setting("torus", d=1)
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    op = ops.assemble(torus, sig, 1)
    assert op.basis.kind == "exponentials"
    bergman = sz.make_setting("bergman")
    r = sz.parse_symbol("(1 - r2)^2")
    assert ops.assemble(bergman, r, 2.0).basis.kind == "monomials"


def test_assemble_rejects_mismatched_symbol():
    bergman = sz.make_setting("bergman")
    trig = sz.parse_symbol("2 + cos(theta1)", d=1)
    with pytest.raises(DomainError):
        ops.assemble(bergman, trig, 2.0)


def test_export_text_metadata():
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    op = ops.assemble_torus(sig, 1)
    text = ops.export_text(op)
    assert "setting=torus" in text
    assert "basis=exponentials size=3" in text
    rows = [ln for ln in text.splitlines() if not ln.startswith("#")]
    assert len(rows) == 3


def test_truncation_tail_accessor():
    sig = sz.parse_symbol("exp(-r2)")
    op = ops.assemble_fock(sig, 4.0)
    assert ops.truncation_tail(op) == op.tail_estimate
    assert op.tail_estimate > 0.0
