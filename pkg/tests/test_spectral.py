import numpy as np
import pytest

import szegolab as sz
import szegolab.operators as ops
import szegolab.spectral as spc
from szegolab.errors import BasisMismatchError, DomainError


def torus_spectrum(with_vectors=False, interval=None):
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    op = ops.assemble_torus(sig, 1)
    return op, spc.eigen_decompose(op, with_vectors=with_vectors,
                                   interval=interval)


def test_eigenvalues_ascending_and_known():
    _, spec = torus_spectrum()
    assert np.all(np.diff(spec.eigenvalues) >= 0.0)
    assert np.allclose(spec.eigenvalues,
                       [2.0 - np.sqrt(2) / 2, 2.0, 2.0 + np.sqrt(2) / 2],
                       atol=1e-12)


def test_log_determinant():
    _, spec = torus_spectrum()
    # det = 2 * (4 - 1/2) = 7
    assert spc.trace_psi(spec, sz.parse_psi("log")) == pytest.approx(
        np.log(7.0), rel=1e-13)


def test_vectors_orthonormal_and_reconstruct():
    _, spec = torus_spectrum(with_vectors=True)
    assert spec.orthogonality_defect() <= 1e-12
    assert spec.reconstruction_error() <= 1e-9


def test_diagonal_fast_path():
    sig = sz.parse_symbol("exp(-r2)")
    op = ops.assemble_fock(sig, 4.0)
    spec = spc.eigen_decompose(op)
    assert spec.vectors is None
    assert np.all(np.diff(spec.eigenvalues) >= 0.0)
    assert spec.eigenvalues.max() == pytest.approx(4.0 / 5.0, rel=1e-12)


def test_clipping_to_interval():
    _, spec = torus_spectrum(interval=(1.5, 2.5))
    assert spec.eigenvalues.min() >= 1.5
    assert spec.eigenvalues.max() <= 2.5
    # largest excursion removed: (2 + sqrt(2)/2) - 2.5
    assert spec.clip_distance == pytest.approx(np.sqrt(2) / 2 - 0.5,
                                               rel=1e-10)


def test_containment_without_clipping():
    _, spec = torus_spectrum(interval=(0.9, 3.1))
    assert spec.clip_distance == 0.0


def test_trace_norm():
    _, spec = torus_spectrum()
    assert spec.trace_norm() == pytest.approx(6.0, rel=1e-12)


def test_weighted_trace_closed_form():
    a = 3.0
    sig = sz.parse_symbol("(1 - r2)^2")
    eta = sz.parse_symbol("(1 - r2)^3")
    op_s = ops.assemble_bergman(sig, a, n_cut=1)
    op_e = ops.assemble_bergman(eta, a, n_cut=1)
    spec = spc.eigen_decompose(op_s)
    got = spc.weighted_trace(spec, op_e, sz.parse_psi("id"))
    # mu_0 = (a+1)/(a+4), lambda_0 = (a+1)/(a+3)
    assert got == pytest.approx((a + 1) ** 2 / ((a + 3) * (a + 4)),
                                rel=1e-12)


def test_weighted_trace_full_diagonal():
    a = 3.0
    sig = sz.parse_symbol("(1 - r2)^2")
    eta = sz.parse_symbol("(1 - r2)^3")
    op_s = ops.assemble_bergman(sig, a)
    op_e = ops.assemble_bergman(eta, a)
    spec = spc.eigen_decompose(op_s)
    got = spc.weighted_trace(spec, op_e, sz.parse_psi("id"))
    n = np.arange(op_s.dim)
    lam = (a + 1) * (a + 2) / ((n + a + 2) * (n + a + 3))
    mu = (a + 1) * (a + 2) * (a + 3) / \
        ((n + a + 2) * (n + a + 3) * (n + a + 4))
    assert got == pytest.approx(float(np.sum(mu * lam)), rel=1e-12)


def test_weighted_trace_matrix_route():
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    eta = sz.parse_symbol("1 + sin(theta1)", d=1)
    op_s = ops.assemble_torus(sig, 2)
    op_e = ops.assemble_torus(eta, 2)
    spec = spc.eigen_decompose(op_s, with_vectors=True)
    got = spc.weighted_trace(spec, op_e, sz.parse_psi("x^2"))
    # tr(T_eta T_sigma^2) via dense algebra
    direct = float(np.real(np.trace(
        op_e.matrix @ np.linalg.matrix_power(op_s.matrix, 2))))
    assert got == pytest.approx(direct, rel=1e-11)


def test_weighted_trace_rejects_mismatched_bases():
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    op1 = ops.assemble_torus(sig, 1)
    op2 = ops.assemble_torus(sig, 2)
    spec = spc.eigen_decompose(op1)
    with pytest.raises(BasisMismatchError):
        spc.weighted_trace(spec, op2, sz.parse_psi("id"))


def test_trace_bounds_check():
    _, spec = torus_spectrum()
    psi = sz.parse_psi("log")
    out = spc.trace_bounds_check(spec, psi)
    assert out["ok"]
    assert abs(out["plain_value"]) <= out["plain_bound"] + 1e-12
    assert abs(out["weighted_value"]) <= out["weighted_bound"] + 1e-12
    # plain bound is dim * sup |psi| over the spectral interval
    assert out["plain_bound"] == pytest.approx(
        3.0 * np.log(2.0 + np.sqrt(2) / 2), rel=1e-6)


def test_psi_singularity_reported():
    sig = sz.parse_symbol("0")
    op = ops.assemble_paley_wiener(sig, 2.0)
    spec = spc.eigen_decompose(op)
    with pytest.raises(DomainError):
        spc.trace_psi(spec, sz.parse_psi("log"))


def test_spectrum_csv_format():
    _, spec = torus_spectrum()
    text = spec.to_csv()
    lines = text.strip().splitlines()
    assert lines[0] == "index,eigenvalue"
    assert len(lines) == 4
    assert float(lines[1].split(",")[1]) == pytest.approx(
        2.0 - np.sqrt(2) / 2, rel=1e-12)
