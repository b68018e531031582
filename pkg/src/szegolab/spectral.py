"""Eigendecomposition and trace functionals of truncated operators.

trace_psi evaluates sum psi(lambda_i) over a finite block; weighted_trace
pairs a second operator against the spectral projections of the first, which
requires both to live in the same declared basis (simultaneous
diagonalizability for the diagonal fast path, eigenvectors otherwise).
trace_bounds_check asserts the generic trace bounds

    |tr psi(A)| <= dim * sup |psi|   and   |tr(A psi(A))| <= ||A||_1 * sup |psi|

with the sup taken over the (clipped) spectral interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BasisMismatchError, DomainError
from .operators import TruncatedOperator


@dataclass(frozen=True, eq=False)
class Spectrum:
    operator: TruncatedOperator
    eigenvalues: np.ndarray                  # ascending
    basis_order: Optional[np.ndarray] = None  # diagonal ops: eigenvalue per basis label
    vectors: Optional[np.ndarray] = None      # columns, aligned with eigenvalues
    clip_distance: float = 0.0                # largest excursion removed by clipping

    @property
    def size(self) -> int:
        return self.eigenvalues.size

    @property
    def min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def max(self) -> float:
        return float(self.eigenvalues[-1])

    def trace_norm(self) -> float:
        """Block trace norm plus the operator's stored tail mass."""
        return float(np.abs(self.eigenvalues).sum()
                     + abs(self.operator.tail_estimate))

    def orthogonality_defect(self) -> float:
        if self.vectors is None:
            return 0.0
        V = self.vectors
        G = V.conj().T @ V
        return float(np.abs(G - np.eye(G.shape[0])).max())

    def reconstruction_error(self) -> float:
        """max |V diag(lambda) V* - M|; 0 for diagonal fast-path operators."""
        if self.operator.is_diagonal:
            return 0.0
        if self.vectors is None:
            raise DomainError("reconstruction check needs eigenvectors; "
                              "decompose with with_vectors=True")
        M = (self.vectors * self.eigenvalues[None, :]) @ self.vectors.conj().T
        return float(np.abs(M - self.operator.matrix).max())

    def to_csv(self) -> str:
        lines = ["index,eigenvalue"]
        lines += [f"{i},{float(v)!r}" for i, v in enumerate(self.eigenvalues)]
        return "\n".join(lines) + "\n"


def eigen_decompose(op: TruncatedOperator, with_vectors: bool = False,
                    interval=None) -> Spectrum:
    """Full spectrum of the block, ascending.

    Diagonal operators bypass the solver (their basis is already the
    eigenbasis, so ``vectors`` stays None and ``basis_order`` keeps the
    stored diagonal).  ``interval=(lo, hi)`` clips eigenvalues into the
    admissible range and records the largest excursion in clip_distance.
    """
    if op.is_diagonal:
        basis_order = np.asarray(op.diagonal, dtype=float)
        eigenvalues = np.sort(basis_order)
        vectors = None
    else:
        basis_order = None
        if with_vectors:
            eigenvalues, vectors = np.linalg.eigh(op.matrix)
        else:
            eigenvalues, vectors = np.linalg.eigvalsh(op.matrix), None
        if not np.all(np.isfinite(eigenvalues)):
            cond = float(np.abs(op.matrix).max())
            raise DomainError(f"eigensolver returned non-finite values "
                              f"(matrix max entry {cond:g})")
    clip = 0.0
    if interval is not None:
        lo, hi = float(interval[0]), float(interval[1])
        clip = float(max(0.0, lo - eigenvalues[0], eigenvalues[-1] - hi))
        eigenvalues = np.clip(eigenvalues, lo, hi)
        if basis_order is not None:
            basis_order = np.clip(basis_order, lo, hi)
    return Spectrum(operator=op, eigenvalues=eigenvalues,
                    basis_order=basis_order, vectors=vectors,
                    clip_distance=clip)


def _psi_values(psi, eigenvalues: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.asarray(psi(eigenvalues), dtype=float)
    if not np.all(np.isfinite(vals)):
        bad = int(np.flatnonzero(~np.isfinite(vals))[0])
        raise DomainError(f"psi '{psi.name}' is undefined at eigenvalue "
                          f"{eigenvalues.flat[bad]!r} (index {bad})")
    return vals


def trace_psi(spec: Spectrum, psi) -> float:
    """sum_i psi(lambda_i) over the block spectrum."""
    return float(np.sum(_psi_values(psi, spec.eigenvalues)))


def weighted_trace(spec_sigma: Spectrum, op_eta: TruncatedOperator,
                   psi) -> float:
    """sum_n <T_eta phi_n, phi_n> psi(lambda_n) over the block.

    Both operators must share the basis descriptor; diagonal pairs sum in
    basis order, matrix pairs use the eigenvectors of the first operator.
    """
    op_sigma = spec_sigma.operator
    if not op_sigma.basis.matches(op_eta.basis):
        raise BasisMismatchError(
            f"operators live in different bases: {op_sigma.basis.kind} "
            f"(size {op_sigma.dim}) vs {op_eta.basis.kind} (size {op_eta.dim})")
    if op_sigma.is_diagonal and op_eta.is_diagonal:
        psi_vals = _psi_values(psi, spec_sigma.basis_order)
        return float(np.dot(np.asarray(op_eta.diagonal, dtype=float), psi_vals))
    V = spec_sigma.vectors
    if V is None:
        V = eigen_decompose(op_sigma, with_vectors=True).vectors
    if op_eta.is_diagonal:
        quad_forms = (np.abs(V) ** 2).T @ np.asarray(op_eta.diagonal,
                                                     dtype=float)
    else:
        quad_forms = np.real(np.einsum("ij,ij->j", V.conj(), op_eta.matrix @ V))
    psi_vals = _psi_values(psi, spec_sigma.eigenvalues)
    return float(np.dot(quad_forms, psi_vals))


def trace_bounds_check(spec: Spectrum, psi) -> dict:
    """Both sides of the generic trace bounds; never raises on violation."""
    lo, hi = spec.min, spec.max
    sup = psi.sup_abs(lo, hi)
    psi_vals = _psi_values(psi, spec.eigenvalues)
    plain_value = float(np.sum(psi_vals))
    plain_bound = spec.size * sup
    weighted_value = float(np.dot(spec.eigenvalues, psi_vals))
    weighted_bound = float(np.abs(spec.eigenvalues).sum()) * sup
    slack = 1e-10 * (1.0 + plain_bound + weighted_bound)
    return {
        "plain_value": plain_value,
        "plain_bound": plain_bound,
        "weighted_value": weighted_value,
        "weighted_bound": weighted_bound,
        "ok": bool(abs(plain_value) <= plain_bound + slack
                   and abs(weighted_value) <= weighted_bound + slack),
    }
