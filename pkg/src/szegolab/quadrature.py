"""Quadrature rules shared by the setting catalog.

All rules return ``(nodes, weights)`` pairs with any measure weight folded
into the weights, so ``weights @ f(nodes)`` approximates the integral.
"""

from __future__ import annotations

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .errors import AccuracyError, IntegrabilityError

_GL_CACHE: dict = {}
_JACOBI_CACHE: dict = {}


def gauss_legendre(order: int):
    if order not in _GL_CACHE:
        _GL_CACHE[order] = roots_legendre(order)
    return _GL_CACHE[order]


def legendre_panels(edges, order: int = 24):
    """Composite Gauss-Legendre nodes/weights over consecutive ``edges``."""
    edges = np.asarray(edges, dtype=float)
    xg, wg = gauss_legendre(order)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * np.diff(edges)
    nodes = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    weights = (half[:, None] * wg[None, :]).ravel()
    return nodes, weights


def geometric_edges(lo: float, first: float, hi: float, ratio: float = 2.0):
    """Panel edges [lo, lo+first, lo+first*ratio, ...] up to ``hi``."""
    edges = [lo]
    step = first
    while edges[-1] < hi:
        edges.append(min(edges[-1] + step, hi))
        step *= ratio
    return np.array(edges)


def jacobi_rule(order: int, alpha: float, lo: float = 0.0, hi: float = 1.0):
    """Nodes/weights for ``integral_lo^hi f(t) (1-t)^alpha dt`` with hi <= 1.

    The affine map keeps the (1-t)^alpha factor inside the weights, so the
    boundary behaviour at t=1 is integrated exactly; when ``hi < 1`` the
    remaining (1-t)^alpha piece is smooth and folded in explicitly.
    """
    if hi >= 1.0:
        key = (order, float(alpha))
        if key not in _JACOBI_CACHE:
            x, w = roots_jacobi(order, alpha, 0.0)
            if not (np.all(np.isfinite(x)) and np.all(np.isfinite(w))
                    and np.all(w > 0.0)):
                # roots_jacobi loses positivity for high orders at large alpha
                raise AccuracyError(
                    f"Gauss-Jacobi rule of order {order} is unstable for "
                    f"weight exponent {alpha}",
                    best=float("nan"), estimate=float("inf"))
            _JACOBI_CACHE[key] = (x, w)
        x, w = _JACOBI_CACHE[key]
        # t = lo + (1-lo)(x+1)/2, 1-t = (1-lo)(1-x)/2
        scale = 1.0 - lo
        t = lo + scale * 0.5 * (x + 1.0)
        weights = w * (scale * 0.5) ** (alpha + 1.0)
        return t, weights
    # interval strictly inside [0, 1): no endpoint singularity, so plain
    # Gauss-Legendre with the smooth (1-t)^alpha factor folded in
    x, w = gauss_legendre(order)
    t = lo + (hi - lo) * 0.5 * (x + 1.0)
    weights = w * (hi - lo) * 0.5 * (1.0 - t) ** alpha
    return t, weights


def jacobi_log_weights(order: int, alpha: float):
    """Jacobi rule on [0,1] returned as (t, log t, log w) for scaled sums.

    Used for integrals ``integral f(t) t^x (1-t)^alpha dt`` with large real
    order x: combining ``exp(log w + x log t - log B(x+1, alpha+1))`` keeps
    every term representable even when the bare products underflow.
    """
    t, w = jacobi_rule(order, alpha)
    with np.errstate(divide="ignore"):
        return t, np.log(t), np.log(w)


def periodic_grid(d: int, m: int):
    """Uniform tensor grid on [0, 2pi)^d with normalized Haar weights.

    Returns (theta, weights): theta has shape (d, m^d), weights sum to 1.
    The trapezoid rule on this grid integrates trigonometric polynomials of
    degree < m exactly against d theta/(2 pi)^d.
    """
    one = 2.0 * np.pi * np.arange(m) / m
    if d == 1:
        theta = one[None, :]
    else:
        grids = np.meshgrid(*([one] * d), indexing="ij")
        theta = np.stack([g.ravel() for g in grids])
    weights = np.full(theta.shape[1], 1.0 / theta.shape[1])
    return theta, weights


def refine_to_tolerance(evaluate, start: int, tol: float, *, max_doublings: int = 8,
                        what: str = "integral"):
    """Double a resolution parameter until two successive values agree.

    ``evaluate(m)`` returns the approximation at resolution ``m``.  Raises
    AccuracyError carrying the best value when the disagreement never drops
    below ``tol`` (absolute, relative to max(1, |value|)).
    """
    prev = evaluate(start)
    m = start
    err = float("inf")
    for _ in range(max_doublings):
        m *= 2
        cur = evaluate(m)
        err = abs(cur - prev)
        if err <= tol * max(1.0, abs(cur)):
            return cur, err
        prev = cur
    raise AccuracyError(f"{what} did not converge under refinement", prev, err)


def decay_window(f, *, start: float = 1.0, cap: float = 1e6, tol: float = 1e-15,
                 what: str = "integrand"):
    """Find T with |f| below tol*peak beyond T, scanning geometrically.

    Raises IntegrabilityError when no decay is seen before ``cap`` (the
    function is then treated as not effectively supported).
    """
    peak = 0.0
    t = start
    while t <= cap:
        probe = np.abs(np.asarray(f(np.array([t, 1.3 * t, 1.7 * t]))))
        peak = max(peak, float(probe.max()))
        inner = np.abs(np.asarray(f(np.linspace(0.0, t, 33))))
        peak = max(peak, float(inner.max()))
        if peak > 0 and float(probe.max()) <= tol * peak:
            return t
        if peak == 0.0 and t >= 64.0 * start:
            return t  # identically zero as far as probed
        t *= 2.0
    raise IntegrabilityError(
        f"{what} shows no decay out to {cap:g}; not effectively supported")


def boundary_exponent(g, *, k_lo: int = 8, k_hi: int = 26):
    """Estimate p with g(t) ~ C (1-t)^p as t -> 1 from dyadic probes.

    Probes below a relative noise floor are dropped so that quadrature-level
    jitter in tiny values cannot corrupt the slope estimate.
    """
    ks = np.arange(k_lo, k_hi)
    vals = np.abs(np.asarray(g(1.0 - 0.5 ** ks.astype(float))))
    good = vals > 1e-13 * max(vals.max(), 1e-300)
    if good.sum() < 4:
        return np.inf  # vanishes (or is pure noise) near the boundary
    ks = ks[good]
    vals = vals[good]
    slopes = np.diff(np.log2(vals)) / np.diff(ks)
    return float(-np.median(slopes))
