"""Berezin transforms and their diagnostic suite.

The transform of a symbol is its average against the squared kernel overlap,

    sigma~(x) = integral sigma(y) |<k_x, k_y>|^2 dnu_alpha(y),

computed by closed coefficient damping where the frame structure allows it
and by localized quadrature otherwise:

* torus^d: Fourier coefficients damped by the triangular (Fejer) factor
  prod_j (1 - |k_j|/(2n+1))_+; frequencies beyond 2n vanish identically.
* finite groups: DFT coefficients damped by the normalized autocorrelation
  of the dual-box indicator (identically 1 for the full dual).
* bergman (radial): Mobius pullback, a Jacobi-weighted average of the
  symbol along pseudo-hyperbolic circles.
* fock (radial): Gaussian radial convolution with the exponentially scaled
  Bessel factor i0e keeping all quantities bounded.
* paley-wiener: convolution against 2 alpha sinc^2(2 alpha u) on panels
  aligned with the sinc oscillation.

A slower overlap-integral route (berezin_transform_quadrature) provides an
independent cross-check used by the verification batteries.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.special import i0e

from . import frames
from . import operators as ops
from . import quadrature as quad
from . import symbols as sym
from .errors import AccuracyError, DomainError


# --- fast per-setting transforms ---------------------------------------------


def _fejer_weights(m: int, n: int) -> np.ndarray:
    """Triangular damping (1 - |k|/(2n+1))_+ on the FFT frequency layout."""
    k = np.fft.fftfreq(m, 1.0 / m)
    return np.clip(1.0 - np.abs(k) / (2.0 * n + 1.0), 0.0, None)


def _tensor_weights(w: np.ndarray, d: int) -> np.ndarray:
    out = w
    for _ in range(1, d):
        out = out[..., None] * w
    return out


class _TorusTransform:
    """Damped-coefficient trigonometric polynomial, exact for any symbol."""

    def __init__(self, sigma, d: int, n: int):
        C = ops._torus_coefficient_grid(sigma, d, n)
        m = C.shape[0]
        k_axis = np.fft.fftfreq(m, 1.0 / m).astype(int)
        keep = np.abs(k_axis) <= 2 * n
        damped = C * _tensor_weights(_fejer_weights(m, n), d)
        sel = np.ix_(*[np.flatnonzero(keep)] * d)
        block = np.asarray(damped[sel])
        ks = np.array(list(itertools.product(k_axis[keep], repeat=d)))
        cs = block.reshape(-1)
        nz = np.abs(cs) > 1e-16 * max(1.0, float(np.abs(cs).max()))
        self.d, self.n, self.m = d, n, m
        self.ks, self.cs = ks[nz], cs[nz]
        grid = np.fft.ifftn(damped) * m ** d
        scale = max(1.0, float(np.abs(grid).max()))
        if float(np.abs(grid.imag).max()) > 1e-10 * scale:
            raise AccuracyError("torus transform produced complex values",
                                best=float(grid.real.flat[0]),
                                estimate=float(np.abs(grid.imag).max()))
        self.grid_values = np.real(grid)

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        # match the frames convention: a 1-D array is a batch of angles
        # when d = 1 and a single d-coordinate point otherwise
        scalar = theta.ndim == 0 or (theta.ndim == 1 and self.d > 1)
        if theta.ndim == 0:
            theta = theta[None, None]
        elif theta.ndim == 1:
            theta = theta[None, :] if self.d == 1 else theta[:, None]
        out = np.real(np.exp(1j * (self.ks @ theta)).T @ self.cs)
        return float(out[0]) if scalar else out


class _GroupTransform:
    """Values of the damped symbol on the full group grid."""

    def __init__(self, sigma, setting, N: int):
        vals = setting.sample_symbol(sigma)
        F = np.fft.fftn(vals)
        damping = np.ones(())
        for ax, m in enumerate(setting.moduli):
            box = np.asarray(setting.dual_box(N)[ax]) % m
            ind = np.zeros(m)
            ind[box] = 1.0
            t = np.real(np.fft.ifft(np.abs(np.fft.fft(ind)) ** 2))
            shape = [1] * len(setting.moduli)
            shape[ax] = m
            damping = damping * (t / box.size).reshape(shape)
        grid = np.fft.ifftn(F * damping)
        scale = max(1.0, float(np.abs(grid).max()))
        if float(np.abs(grid.imag).max()) > 1e-10 * scale:
            raise AccuracyError("group transform produced complex values",
                                best=float(grid.real.flat[0]),
                                estimate=float(np.abs(grid.imag).max()))
        self.setting = setting
        self.values = np.real(grid)

    def as_symbol(self):
        return sym.sampled_symbol(self.values, self.setting.moduli)

    def __call__(self, x):
        x = np.atleast_1d(np.asarray(x))
        if x.ndim == 1:
            idx = tuple(int(v) % m for v, m in zip(x, self.setting.moduli))
            return float(self.values[idx])
        idx = tuple(np.asarray(row, dtype=int) % m
                    for row, m in zip(x, self.setting.moduli))
        return self.values[idx]


class _BergmanRadialTransform:
    """Mobius-pullback transform of a radial disk symbol, as a function of
    t = |z|^2:

        sigma~(t) = (alpha+1) integral_0^1 (1-u)^alpha
                    avg_theta g(q(t, u, theta)) du,
        q = (t + u - 2 sqrt(tu) cos theta) / (1 + tu - 2 sqrt(tu) cos theta).
    """

    def __init__(self, sigma, alpha: float, tol: float = 1e-9):
        self.g = sigma.eval_radial
        self.a = float(alpha)
        probes = np.array([0.0, 0.3, 0.9, 0.99])
        prev = None
        order, m = 96, 64
        for _ in range(5):
            self._set_rule(order, m)
            cur = self(probes)
            if prev is not None and float(np.abs(cur - prev).max()) <= \
                    tol * max(1.0, float(np.abs(cur).max())):
                return
            prev = cur
            order, m = 2 * order, 2 * m
        raise AccuracyError("bergman transform quadrature did not stabilize",
                            best=float(prev[0]),
                            estimate=float(np.abs(cur - prev).max()))

    def _set_rule(self, order: int, m: int):
        self.u, self.w = quad.jacobi_rule(order, self.a)
        self.cos_t = np.cos(2.0 * np.pi * np.arange(m) / m)

    def __call__(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.empty(t.shape)
        u, w, cos_t = self.u, self.w, self.cos_t
        for lo in range(0, t.size, 16):
            tc = t[lo:lo + 16, None, None]
            cross = 2.0 * np.sqrt(tc * u[None, :, None]) * cos_t[None, None, :]
            q = (tc + u[None, :, None] - cross) / \
                (1.0 + tc * u[None, :, None] - cross)
            vals = np.asarray(self.g(np.clip(q, 0.0, 1.0)), dtype=float)
            out[lo:lo + 16] = (self.a + 1.0) * (vals.mean(axis=2) @ w)
        return out


class _FockRadialTransform:
    """Gaussian radial smoothing of a radial plane symbol, t = |z|^2:

        sigma~(t) = 2 alpha integral_0^inf g(y^2) y
                    exp(-alpha (r-y)^2) i0e(2 alpha r y) dy,  r = sqrt(t).
    """

    def __init__(self, sigma, alpha: float, tol: float = 1e-9):
        setting = frames.make_setting("fock")
        self.g = sigma.eval_radial
        self.a = float(alpha)
        self.window_t = setting.radial_support(sigma)
        probes = np.array([0.0, 0.5, self.window_t * 0.5])
        density = 1
        prev = None
        for _ in range(5):
            self.density = density
            cur = self(probes)
            if prev is not None and float(np.abs(cur - prev).max()) <= \
                    tol * max(1.0, float(np.abs(cur).max())):
                return
            prev = cur
            density *= 2
        raise AccuracyError("fock transform quadrature did not stabilize",
                            best=float(prev[0]),
                            estimate=float(np.abs(cur - prev).max()))

    def __call__(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        a, g = self.a, self.g
        half = 14.0 / math.sqrt(a)
        y_g = math.sqrt(self.window_t) + half
        out = np.empty(t.shape)
        for i, ti in enumerate(t):
            r = math.sqrt(max(ti, 0.0))
            y_max = max(r + half, y_g)
            edges = np.unique(np.concatenate([
                np.linspace(0.0, y_max, 24 * self.density + 1),
                np.linspace(max(0.0, r - half), min(y_max, r + half),
                            28 * self.density + 1)]))
            y, w = quad.legendre_panels(edges, order=12)
            vals = (2.0 * a * np.asarray(g(y * y), dtype=float) * y
                    * np.exp(-a * (r - y) ** 2) * i0e(2.0 * a * r * y))
            out[i] = float(np.dot(vals, w))
        return out


class _PWTransform:
    """Convolution with 2 alpha sinc^2(2 alpha u) on oscillation-aligned
    panels over the symbol's effective support."""

    def __init__(self, sigma, alpha: float, tol: float = 1e-9, order: int = 12):
        setting = frames.make_setting("paley_wiener")
        self.a = float(alpha)
        self.W = setting.support_halfwidth(sigma)
        panels = int(math.ceil(2.0 * self.W * 2.0 * self.a)) + 1
        edges = np.linspace(-self.W, self.W, panels + 1)
        self.y, self.wts = quad.legendre_panels(edges, order=order)
        self.sig_w = np.asarray(sigma.eval_line(self.y), dtype=float) * self.wts
        check = quad.legendre_panels(edges, order=order + 8)
        probe = np.array([0.0, self.W * 0.5])
        ref = self._eval(probe, check[0],
                         np.asarray(sigma.eval_line(check[0]),
                                    dtype=float) * check[1])
        err = float(np.abs(self(probe) - ref).max())
        if err > tol * max(1.0, float(np.abs(ref).max())):
            raise AccuracyError("paley-wiener transform quadrature did not "
                                "stabilize", best=float(ref[0]), estimate=err)

    def _eval(self, x, y, sig_w):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty(x.shape)
        for lo in range(0, x.size, 64):
            xc = x[lo:lo + 64]
            kern = np.sinc(2.0 * self.a * (xc[:, None] - y[None, :])) ** 2
            out[lo:lo + 64] = 2.0 * self.a * (kern @ sig_w)
        return out

    def __call__(self, x):
        return self._eval(x, self.y, self.sig_w)


def radial_transform(setting, sigma, alpha, tol: float = 1e-9) -> Callable:
    """Radial/line transform callable (t = |z|^2 on disk/plane, x on line)."""
    kind = setting.index.kind
    if kind == "bergman":
        return _BergmanRadialTransform(sigma, alpha, tol)
    if kind == "fock":
        return _FockRadialTransform(sigma, alpha, tol)
    if kind == "paley_wiener":
        return _PWTransform(sigma, alpha, tol)
    raise DomainError(f"radial transforms exist for bergman/fock/paley_wiener,"
                      f" not {kind}")


def berezin_transform(setting, sigma, alpha, x):
    """sigma~^alpha at a point (or 1D array of points) of the setting.

    Points: angle vector theta (torus), integer tuple (group), complex z
    inside the disk (bergman) or in the plane (fock), real x (line).
    """
    kind = setting.index.kind
    if kind == "torus":
        n = setting.validate_alpha(alpha)
        return _TorusTransform(sigma, setting.d, n)(x)
    if kind == "group":
        N = setting.validate_alpha(alpha)
        return _GroupTransform(sigma, setting, N)(x)
    a = setting.validate_alpha(alpha)
    tr = radial_transform(setting, sigma, a)
    if kind == "paley_wiener":
        pts = np.atleast_1d(np.asarray(x, dtype=float))
    else:
        z = np.atleast_1d(np.asarray(x, dtype=complex))
        if kind == "bergman" and np.any(np.abs(z) >= 1.0):
            raise DomainError("bergman points must lie inside the unit disk")
        pts = np.abs(z) ** 2
    out = tr(pts)
    return float(out[0]) if np.ndim(x) == 0 else out


def berezin_transform_quadrature(setting, sigma, alpha, x,
                                 tol: float = 1e-8) -> float:
    """Direct overlap-integral route; slow, used for cross-validation."""
    kind = setting.index.kind
    if kind == "torus":
        n = setting.validate_alpha(alpha)
        point = np.asarray(x, dtype=float).reshape(setting.d, 1)
        f = lambda theta: (np.asarray(sigma.eval_theta(theta), dtype=float)
                           * setting.kernel_overlap(n, point, theta))
        return setting.integrate_alpha(n, f, tol=tol)
    if kind == "group":
        N = setting.validate_alpha(alpha)
        vals = setting.sample_symbol(sigma)
        pts = np.array(list(itertools.product(
            *[range(m) for m in setting.moduli]))).T
        x0 = np.atleast_1d(np.asarray(x, dtype=int))
        overlap = setting.kernel_overlap(N, pts,
                                         np.tile(x0[:, None], pts.shape[1]))
        c = setting.scaling_constant(N)
        return float(c * np.mean(vals.reshape(-1) * np.atleast_1d(overlap)))
    a = setting.validate_alpha(alpha)
    if kind == "bergman":
        z = complex(x)
        if abs(z) >= 1.0:
            raise DomainError("bergman points must lie inside the unit disk")
        t0 = abs(z) ** 2
        g = sigma.eval_radial

        def at(order):
            t, w = quad.jacobi_rule(order, a)
            theta = 2.0 * np.pi * np.arange(2 * order) / (2 * order)
            den = np.abs(1.0 - np.conj(z) * np.sqrt(t)[:, None]
                         * np.exp(1j * theta)[None, :]) ** 2
            ratio = ((1.0 - t0) / den) ** (a + 2.0)
            vals = np.asarray(g(t), dtype=float) * ratio.mean(axis=1)
            return float((a + 1.0) * np.dot(vals, w))

        value, _ = quad.refine_to_tolerance(at, 96, tol,
                                            what="bergman transform")
        return value
    if kind == "fock":
        z = complex(x)
        r = abs(z)
        g = sigma.eval_radial
        W = frames.make_setting("fock").radial_support(sigma)
        y_max = max(r, math.sqrt(W)) + 14.0 / math.sqrt(a)

        def at(panels):
            y, wy = quad.legendre_panels(np.linspace(0.0, y_max, panels + 1),
                                         order=12)
            phi = 2.0 * np.pi * np.arange(4 * panels) / (4 * panels)
            ang = np.exp(-a * (r * r + y[:, None] ** 2
                               - 2.0 * r * y[:, None] * np.cos(phi)[None, :]))
            vals = np.asarray(g(y * y), dtype=float) * y * ang.mean(axis=1)
            return float(2.0 * a * np.dot(vals, wy))

        value, _ = quad.refine_to_tolerance(at, 48, tol, what="fock transform")
        return value
    # paley-wiener: frequency route, independent of the sinc convolution
    x0 = float(x)
    W = setting.support_halfwidth(sigma)

    def at(panels):
        y, wy = quad.legendre_panels(np.linspace(-W, W, panels + 1), order=12)
        gv = np.asarray(sigma.eval_line(y), dtype=float) * wy
        xi, wxi = quad.legendre_panels(
            np.linspace(-2.0 * a, 2.0 * a, panels + 1), order=12)
        hat = np.exp(-2j * np.pi * y[None, :] * xi[:, None]) @ gv
        tri = 1.0 - np.abs(xi) / (2.0 * a)
        return float(np.real(np.dot(hat * tri * np.exp(2j * np.pi * x0 * xi),
                                    wxi)))

    panels0 = max(32, int(math.ceil(4.0 * a * (W + abs(x0)))))
    value, _ = quad.refine_to_tolerance(at, panels0, tol,
                                        what="paley-wiener transform")
    return value


# --- fields, contraction, convergence in measure -------------------------------


@dataclass(frozen=True, eq=False)
class BerezinField:
    """Transform values on a nu-weighted reference grid.

    ``points`` holds the grid in the setting's natural coordinate (theta
    columns, group index rows, radial t, or line x); ``weights`` are
    nu-weights of the covered window, so weights.sum() == window_mass.
    """

    setting: frames.FrameSetting
    alpha: float
    symbol_text: str
    coordinate: str
    points: np.ndarray
    weights: np.ndarray
    sigma_values: np.ndarray
    values: np.ndarray
    window_mass: float

    def exceedance(self, eps: float) -> float:
        mask = np.abs(self.values - self.sigma_values) > eps
        return float(self.weights[mask].sum())

    def sup_abs(self) -> float:
        return float(np.abs(self.values).max())

    def to_csv(self) -> str:
        header = f"alpha,{self.coordinate},sigma,sigma_tilde,abs_err"
        lines = [header]
        pts = self.points if self.points.ndim == 2 else self.points[None, :]
        for j in range(self.values.size):
            coord = ",".join(repr(float(v)) for v in pts[:, j])
            sig = float(self.sigma_values[j])
            val = float(self.values[j])
            lines.append(f"{float(self.alpha)!r},{coord},{sig!r},"
                         f"{val!r},{abs(val - sig)!r}")
        return "\n".join(lines) + "\n"


def berezin_field(setting, sigma, alpha, *, tol: float = 1e-9,
                  window: Optional[float] = None) -> BerezinField:
    """Evaluate the transform on the setting's reference grid.

    ``window`` bounds the grid on non-compact domains: radial v = t/(1-t)
    extent on the disk, radial t extent on the plane, |x| extent on the
    line.  The covered nu-mass is reported as window_mass.
    """
    kind = setting.index.kind
    if kind == "torus":
        n = setting.validate_alpha(alpha)
        tr = _TorusTransform(sigma, setting.d, n)
        m = tr.m
        theta, w = quad.periodic_grid(setting.d, m)
        sig = np.asarray(sigma.eval_theta(theta), dtype=float)
        return BerezinField(setting, float(n), sigma.text, "theta", theta, w,
                            sig, tr.grid_values.reshape(-1), 1.0)
    if kind == "group":
        N = setting.validate_alpha(alpha)
        tr = _GroupTransform(sigma, setting, N)
        pts = np.array(list(itertools.product(
            *[range(m) for m in setting.moduli]))).T
        sig = setting.sample_symbol(sigma).reshape(-1)
        w = np.full(sig.size, 1.0 / sig.size)
        text = sigma.text if hasattr(sigma, "text") else "<samples>"
        return BerezinField(setting, float(N), text, "x", pts, w, sig,
                            tr.values.reshape(-1), 1.0)
    a = setting.validate_alpha(alpha)
    tr = radial_transform(setting, sigma, a, tol)
    if kind == "bergman":
        v_w = window if window is not None else 64.0
        edges = np.unique(np.concatenate(
            [[0.0], np.geomspace(0.25, v_w, 160)]))
        v, w = quad.legendre_panels(edges, order=12)
        # zero-weight anchor so sup over the field sees the origin
        t = np.concatenate([[0.0], v / (1.0 + v)])
        w = np.concatenate([[0.0], w])
        sig = np.asarray(sigma.eval_radial(t), dtype=float)
        return BerezinField(setting, a, sigma.text, "t", t, w, sig, tr(t),
                            float(v_w))
    if kind == "fock":
        t_w = window if window is not None else \
            tr.window_t + 4.0 + 64.0 / a
        edges = np.unique(np.concatenate(
            [[0.0], np.geomspace(0.05, t_w, 160)]))
        t, w = quad.legendre_panels(edges, order=12)
        t = np.concatenate([[0.0], t])
        w = np.concatenate([[0.0], w])
        sig = np.asarray(sigma.eval_radial(t), dtype=float)
        return BerezinField(setting, a, sigma.text, "t", t, np.pi * w, sig,
                            tr(t), float(np.pi * t_w))
    x_w = window if window is not None else tr.W + 8.0
    x, w = quad.legendre_panels(np.linspace(-x_w, x_w, 240), order=8)
    x = np.concatenate([[0.0], x])
    w = np.concatenate([[0.0], w])
    order = np.argsort(x, kind="stable")
    x, w = x[order], w[order]
    sig = np.asarray(sigma.eval_line(x), dtype=float)
    return BerezinField(setting, a, sigma.text, "x", x, w, sig, tr(x),
                        float(2.0 * x_w))


def _pw_smoothed_integral(trf, fn, eta_line, W: float, alpha: float,
                          tol: float) -> float:
    """integral fn(sigma~(x)) eta(x) dx with the quadratic sinc^2 tail of
    sigma~ integrated on geometric panels out to where its mass is below
    tol."""
    V = W + 8.0 + 1.0 / (2.0 * math.pi ** 2 * alpha * max(tol, 1e-12))
    V = min(V, 1e9)

    def at(panels):
        inner = np.linspace(-(W + 4.0), W + 4.0, panels + 1)
        right = np.geomspace(W + 4.0, V, max(8, panels // 4))
        edges = np.unique(np.concatenate([-right[::-1], inner, right]))
        x, w = quad.legendre_panels(edges, order=12)
        vals = np.asarray(fn(trf(x)), dtype=float)
        if eta_line is not None:
            vals = vals * np.asarray(eta_line(x), dtype=float)
        return float(np.dot(vals, w))

    value, _ = quad.refine_to_tolerance(at, 32, max(tol, 1e-10),
                                        what="smoothed-symbol integral")
    return value


def _transform_l1(setting, sigma, alpha, tol: float) -> float:
    """integral |sigma~| dnu by the settings' own adaptive quadrature."""
    kind = setting.index.kind
    if kind == "torus":
        trf = _TorusTransform(sigma, setting.d, setting.validate_alpha(alpha))
        return setting.integrate_base(lambda th: np.abs(trf(th)), tol=tol)
    if kind == "group":
        trf = _GroupTransform(sigma, setting, setting.validate_alpha(alpha))
        return setting.integrate_base(sym.sampled_symbol(
            np.abs(trf.values), setting.moduli), tol=tol)
    a = setting.validate_alpha(alpha)
    trf = radial_transform(setting, sigma, a, tol)
    if kind == "paley_wiener":
        # sigma~ has quadratic sinc^2 tails; uniform panels over an
        # auto-detected window cannot resolve both bump and tail
        return _pw_smoothed_integral(trf, np.abs, None, trf.W, a, tol)
    return setting.integrate_base(lambda t: np.abs(trf(t)), tol=tol)


def contraction_report(setting, sigma, alpha, p, tol: float = 1e-8) -> dict:
    """(||sigma~||_p, ||sigma||_p) for p in {1, inf}; the caller asserts
    lhs <= rhs + tol."""
    if p in (1, "1"):
        lhs = _transform_l1(setting, sigma, alpha, tol)
        rhs = frames.norms(setting, sigma)["l1_nu"]
        return {"p": "1", "lhs": lhs, "rhs": rhs}
    if p in (np.inf, math.inf, "inf"):
        field = berezin_field(setting, sigma, alpha, tol=tol)
        lo, hi = sym.ess_bounds(sigma, setting.index.kind)
        return {"p": "inf", "lhs": field.sup_abs(),
                "rhs": max(abs(lo), abs(hi))}
    raise DomainError(f"contraction is asserted at p in {{1, inf}}, got {p!r}")


def fubini_check(setting, sigma, alpha, tol: float = 1e-8) -> dict:
    """(integral sigma~ dnu, integral sigma dnu); equal for sigma >= 0."""
    kind = setting.index.kind
    if kind == "torus":
        trf = _TorusTransform(sigma, setting.d, setting.validate_alpha(alpha))
        lhs = setting.integrate_base(lambda th: trf(th), tol=tol)
    elif kind == "group":
        trf = _GroupTransform(sigma, setting, setting.validate_alpha(alpha))
        lhs = setting.integrate_base(trf.as_symbol(), tol=tol)
    elif kind == "paley_wiener":
        a = setting.validate_alpha(alpha)
        trf = radial_transform(setting, sigma, a, tol)
        lhs = _pw_smoothed_integral(trf, lambda u: u, None, trf.W, a, tol)
    else:
        trf = radial_transform(setting, sigma,
                               setting.validate_alpha(alpha), tol)
        lhs = setting.integrate_base(lambda t: np.asarray(trf(t)), tol=tol)
    rhs = setting.integrate_base(sigma, tol=tol)
    return {"transform_integral": lhs, "symbol_integral": rhs}


DEFAULT_EPSILONS = (0.2, 0.1, 0.05, 0.02)


def convergence_in_measure(setting, sigma, alphas, *, grid=None,
                           epsilons=DEFAULT_EPSILONS,
                           tol: float = 1e-9) -> dict:
    """nu-measure of {x : |sigma~^alpha(x) - sigma(x)| > eps} per alpha.

    Non-compact settings restrict to a finite reference window whose
    nu-mass is reported alongside; ``grid`` overrides the window extent.
    """
    rows = []
    masses = []
    counts = []
    for alpha in alphas:
        field = berezin_field(setting, sigma, alpha, tol=tol, window=grid)
        rows.append([field.exceedance(eps) for eps in epsilons])
        masses.append(field.window_mass)
        counts.append(int(field.values.size))
    return {
        "alphas": [float(setting.validate_alpha(a)) for a in alphas],
        "epsilons": [float(e) for e in epsilons],
        "measures": rows,
        "window_mass": masses,
        "grid_points": counts,
    }


def exceedance_csv(table: dict) -> str:
    lines = ["alpha,epsilon,measure"]
    for a, row in zip(table["alphas"], table["measures"]):
        for eps, m in zip(table["epsilons"], row):
            lines.append(f"{a!r},{eps!r},{m!r}")
    return "\n".join(lines) + "\n"
