"""Catalog of reproducing-kernel settings with normalized coherent frames.

Each setting packages: the base measure nu, the scaling constant c(alpha)
with d nu_alpha = c(alpha) d nu, the squared overlap |<k_x, k_y>|^2 of the
normalized kernel vectors, quadrature for nu- and nu_alpha-integrals, and
the off-ball kernel-mass diagnostic (the localization hypothesis behind the
limit theorems).

Catalog:

========== =============== ======================= ==========================
name       base measure    c(alpha)                squared overlap
========== =============== ======================= ==========================
torus^d    Haar dtheta     (2n+1)^d                prod_j (D_n(u_j)/(2n+1))^2
group      Haar (counting) |Gamma_N|               |sum_{xi in Gamma} xi(u)|^2
                                                    / |Gamma|^2
bergman    (1-|z|^2)^-2 dA alpha+1                 ((1-|z|^2)(1-|w|^2)
           (dA area/pi)                             / |1-conj(z)w|^2)^(alpha+2)
fock       dA (Lebesgue)   alpha/pi                exp(-alpha |z-w|^2)
paley-     dx              2 alpha                 sinc^2(2 alpha (x-y))
 wiener
========== =============== ======================= ==========================

D_n is the order-n Dirichlet kernel and sinc(u) = sin(pi u)/(pi u).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np
from scipy.special import sici

from . import quadrature as quad
from . import symbols as sym
from .errors import AccuracyError, DomainError, IntegrabilityError


@dataclass(frozen=True)
class SettingIndex:
    """Identifies a catalog member.

    kind: one of ``torus``, ``group``, ``bergman``, ``fock``, ``paley_wiener``;
    d: tensor dimension (torus); moduli: cyclic factors (group).
    """

    kind: str
    d: int = 1
    moduli: tuple = ()

    def __post_init__(self):
        if self.kind not in ("torus", "group", "bergman", "fock", "paley_wiener"):
            raise DomainError(f"unknown setting kind {self.kind!r}")
        if self.kind == "torus" and not (1 <= self.d <= 3):
            raise DomainError(f"torus dimension must be 1..3, got {self.d}")
        if self.kind == "group":
            if not self.moduli:
                raise DomainError("group setting needs cyclic moduli")
            if any(int(m) < 2 for m in self.moduli):
                raise DomainError(f"moduli must be >= 2, got {self.moduli}")


def _as_radial_callable(f) -> Callable:
    return f.eval_radial if isinstance(f, sym.Symbol) else f


def _as_theta_callable(f) -> Callable:
    return f.eval_theta if isinstance(f, sym.Symbol) else f


def _as_line_callable(f) -> Callable:
    return f.eval_line if isinstance(f, sym.Symbol) else f


def _wrap_angle(u):
    """Reduce angle differences into (-pi, pi]."""
    u = np.asarray(u, dtype=float)
    # leave in-range values untouched so the reduction is exactly odd
    wrapped = np.mod(u + np.pi, 2.0 * np.pi) - np.pi
    return np.where((u > np.pi) | (u <= -np.pi), wrapped, u)


def _dirichlet_ratio(u, n):
    """D_n(u) / (2n+1), stable through u = 0."""
    u = np.asarray(u, dtype=float)
    m = 2 * n + 1
    s = np.sin(0.5 * u)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.sin(0.5 * m * u) / (m * s)
    small = np.abs(s) < 1e-9
    if np.any(small):
        # series through the removable singularity
        us = np.where(small, _wrap_angle(u), 0.0)
        out = np.where(small, 1.0 - (m * m - 1.0) * us * us / 24.0, out)
    return out


def sinc2_mass_beyond(v):
    """integral_v^infinity sinc^2(s) ds, exact via the sine integral.

    Antiderivative: d/ds[-sin^2(pi s)/(pi^2 s)] = sinc^2(s) - sin(2 pi s)/(pi s).
    """
    v = np.asarray(v, dtype=float)
    si, _ = sici(2.0 * np.pi * v)
    return np.sin(np.pi * v) ** 2 / (np.pi ** 2 * v) + (0.5 * np.pi - si) / np.pi


class FrameSetting:
    """Common interface; subclasses fill the kernel/measure specifics."""

    index: SettingIndex
    name: str
    compact: bool          # nu finite (torus, group)
    default_alphas: tuple

    def validate_alpha(self, alpha):
        raise NotImplementedError

    def scaling_constant(self, alpha) -> float:
        raise NotImplementedError

    def kernel_overlap(self, alpha, x, y):
        raise NotImplementedError

    def integrate_base(self, f, region=None, tol: float = 1e-9) -> float:
        raise NotImplementedError

    def integrate_alpha(self, alpha, f, region=None, tol: float = 1e-9) -> float:
        """nu_alpha integral; Assumption (I) makes this c(alpha) * base."""
        return self.scaling_constant(alpha) * self.integrate_base(f, region, tol)

    def assumption2_tail(self, alpha, x, R) -> float:
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError


class TorusSetting(FrameSetting):
    def __init__(self, index: SettingIndex):
        self.index = index
        self.d = index.d
        self.name = f"torus^{self.d}" if self.d > 1 else "torus"
        self.compact = True
        self.default_alphas = (8, 16, 32, 64)

    def validate_alpha(self, alpha):
        n = int(alpha)
        if n != alpha or n < 1:
            raise DomainError(f"torus truncation order must be a positive "
                              f"integer, got {alpha!r}")
        return n

    def scaling_constant(self, alpha) -> float:
        n = self.validate_alpha(alpha)
        return float((2 * n + 1) ** self.d)

    def _check_point(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape[0] != self.d and x.ndim == 1 and self.d == 1:
            x = x[None, :]
        if x.ndim == 0:
            x = x[None]
        if x.shape[0] != self.d:
            raise DomainError(f"torus^{self.d} points need {self.d} angle "
                              f"coordinates, got shape {x.shape}")
        return x

    def kernel_overlap(self, alpha, x, y):
        n = self.validate_alpha(alpha)
        x = np.atleast_1d(np.asarray(x, dtype=float)).reshape(self.d, -1)
        y = np.atleast_1d(np.asarray(y, dtype=float)).reshape(self.d, -1)
        u = _wrap_angle(x - y)
        r = np.prod(_dirichlet_ratio(u, n), axis=0) ** 2
        return float(r[0]) if r.size == 1 else r

    def integrate_base(self, f, region=None, tol: float = 1e-9) -> float:
        g = _as_theta_callable(f)
        start = 256 if self.d == 1 else 64

        def at(m):
            theta, w = quad.periodic_grid(self.d, m)
            return float(np.dot(np.asarray(g(theta), dtype=float), w))

        value, _ = quad.refine_to_tolerance(at, start, tol, what="torus integral")
        return value

    def assumption2_tail(self, alpha, x, R) -> float:
        n = self.validate_alpha(alpha)
        if not (0.0 < R):
            raise DomainError(f"ball radius must be positive, got {R}")
        if self.d == 1:
            if R >= np.pi:
                return 0.0
            edges = np.linspace(R, np.pi, max(32, 2 * n))
            t, w = quad.legendre_panels(edges, order=12)
            dens = (2 * n + 1) * _dirichlet_ratio(t, n) ** 2
            return float(2.0 * np.dot(dens, w) / (2.0 * np.pi))
        m = 512 if self.d == 2 else 64
        theta, w = quad.periodic_grid(self.d, m)
        u = _wrap_angle(theta)
        outside = np.sqrt((u ** 2).sum(axis=0)) > R
        dens = (2 * n + 1) ** self.d * np.prod(_dirichlet_ratio(u, n), axis=0) ** 2
        return float(np.dot(dens * outside, w))

    def describe(self) -> dict:
        return {"name": self.name, "kind": "torus", "d": self.d,
                "measure": "normalized Haar d theta/(2 pi)^d",
                "c": "(2n+1)^d", "alpha": "truncation order n",
                "default_alphas": list(self.default_alphas)}


class GroupSetting(FrameSetting):
    """Finite product of cyclic groups; dual boxes Gamma_N = {-N..N}^d mod m."""

    def __init__(self, index: SettingIndex):
        self.index = index
        self.moduli = tuple(int(m) for m in index.moduli)
        self.d = len(self.moduli)
        self.name = "Z" + "x".join(str(m) for m in self.moduli)
        self.compact = True
        # grow the dual box up to the full dual of the largest factor
        full = max(self.moduli) // 2  # smallest N with 2N+1 >= m
        ladder = sorted({n for n in (1, 2, 4, 8, 16) if 2 * n + 1 < max(self.moduli)}
                        | {max(1, full)})
        self.default_alphas = tuple(ladder)

    @property
    def size(self) -> int:
        return int(np.prod(self.moduli))

    def validate_alpha(self, alpha):
        n = int(alpha)
        if n != alpha or n < 0:
            raise DomainError(f"dual box radius must be a nonnegative integer, "
                              f"got {alpha!r}")
        return n

    def dual_box(self, alpha):
        """Per-factor dual frequencies; the full dual once 2N+1 >= m."""
        n = self.validate_alpha(alpha)
        out = []
        for m in self.moduli:
            if 2 * n + 1 >= m:
                out.append(np.arange(m))
            else:
                out.append(np.arange(-n, n + 1))
        return out

    def scaling_constant(self, alpha) -> float:
        return float(np.prod([len(b) for b in self.dual_box(alpha)]))

    def _char_sum(self, alpha, u):
        """sum_{xi in Gamma_N} xi(u) for integer difference vectors u."""
        n = self.validate_alpha(alpha)
        u = np.asarray(u, dtype=int).reshape(self.d, -1)
        total = np.ones(u.shape[1])
        for j, m in enumerate(self.moduli):
            k = 2 * n + 1
            if k >= m:
                total = total * np.where(u[j] % m == 0, float(m), 0.0)
                continue
            # Dirichlet-type sum over k symmetric frequencies mod m
            ang = np.pi * (u[j] % m) / m
            s = np.sin(ang)
            with np.errstate(divide="ignore", invalid="ignore"):
                val = np.sin(k * ang) / s
            total = total * np.where(u[j] % m == 0, float(k), val)
        return total

    def kernel_overlap(self, alpha, x, y):
        x = np.asarray(x, dtype=int).reshape(self.d, -1)
        y = np.asarray(y, dtype=int).reshape(self.d, -1)
        g = self.scaling_constant(alpha)
        r = (self._char_sum(alpha, x - y) / g) ** 2
        return float(r[0]) if r.size == 1 else r

    def sample_symbol(self, f) -> np.ndarray:
        """Values of f on the group grid, shape = moduli."""
        if isinstance(f, sym.SampledGrid):
            if f.moduli != self.moduli:
                raise DomainError(f"sample moduli {f.moduli} != {self.moduli}")
            return f.values
        grids = np.meshgrid(*[2.0 * np.pi * np.arange(m) / m for m in self.moduli],
                            indexing="ij")
        theta = np.stack([g.ravel() for g in grids])
        g = _as_theta_callable(f)
        return np.asarray(g(theta), dtype=float).reshape(self.moduli)

    def integrate_base(self, f, region=None, tol: float = 1e-9) -> float:
        return float(self.sample_symbol(f).mean())

    def assumption2_tail(self, alpha, x, R) -> float:
        # group elements embedded at angles 2 pi x / m; geodesic l2 ball
        grids = np.meshgrid(*[np.arange(m) for m in self.moduli], indexing="ij")
        pts = np.stack([g.ravel() for g in grids])
        x = np.zeros(self.d, dtype=int) if x is None else np.asarray(x, dtype=int)
        ang = np.stack([_wrap_angle(2.0 * np.pi * (pts[j] - x[j]) / m)
                        for j, m in enumerate(self.moduli)])
        outside = np.sqrt((ang ** 2).sum(axis=0)) > R
        overlap = self.kernel_overlap(alpha, pts, np.tile(x[:, None], pts.shape[1]))
        c = self.scaling_constant(alpha)
        return float((np.atleast_1d(overlap) * outside).sum() * c / self.size)

    def describe(self) -> dict:
        return {"name": self.name, "kind": "group", "moduli": list(self.moduli),
                "measure": "normalized counting measure",
                "c": "|Gamma_N|", "alpha": "dual box radius N",
                "default_alphas": list(self.default_alphas)}


class BergmanSetting(FrameSetting):
    """Weighted Bergman spaces on the unit disk.

    H_alpha has reproducing kernel (1 - z conj(w))^-(alpha+2) against the
    probability measure (alpha+1)(1-|z|^2)^alpha dA, dA normalized on the
    disk.  nu = (1-|z|^2)^-2 dA and c(alpha) = alpha + 1.
    """

    def __init__(self, index: SettingIndex):
        self.index = index
        self.name = "bergman"
        self.compact = False
        self.default_alphas = (4.0, 16.0, 64.0, 256.0)

    def validate_alpha(self, alpha):
        a = float(alpha)
        if not (a > 0 and math.isfinite(a)):
            raise DomainError(f"bergman weight must be positive, got {alpha!r}")
        return a

    def scaling_constant(self, alpha) -> float:
        return self.validate_alpha(alpha) + 1.0

    def kernel_overlap(self, alpha, x, y):
        a = self.validate_alpha(alpha)
        z = np.atleast_1d(np.asarray(x, dtype=complex))
        w = np.atleast_1d(np.asarray(y, dtype=complex))
        if np.any(np.abs(z) >= 1.0) or np.any(np.abs(w) >= 1.0):
            raise DomainError("bergman points must lie inside the unit disk")
        # 1 - |phi_z(w)|^2 = (1-|z|^2)(1-|w|^2)/|1 - conj(z) w|^2, computed
        # without subtracting nearly equal quantities
        num = (1.0 - np.abs(z) ** 2) * (1.0 - np.abs(w) ** 2)
        den = np.abs(1.0 - np.conj(z) * w) ** 2
        r = (num / den) ** (a + 2.0)
        return float(r[0]) if r.size == 1 else r

    def integrate_base(self, f, region=None, tol: float = 1e-9) -> float:
        """integral g(t) (1-t)^-2 dt over t in [0,1) (radial profiles).

        Substitution t = v/(1+v) maps to integral_0^infinity g(v/(1+v)) dv,
        integrated on geometric panels in log scale; requires g to vanish
        at the boundary faster than (1-t) (otherwise nu-divergent).
        """
        g = _as_radial_callable(f)
        lo, hi = (0.0, 1.0) if region is None else region
        p = quad.boundary_exponent(g) if hi >= 1.0 else np.inf
        if p <= 1.0 + 1e-9:
            raise IntegrabilityError(
                f"symbol decays like (1-t)^{p:.3f} at the boundary; the "
                f"(1-t)^-2 base measure integral diverges")
        v_lo = lo / (1.0 - lo) if lo > 0 else 0.0
        if hi < 1.0:
            v_hi = hi / (1.0 - hi)
        elif math.isfinite(p):
            # truncation tail of the v-integral scales like v_hi^(1-p)
            v_hi = min(1.0e30, max(4.0e12, (10.0 / tol) ** (1.0 / (p - 1.0))))
        else:
            v_hi = 4.0e12

        def at(panels):
            first = max(v_lo, 1e-3) + 0.25
            if v_hi <= 2.0 * first:
                edges = np.linspace(v_lo, v_hi, panels + 1)
            else:
                edges = np.unique(np.concatenate(
                    [[v_lo], np.geomspace(first, v_hi, panels)]))
            v, w = quad.legendre_panels(edges, order=24)
            return float(np.dot(np.asarray(g(v / (1.0 + v)), dtype=float), w))

        value, _ = quad.refine_to_tolerance(at, 32, tol,
                                            what="bergman base integral")
        return value

    def weighted_profile_integral(self, alpha, f, tol: float = 1e-9) -> float:
        """integral g d mu_alpha = (alpha+1) integral_0^1 g(t) (1-t)^alpha dt."""
        a = self.validate_alpha(alpha)
        g = _as_radial_callable(f)

        def at(order):
            t, w = quad.jacobi_rule(order, a)
            return float((a + 1.0) * np.dot(np.asarray(g(t), dtype=float), w))

        value, _ = quad.refine_to_tolerance(at, 80, tol,
                                            what="bergman weighted integral")
        return value

    def assumption2_tail(self, alpha, x, R) -> float:
        """Kernel mass outside the hyperbolic ball of geodesic radius R.

        Mobius invariance pulls the ball to the origin with pseudo-
        hyperbolic radius s = tanh R; the integrand reduces to
        (alpha+1)(1-u)^alpha on u in [s^2, 1].
        """
        a = self.validate_alpha(alpha)
        if x is not None and np.any(np.abs(np.asarray(x, dtype=complex)) >= 1.0):
            raise DomainError("bergman center must lie inside the unit disk")
        if not R > 0:
            raise DomainError(f"ball radius must be positive, got {R}")
        s2 = np.tanh(float(R)) ** 2
        t, w = quad.jacobi_rule(96, a, lo=s2)
        return float((a + 1.0) * w.sum())

    def describe(self) -> dict:
        return {"name": self.name, "kind": "bergman",
                "measure": "(1-|z|^2)^-2 dA, dA normalized on the disk",
                "c": "alpha + 1", "alpha": "weight exponent alpha > 0",
                "default_alphas": list(self.default_alphas)}


class FockSetting(FrameSetting):
    """Gaussian-weighted entire functions on the plane; nu = Lebesgue area."""

    def __init__(self, index: SettingIndex):
        self.index = index
        self.name = "fock"
        self.compact = False
        self.default_alphas = (4.0, 16.0, 64.0, 256.0)

    def validate_alpha(self, alpha):
        a = float(alpha)
        if not (a > 0 and math.isfinite(a)):
            raise DomainError(f"fock weight must be positive, got {alpha!r}")
        return a

    def scaling_constant(self, alpha) -> float:
        return self.validate_alpha(alpha) / np.pi

    def kernel_overlap(self, alpha, x, y):
        a = self.validate_alpha(alpha)
        z = np.atleast_1d(np.asarray(x, dtype=complex))
        w = np.atleast_1d(np.asarray(y, dtype=complex))
        r = np.exp(-a * np.abs(z - w) ** 2)
        return float(r[0]) if r.size == 1 else r

    def radial_support(self, f, tol: float = 1e-15) -> float:
        g = _as_radial_callable(f)
        return quad.decay_window(g, start=4.0, cap=1e7, tol=tol,
                                 what="fock radial symbol")

    def integrate_base(self, f, region=None, tol: float = 1e-9) -> float:
        """integral f dA = pi * integral_0^infinity g(t) dt for radial f."""
        g = _as_radial_callable(f)
        if region is None:
            hi = self.radial_support(f)
            lo = 0.0
        else:
            lo, hi = region

        def at(panels):
            edges = np.unique(np.concatenate(
                [[lo], np.geomspace(max(lo, 1e-3) + 0.25, hi, panels)]))
            t, w = quad.legendre_panels(edges, order=24)
            return float(np.pi * np.dot(np.asarray(g(t), dtype=float), w))

        value, _ = quad.refine_to_tolerance(at, 32, tol, what="fock base integral")
        return value

    def assumption2_tail(self, alpha, x, R) -> float:
        """2 alpha integral_R^infinity r exp(-alpha r^2) dr, by quadrature."""
        a = self.validate_alpha(alpha)
        if not R > 0:
            raise DomainError(f"ball radius must be positive, got {R}")
        hi = float(R) + 40.0 / np.sqrt(a)
        edges = np.linspace(float(R), hi, 64)
        r, w = quad.legendre_panels(edges, order=12)
        return float(2.0 * a * np.dot(r * np.exp(-a * r * r), w))

    def describe(self) -> dict:
        return {"name": self.name, "kind": "fock",
                "measure": "Lebesgue area dA",
                "c": "alpha / pi", "alpha": "Gaussian weight alpha > 0",
                "default_alphas": list(self.default_alphas)}


class PaleyWienerSetting(FrameSetting):
    """Band limit [-alpha, alpha] on the line; nu = Lebesgue dx."""

    def __init__(self, index: SettingIndex):
        self.index = index
        self.name = "paley_wiener"
        self.compact = False
        self.default_alphas = (2.0, 4.0, 8.0, 16.0)

    def validate_alpha(self, alpha):
        a = float(alpha)
        if not (a > 0 and math.isfinite(a)):
            raise DomainError(f"band limit must be positive, got {alpha!r}")
        return a

    def scaling_constant(self, alpha) -> float:
        return 2.0 * self.validate_alpha(alpha)

    def kernel_overlap(self, alpha, x, y):
        a = self.validate_alpha(alpha)
        x = np.atleast_1d(np.asarray(x, dtype=float))
        y = np.atleast_1d(np.asarray(y, dtype=float))
        r = np.sinc(2.0 * a * (x - y)) ** 2
        return float(r[0]) if r.size == 1 else r

    def support_halfwidth(self, f, tol: float = 1e-15) -> float:
        g = _as_line_callable(f)
        two_sided = lambda t: np.maximum(np.abs(g(t)), np.abs(g(-t)))
        return quad.decay_window(two_sided, start=4.0, cap=1e7, tol=tol,
                                 what="paley-wiener symbol")

    def integrate_base(self, f, region=None, tol: float = 1e-9) -> float:
        g = _as_line_callable(f)
        if region is None:
            s = self.support_halfwidth(f)
            lo, hi = -s, s
        else:
            lo, hi = region

        def at(panels):
            edges = np.linspace(lo, hi, panels + 1)
            x, w = quad.legendre_panels(edges, order=16)
            return float(np.dot(np.asarray(g(x), dtype=float), w))

        value, _ = quad.refine_to_tolerance(at, 64, tol,
                                            what="paley-wiener base integral")
        return value

    def assumption2_tail(self, alpha, x, R) -> float:
        """Mass of 2 alpha sinc^2(2 alpha u) outside |u| <= R (exact form)."""
        a = self.validate_alpha(alpha)
        if not R > 0:
            raise DomainError(f"ball radius must be positive, got {R}")
        return float(2.0 * sinc2_mass_beyond(2.0 * a * float(R)))

    def describe(self) -> dict:
        return {"name": "paley-wiener", "kind": "paley_wiener",
                "measure": "Lebesgue dx",
                "c": "2 alpha", "alpha": "band limit alpha > 0",
                "default_alphas": list(self.default_alphas)}


_CLS = {"torus": TorusSetting, "group": GroupSetting, "bergman": BergmanSetting,
        "fock": FockSetting, "paley_wiener": PaleyWienerSetting}


def make_setting(index: Union[SettingIndex, str], **kw) -> FrameSetting:
    """Build a catalog setting from an index or a kind string."""
    if isinstance(index, str):
        index = SettingIndex(kind=index, **kw)
    return _CLS[index.kind](index)


def catalog() -> list:
    """Describe the five settings with representative parameters."""
    out = []
    for index in (SettingIndex("torus", d=1), SettingIndex("torus", d=2),
                  SettingIndex("group", moduli=(12,)),
                  SettingIndex("bergman"), SettingIndex("fock"),
                  SettingIndex("paley_wiener")):
        out.append(make_setting(index).describe())
    return out


def norms(setting: FrameSetting, sigma) -> dict:
    """L1(nu) norm by quadrature and the essential sup of |sigma|.

    Raises IntegrabilityError when the nu-integral of |sigma| diverges
    (e.g. boundary decay too slow against the hyperbolic measure).
    """
    lo, hi = sym.ess_bounds(sigma, setting.index.kind)
    linf = max(abs(lo), abs(hi))
    if setting.index.kind == "bergman":
        absf = lambda t: np.abs(sigma.eval_radial(t))
    elif setting.index.kind == "fock":
        absf = lambda t: np.abs(sigma.eval_radial(t))
    elif setting.index.kind == "paley_wiener":
        absf = lambda x: np.abs(sigma.eval_line(x))
    else:
        absf = lambda theta: np.abs(sigma.eval_theta(theta))
    return {"l1_nu": setting.integrate_base(absf), "linf": linf}


# module-level op aliases matching the contract vocabulary
def kernel_overlap(setting, alpha, x, y):
    return setting.kernel_overlap(alpha, x, y)


def scaling_constant(setting, alpha):
    return setting.scaling_constant(alpha)


def integrate_base(setting, f, region=None, tol: float = 1e-9):
    return setting.integrate_base(f, region=region, tol=tol)


def integrate_alpha(setting, alpha, f, region=None, tol: float = 1e-9):
    return setting.integrate_alpha(alpha, f, region=region, tol=tol)


def assumption2_tail(setting, alpha, x, R):
    return setting.assumption2_tail(alpha, x, R)
