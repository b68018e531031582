"""Symbols (multiplication functions) and trace test functions psi.

A symbol is parsed from the expression language and classified by
structure, which downstream layers use to pick fast paths:

* ``TrigPolynomial`` -- finite Fourier support on the torus / finite groups;
* ``Radial`` -- function of t = |z|^2 on the disk or plane;
* ``ClosedForm`` -- anything else expressible in the grammar;
* ``SampledGrid`` -- explicit samples (finite groups, tabulated data).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import expr as ex
from .errors import AccuracyError, DomainError, ParseError

_THETA_NAMES = tuple(f"theta{i}" for i in range(1, 10))


@dataclass(frozen=True, eq=False)
class Symbol:
    """Base class; concrete structure lives in the subclasses."""

    text: str
    tree: Optional[ex.Expr]
    vars: frozenset

    @property
    def is_constant(self) -> bool:
        return self.tree is not None and not self.vars

    def constant_value(self) -> Optional[float]:
        if self.is_constant:
            return float(ex.evaluate(self.tree, {}))
        return None

    # canonical coordinate evaluations ------------------------------------
    def eval_theta(self, theta: np.ndarray) -> np.ndarray:
        """Evaluate at angles; theta has shape (d, ...)."""
        theta = np.atleast_2d(np.asarray(theta, dtype=float))
        env = {name: theta[i] for i, name in enumerate(_THETA_NAMES[: theta.shape[0]])}
        return np.broadcast_to(np.asarray(ex.evaluate(self.tree, env), dtype=float),
                               theta.shape[1:]).copy()

    def eval_radial(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return np.broadcast_to(np.asarray(ex.evaluate(self.tree, {"r2": t}),
                                          dtype=float), t.shape).copy()

    def eval_line(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.broadcast_to(np.asarray(ex.evaluate(self.tree, {"x": x}),
                                          dtype=float), x.shape).copy()


@dataclass(frozen=True, eq=False)
class TrigPolynomial(Symbol):
    d: int = 1
    coeffs: dict = field(default_factory=dict)  # {k tuple: complex}
    degree: int = 0

    def coefficient(self, k) -> complex:
        key = tuple(int(v) for v in np.atleast_1d(k))
        return self.coeffs.get(key, 0.0 + 0.0j)


@dataclass(frozen=True, eq=False)
class Radial(Symbol):
    poly: Optional[np.ndarray] = None  # monomial coefficients in t when polynomial

    def profile(self) -> Callable[[np.ndarray], np.ndarray]:
        return self.eval_radial


@dataclass(frozen=True, eq=False)
class ClosedForm(Symbol):
    pass


@dataclass(frozen=True, eq=False)
class SampledGrid(Symbol):
    values: np.ndarray = None
    moduli: tuple = ()

    def sample(self) -> np.ndarray:
        return self.values


def _detect_trig(tree, text, d):
    """FFT-based detection of finite Fourier support in d angle variables."""

    def coeffs_at(m):
        theta, _ = _tensor_angles(d, m)
        vals = np.asarray(ex.evaluate(tree, {name: theta[i] for i, name in
                                             enumerate(_THETA_NAMES[:d])}), dtype=float)
        vals = np.broadcast_to(vals, theta.shape[1:])
        return np.fft.fftn(vals.reshape((m,) * d)) / m**d

    m = 128
    c1 = coeffs_at(m)
    c2 = coeffs_at(2 * m)
    scale = max(1.0, np.abs(c2).max())
    # the low |k| < m/2 coefficients must agree between the two grids
    fine_sel = np.ix_(*[np.r_[0: m // 2, 2 * m - m // 2: 2 * m]] * d)
    coarse_sel = np.ix_(*[np.r_[0: m // 2, m - m // 2: m]] * d)
    if np.abs(c2[fine_sel] - c1[coarse_sel]).max() > 1e-9 * scale:
        return None
    # frequencies beyond a quarter of the fine grid must vanish
    freqs = np.fft.fftfreq(2 * m, 1.0 / (2 * m)).astype(int)
    big = np.abs(freqs) > m // 2
    for axis in range(d):
        slicer = [slice(None)] * d
        slicer[axis] = big
        if np.abs(c2[tuple(slicer)]).max() > 1e-10 * scale:
            return None
    keep = np.abs(c2) > 1e-11 * scale
    keys = np.argwhere(keep)
    coeffs = {}
    degree = 0
    for key in keys:
        k = tuple(int(freqs[i]) for i in key)
        coeffs[k] = complex(c2[tuple(key)])
        degree = max(degree, max(abs(v) for v in k))
    return TrigPolynomial(text=text, tree=tree, vars=ex.variables(tree), d=d,
                          coeffs=coeffs, degree=degree)


def _tensor_angles(d, m):
    one = 2.0 * np.pi * np.arange(m) / m
    if d == 1:
        return one[None, :], None
    grids = np.meshgrid(*([one] * d), indexing="ij")
    return np.stack([g.ravel() for g in grids]), None


def parse_symbol(text: str, d: Optional[int] = None) -> Symbol:
    """Parse and classify a symbol expression.

    ``d`` fixes the number of angle variables for torus/group symbols; when
    omitted it is inferred from the highest ``theta<k>`` present.
    """
    tree = ex.parse(text)
    vars_ = ex.variables(tree)
    thetas = sorted(v for v in vars_ if v.startswith("theta"))
    if thetas and (vars_ - set(thetas)):
        raise ParseError(f"cannot mix angle variables with {sorted(vars_ - set(thetas))}", 0)
    if thetas:
        dim = d or max(int(v[5:]) for v in thetas)
        if max(int(v[5:]) for v in thetas) > dim:
            raise DomainError(f"symbol uses theta{max(int(v[5:]) for v in thetas)} "
                              f"but d={dim}")
        trig = _detect_trig(tree, text, dim)
        if trig is not None:
            return trig
        return ClosedForm(text=text, tree=tree, vars=vars_)
    if vars_ == {"r2"}:
        poly = ex.polynomial_coefficients(tree, "r2")
        return Radial(text=text, tree=tree, vars=vars_, poly=poly)
    if vars_ == {"x"}:
        return ClosedForm(text=text, tree=tree, vars=vars_)
    if not vars_:
        val = float(ex.evaluate(tree, {}))
        return Radial(text=text, tree=tree, vars=vars_, poly=np.array([val]))
    raise ParseError(f"unsupported variable mix {sorted(vars_)}", 0)


def sampled_symbol(values: np.ndarray, moduli) -> SampledGrid:
    """Wrap explicit group samples (shape = moduli) as a symbol."""
    values = np.asarray(values, dtype=float)
    moduli = tuple(int(m) for m in moduli)
    if values.shape != moduli:
        raise DomainError(f"sample shape {values.shape} != moduli {moduli}")
    return SampledGrid(text="<samples>", tree=None, vars=frozenset(),
                       values=values, moduli=moduli)


def fourier_coefficient(sym: Symbol, k, m: int = 512) -> complex:
    """Fourier coefficient hat(sigma)(k) against normalized Haar measure."""
    k = tuple(int(v) for v in np.atleast_1d(k))
    if isinstance(sym, TrigPolynomial):
        return sym.coefficient(k)
    if isinstance(sym, SampledGrid):
        C = np.fft.fftn(sym.values) / sym.values.size
        return complex(C[tuple(ki % mi for ki, mi in zip(k, sym.moduli))])
    d = len(k)

    def coef(m_):
        theta, _ = _tensor_angles(d, m_)
        vals = sym.eval_theta(theta).reshape((m_,) * d)
        C = np.fft.fftn(vals) / m_**d
        return complex(C[tuple(ki % m_ for ki in k)])

    m = max(m, 8 * (max(abs(v) for v in k) + 1))
    c1, c2 = coef(m), coef(2 * m)
    if abs(c2 - c1) > 1e-10 * max(1.0, abs(c2)):
        raise AccuracyError("Fourier coefficient did not stabilize under grid "
                            "doubling", c2.real, abs(c2 - c1))
    return c2


def ess_bounds(sym: Symbol, kind: str, *, grid: int = 8192,
               radial_hi: float = None) -> tuple:
    """Essential inf/sup over the setting's domain (grid + parabolic refine)."""
    if isinstance(sym, SampledGrid):
        return float(sym.values.min()), float(sym.values.max())
    if kind in ("torus", "group"):
        d = max([int(v[5:]) for v in sym.vars if v.startswith("theta")], default=1)
        m = int(round(grid ** (1.0 / d)))
        theta, _ = _tensor_angles(d, max(m, 32))
        vals = sym.eval_theta(theta)
        if d == 1:
            return (_refine_min(lambda a: sym.eval_theta(a[None, :]), theta[0], vals),
                    -_refine_min(lambda a: -sym.eval_theta(a[None, :]), theta[0], -vals))
        return float(vals.min()), float(vals.max())
    if kind in ("bergman", "fock"):
        if kind == "bergman":
            t = 1.0 - np.geomspace(1e-12, 1.0, grid)[::-1]
        else:
            hi = radial_hi if radial_hi is not None else 64.0
            t = np.linspace(0.0, hi, grid)
        vals = sym.eval_radial(t)
        return (_refine_min(sym.eval_radial, t, vals),
                -_refine_min(lambda a: -sym.eval_radial(a), t, -vals))
    if kind == "paley_wiener":
        hi = radial_hi if radial_hi is not None else 64.0
        x = np.linspace(-hi, hi, grid)
        vals = sym.eval_line(x)
        return (_refine_min(sym.eval_line, x, vals),
                -_refine_min(lambda a: -sym.eval_line(a), x, -vals))
    raise DomainError(f"unknown setting kind {kind!r}")


def _refine_min(f, x, vals) -> float:
    """Local refinement around the best grid point (bounded 1D search)."""
    from scipy.optimize import minimize_scalar

    i = int(np.argmin(vals))
    best = float(vals[i])
    lo = x[max(i - 1, 0)]
    hi = x[min(i + 1, len(x) - 1)]
    if hi <= lo:
        return best
    res = minimize_scalar(lambda s: float(f(np.array([s]))[0]),
                          bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-12})
    return min(best, float(res.fun))


def is_nonnegative(sym: Symbol, kind: str) -> bool:
    return ess_bounds(sym, kind)[0] >= -1e-12


# --- trace test functions ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class PsiFunction:
    """Test function applied to the spectrum.

    ``convex``/``concave`` are None when unknown (custom expressions); the
    sandwich checks are skipped in that case.
    """

    name: str
    fn: Callable[[np.ndarray], np.ndarray]
    convex: Optional[bool]
    concave: Optional[bool]
    shift: float = 0.0

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))

    def at_zero(self) -> float:
        with np.errstate(divide="ignore", invalid="ignore"):
            return float(np.asarray(self.fn(np.array([0.0]))).ravel()[0])

    def sup_abs(self, lo: float, hi: float, samples: int = 4001) -> float:
        xs = np.linspace(lo, hi, samples)
        with np.errstate(divide="ignore", invalid="ignore"):
            return float(np.abs(self.fn(xs)).max())


def parse_psi(spec: str, shift: float = 0.0) -> PsiFunction:
    """Build a psi from a short spec.

    Accepted: ``id``, ``exp``, ``log`` (uses ``shift`` c in log(x + c)),
    ``x^K`` integer powers, ``abs`` and ``abs^P`` (p >= 1), or any grammar
    expression in ``x``.
    """
    s = spec.strip()
    if s in ("id", "x"):
        return PsiFunction("id", lambda x: x, True, True)
    if s == "exp":
        return PsiFunction("exp", np.exp, True, False)
    if s == "log":
        c = float(shift)
        return PsiFunction(f"log(x+{c:g})" if c else "log",
                           lambda x: np.log(x + c), False, True, shift=c)
    if s == "abs":
        return PsiFunction("abs", np.abs, True, False)
    if s.startswith("abs^"):
        p = float(s[4:])
        if p < 1:
            raise ParseError(f"abs^p requires p >= 1, got {p}", 4)
        return PsiFunction(s, lambda x: np.abs(x) ** p, True, p == 1.0)
    if s.startswith("x^"):
        k = s[2:]
        if k.isdigit():
            k = int(k)
            if k == 1:
                return PsiFunction("id", lambda x: x, True, True)
            # even powers are convex on the line; odd ones only on [0, inf)
            return PsiFunction(s, lambda x: x ** k, True if k % 2 == 0 else None,
                               None)
    tree = ex.parse(s)
    if ex.variables(tree) - {"x"}:
        raise ParseError(f"psi may only use the variable x, got "
                         f"{sorted(ex.variables(tree))}", 0)
    fn = lambda x: np.asarray(ex.evaluate(tree, {"x": x}), dtype=float)
    convex, concave = _probe_convexity(fn)
    return PsiFunction(s, fn, convex, concave)


def _probe_convexity(fn, lo=-3.0, hi=3.0, n=2001):
    """Numeric advisory flags from second differences; None when mixed."""
    xs = np.linspace(lo, hi, n)
    with np.errstate(all="ignore"):
        vals = fn(xs)
    if not np.all(np.isfinite(vals)):
        return None, None
    d2 = np.diff(vals, 2)
    tol = 1e-10 * max(1.0, np.abs(vals).max())
    if np.all(d2 >= -tol):
        return True, bool(np.all(np.abs(d2) <= tol))
    if np.all(d2 <= tol):
        return False, True
    return None, None
