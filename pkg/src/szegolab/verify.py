"""Invariant batteries behind the ``verify`` command.

Each suite returns a list of records {"name", "ok", "detail"}; a suite
passes when every record has ok=True.  The batteries are self-contained
cross-checks (frame normalization, transform contraction, sandwich
orientation, limit-sweep sanity) built from closed forms and independent
quadrature routes.
"""

from __future__ import annotations

import math

import numpy as np

from . import berezin as brz
from . import frames
from . import spectral as spc
from . import symbols as sym
from . import szego
from .errors import SzegolabError

SUITES = ("frames", "berezin", "lieb", "szego", "all")


def _record(results, name, fn):
    try:
        ok, detail = fn()
    except SzegolabError as exc:
        ok, detail = False, f"error: {exc}"
    results.append({"name": name, "ok": bool(ok), "detail": detail})


def _close(a, b, tol):
    return abs(a - b) <= tol * (1.0 + max(abs(a), abs(b)))


# --- frames -------------------------------------------------------------------


def _torus_normalization(d, n):
    s = frames.make_setting("torus", d=d)
    x = np.zeros((d, 1))
    f = lambda th: np.atleast_1d(s.kernel_overlap(n, x, th))
    val = s.integrate_alpha(n, f)
    return _close(val, 1.0, 1e-9), f"integral = {val!r}"


def _group_normalization(moduli, N):
    s = frames.make_setting("group", moduli=moduli)
    pts = np.stack(np.meshgrid(*[np.arange(m) for m in moduli],
                               indexing="ij")).reshape(len(moduli), -1)
    x = np.zeros((len(moduli), pts.shape[1]), dtype=int)
    val = float(np.mean(np.atleast_1d(s.kernel_overlap(N, pts, x)))
                * s.scaling_constant(N))
    return _close(val, 1.0, 1e-12), f"sum = {val!r}"


def _radial_normalization(kind, alpha):
    s = frames.make_setting(kind)
    if kind == "bergman":
        g = lambda t: (1.0 - t) ** (alpha + 2.0)
    else:
        g = lambda t: np.exp(-alpha * t)
    val = s.integrate_alpha(alpha, g)
    return _close(val, 1.0, 1e-8), f"integral = {val!r}"


def _pw_normalization(alpha):
    s = frames.make_setting("paley_wiener")
    R = 4.0
    inner = s.integrate_alpha(alpha, lambda x: np.sinc(2.0 * alpha * x) ** 2,
                              region=(-R, R))
    total = inner + s.assumption2_tail(alpha, 0.0, R)
    return _close(total, 1.0, 1e-8), f"window + tail = {total!r}"


def _tail_monotone(kind, make_kwargs, alphas, Rs):
    s = frames.make_setting(kind, **make_kwargs)
    for a in alphas:
        tails = [s.assumption2_tail(a, None, R) for R in Rs]
        if any(tails[i] < tails[i + 1] - 1e-12 for i in range(len(tails) - 1)):
            return False, f"alpha={a}: tails {tails} not non-increasing in R"
    for R in Rs:
        tails = [s.assumption2_tail(a, None, R) for a in alphas]
        if any(tails[i] < tails[i + 1] - 1e-12 for i in range(len(tails) - 1)):
            return False, f"R={R}: tails {tails} not decreasing in alpha"
    return True, "non-increasing in R, decreasing in alpha"


def _bergman_tail_closed_form():
    s = frames.make_setting("bergman")
    worst = 0.0
    for a in (1.0, 4.0, 16.0):
        for R in (0.5, 1.0, 2.0):
            got = s.assumption2_tail(a, None, R)
            want = (1.0 - math.tanh(R) ** 2) ** (a + 1.0)
            worst = max(worst, abs(got - want) / want)
    return worst <= 1e-6, f"worst relative error = {worst:.3e}"


def _fock_tail_closed_form():
    s = frames.make_setting("fock")
    worst = 0.0
    for a in (1.0, 4.0, 16.0):
        for R in (0.5, 1.0, 2.0):
            got = s.assumption2_tail(a, None, R)
            want = math.exp(-a * R * R)
            worst = max(worst, abs(got - want) / want)
    return worst <= 1e-6, f"worst relative error = {worst:.3e}"


def _pw_tail_bound():
    s = frames.make_setting("paley_wiener")
    for a in (1.0, 4.0, 10.0):
        for R in (0.5, 1.0, 2.0):
            got = s.assumption2_tail(a, None, R)
            if got > 1.0 / (math.pi ** 2 * a * R):
                return False, f"alpha={a}, R={R}: {got} exceeds the bound"
    return True, "tail <= 1/(pi^2 alpha R) throughout"


def _overlap_symmetry():
    checks = []
    s = frames.make_setting("torus")
    checks.append(s.kernel_overlap(3, 0.7, -1.1) == s.kernel_overlap(3, -1.1, 0.7))
    s = frames.make_setting("bergman")
    checks.append(s.kernel_overlap(2.0, 0.3 + 0.1j, -0.5j)
                  == s.kernel_overlap(2.0, -0.5j, 0.3 + 0.1j))
    s = frames.make_setting("fock")
    checks.append(s.kernel_overlap(2.0, 1.0 + 2.0j, -0.5)
                  == s.kernel_overlap(2.0, -0.5, 1.0 + 2.0j))
    s = frames.make_setting("paley_wiener")
    checks.append(s.kernel_overlap(2.0, 0.25, -1.5)
                  == s.kernel_overlap(2.0, -1.5, 0.25))
    return all(checks), f"{sum(checks)}/{len(checks)} settings exactly symmetric"


def run_frames_suite(seed: int = 0) -> list:
    results = []
    _record(results, "torus normalization (d=1, n=4)",
            lambda: _torus_normalization(1, 4))
    _record(results, "torus normalization (d=2, n=2)",
            lambda: _torus_normalization(2, 2))
    _record(results, "group normalization (Z12, N=2)",
            lambda: _group_normalization((12,), 2))
    _record(results, "group normalization (Z6xZ4, N=1)",
            lambda: _group_normalization((6, 4), 1))
    _record(results, "bergman normalization (alpha=4)",
            lambda: _radial_normalization("bergman", 4.0))
    _record(results, "fock normalization (alpha=2)",
            lambda: _radial_normalization("fock", 2.0))
    _record(results, "paley-wiener normalization (alpha=4)",
            lambda: _pw_normalization(4.0))
    _record(results, "kernel overlap symmetry", _overlap_symmetry)
    _record(results, "bergman tail closed form", _bergman_tail_closed_form)
    _record(results, "fock tail closed form", _fock_tail_closed_form)
    _record(results, "paley-wiener tail bound", _pw_tail_bound)
    _record(results, "torus tail monotone",
            lambda: _tail_monotone("torus", {}, (2, 4, 8), (0.5, 1.0, 2.0)))
    _record(results, "bergman tail monotone",
            lambda: _tail_monotone("bergman", {}, (1.0, 2.0, 4.0),
                                   (0.5, 1.0, 2.0)))
    _record(results, "fock tail monotone",
            lambda: _tail_monotone("fock", {}, (1.0, 2.0, 4.0),
                                   (0.5, 1.0, 2.0)))
    _record(results, "paley-wiener tail monotone",
            lambda: _tail_monotone("paley_wiener", {}, (1.0, 2.0, 4.0),
                                   (0.5, 1.0, 2.0)))
    return results


# --- berezin -------------------------------------------------------------------


def _torus_fejer_oracle():
    s = frames.make_setting("torus")
    sigma = sym.parse_symbol("2 + cos(theta1)", d=1)
    th = np.linspace(0.0, 2.0 * np.pi, 17)[None, :]
    got = brz.berezin_transform(s, sigma, 1, th)
    want = 2.0 + (2.0 / 3.0) * np.cos(th[0])
    err = float(np.abs(got - want).max())
    return err <= 1e-12, f"max error vs 2 + (2/3) cos = {err:.3e}"


def _group_full_dual_identity():
    s = frames.make_setting("group", moduli=(12,))
    sigma = sym.parse_symbol("1 + cos(theta1) + 0.5*sin(2*theta1)", d=1)
    field = brz.berezin_field(s, sigma, 6)
    err = float(np.abs(field.values - field.sigma_values).max())
    return err <= 1e-12, f"full dual: max |transform - symbol| = {err:.3e}"


def _cross_route(kind, symbol_text, alpha, points, tol):
    s = frames.make_setting(kind)
    d = 1 if kind == "torus" else None
    sigma = sym.parse_symbol(symbol_text, d=d)
    worst = 0.0
    for x in points:
        fast = brz.berezin_transform(s, sigma, alpha, x)
        slow = brz.berezin_transform_quadrature(s, sigma, alpha, x)
        worst = max(worst, float(np.max(np.abs(fast - slow))))
    return worst <= tol, f"max |fast - quadrature| = {worst:.3e}"


def _fock_gaussian_closed_form():
    s = frames.make_setting("fock")
    sigma = sym.parse_symbol("exp(-r2)")
    worst = 0.0
    for a in (1.0, 4.0):
        t = np.linspace(0.0, 6.0, 25)
        got = brz.radial_transform(s, sigma, a)(t)
        want = (a / (a + 1.0)) * np.exp(-a * t / (a + 1.0))
        worst = max(worst, float(np.abs(got - want).max()))
    return worst <= 1e-8, f"max error vs closed form = {worst:.3e}"


def _contraction(kind, symbol_text, alpha, p, want=None, make_kwargs=None):
    s = frames.make_setting(kind, **(make_kwargs or {}))
    d = s.d if kind in ("torus", "group") else None
    sigma = sym.parse_symbol(symbol_text, d=d)
    rec = brz.contraction_report(s, sigma, alpha, p)
    ok = rec["lhs"] <= rec["rhs"] + 1e-8 * (1.0 + rec["rhs"])
    if want is not None:
        ok = ok and _close(rec["lhs"], want[0], 1e-6) and \
            _close(rec["rhs"], want[1], 1e-6)
    return ok, f"lhs = {rec['lhs']!r}, rhs = {rec['rhs']!r}"


def _fubini(kind, symbol_text, alpha, make_kwargs=None):
    s = frames.make_setting(kind, **(make_kwargs or {}))
    d = s.d if kind in ("torus", "group") else None
    sigma = sym.parse_symbol(symbol_text, d=d)
    rec = brz.fubini_check(s, sigma, alpha)
    ok = _close(rec["transform_integral"], rec["symbol_integral"], 1e-6)
    return ok, (f"integral of transform = {rec['transform_integral']!r}, "
                f"of symbol = {rec['symbol_integral']!r}")


def _exceedance_monotone(kind, symbol_text, alphas, make_kwargs=None):
    s = frames.make_setting(kind, **(make_kwargs or {}))
    d = s.d if kind in ("torus", "group") else None
    sigma = sym.parse_symbol(symbol_text, d=d)
    table = brz.convergence_in_measure(s, sigma, alphas)
    M = np.array(table["measures"])
    ok = bool(np.all(M[1:] <= M[:-1] + 1e-12))
    return ok, f"measures: {M.tolist()}"


def run_berezin_suite(seed: int = 0) -> list:
    results = []
    _record(results, "torus Fejer damping oracle", _torus_fejer_oracle)
    _record(results, "group full-dual identity", _group_full_dual_identity)
    _record(results, "torus cross route (n=2)",
            lambda: _cross_route("torus", "2 + cos(theta1)", 2,
                                 [0.0, 1.3], 1e-8))
    _record(results, "bergman cross route (alpha=4)",
            lambda: _cross_route("bergman", "(1 - r2)^2", 4.0,
                                 [0.0, 0.5, 0.5j], 1e-7))
    _record(results, "fock cross route (alpha=2)",
            lambda: _cross_route("fock", "exp(-r2)", 2.0,
                                 [0.0, 1.0 + 0.5j], 1e-7))
    _record(results, "paley-wiener cross route (alpha=2)",
            lambda: _cross_route("paley_wiener", "exp(-x^2)", 2.0,
                                 [0.0, 0.7], 1e-6))
    _record(results, "fock Gaussian closed form", _fock_gaussian_closed_form)
    _record(results, "fock contraction p=inf (alpha=1)",
            lambda: _contraction("fock", "exp(-r2)", 1.0, "inf",
                                 want=(0.5, 1.0)))
    _record(results, "fock contraction p=1",
            lambda: _contraction("fock", "exp(-r2)", np.pi, 1,
                                 want=(np.pi, np.pi)))
    _record(results, "torus contraction p=inf",
            lambda: _contraction("torus", "2 + cos(theta1)", 4, "inf"))
    _record(results, "torus contraction p=1",
            lambda: _contraction("torus", "2 + cos(theta1)", 4, 1))
    _record(results, "bergman contraction p=1",
            lambda: _contraction("bergman", "(1 - r2)^2", 4.0, 1))
    _record(results, "paley-wiener contraction p=inf",
            lambda: _contraction("paley_wiener", "exp(-x^2)", 4.0, "inf"))
    _record(results, "torus fubini",
            lambda: _fubini("torus", "2 + cos(theta1)", 4))
    _record(results, "bergman fubini",
            lambda: _fubini("bergman", "(1 - r2)^2", 4.0))
    _record(results, "fock fubini", lambda: _fubini("fock", "exp(-r2)", 2.0))
    _record(results, "paley-wiener fubini",
            lambda: _fubini("paley_wiener", "exp(-x^2)", 2.0))
    _record(results, "torus exceedance non-increasing",
            lambda: _exceedance_monotone("torus", "2 + cos(theta1)",
                                         [1, 2, 4, 8]))
    _record(results, "fock exceedance non-increasing",
            lambda: _exceedance_monotone("fock", "exp(-r2)",
                                         [1.0, 2.0, 4.0, 8.0]))
    return results


# --- lieb ----------------------------------------------------------------------


def _random_trig_text(rng) -> str:
    degree = int(rng.integers(1, 5))
    base = float(rng.uniform(0.5, 3.0))
    parts = [f"{base!r}"]
    for k in range(1, degree + 1):
        a = float(rng.normal(0.0, 0.5 / k))
        b = float(rng.normal(0.0, 0.5 / k))
        parts.append(f"{a!r}*cos({k}*theta1)")
        parts.append(f"{b!r}*sin({k}*theta1)")
    return " + ".join(parts)


def run_lieb_suite(seed: int = 1234) -> list:
    results = []
    rng = np.random.default_rng(seed)
    s = frames.make_setting("torus")
    convex_psis = [sym.parse_psi("x^2"), sym.parse_psi("exp"),
                   sym.parse_psi("abs")]
    bad = []
    count = 0
    for i in range(50):
        text = _random_trig_text(rng)
        sigma = sym.parse_symbol(text, d=1)
        n = int(rng.choice([1, 2, 4, 8, 16, 64]))
        lo, _ = sym.ess_bounds(sigma, "torus")
        psis = list(convex_psis)
        psis.append(sym.parse_psi("log", shift=1.0 + max(0.0, -lo) * 1.05))
        for psi in psis:
            count += 1
            try:
                rec = szego.berezin_lieb_check(s, n, sigma, None, psi)
            except SzegolabError as exc:
                bad.append(f"case {i} ({psi.name}, n={n}): error {exc}")
                continue
            if rec["ok"] is not True:
                bad.append(f"case {i} ({psi.name}, n={n}): "
                           f"{rec['lower']!r} / {rec['middle']!r} / "
                           f"{rec['upper']!r}")
    results.append({"name": f"randomized torus sandwich ({count} cases)",
                    "ok": not bad, "detail": "; ".join(bad[:3]) or "all held"})

    def identity_collapse():
        sigma = sym.parse_symbol("2 + cos(theta1)", d=1)
        rec = szego.berezin_lieb_check(s, 4, sigma, None, sym.parse_psi("id"))
        gap = max(abs(rec["lower"] - rec["middle"]),
                  abs(rec["middle"] - rec["upper"]))
        return gap <= rec["slack"], f"identity psi gap = {gap:.3e}"

    _record(results, "identity psi collapses the sandwich", identity_collapse)

    def pair_radial():
        sb = frames.make_setting("bergman")
        sigma = sym.parse_symbol("(1 - r2)^2")
        eta = sym.parse_symbol("(1 - r2)^3")
        rec = szego.berezin_lieb_check(sb, 8.0, sigma, eta,
                                       sym.parse_psi("x^2"))
        strict = rec["lower"] < rec["middle"] < rec["upper"]
        return rec["ok"] and strict, \
            (f"lower = {rec['lower']!r}, middle = {rec['middle']!r}, "
             f"upper = {rec['upper']!r}")

    _record(results, "bergman radial pair sandwich", pair_radial)

    def fock_sandwich():
        sf = frames.make_setting("fock")
        sigma = sym.parse_symbol("exp(-r2)")
        rec = szego.berezin_lieb_check(sf, 4.0, sigma, None,
                                       sym.parse_psi("x^2"))
        return rec["ok"] is True, \
            (f"lower = {rec['lower']!r}, middle = {rec['middle']!r}, "
             f"upper = {rec['upper']!r}")

    _record(results, "fock sandwich (psi = x^2)", fock_sandwich)
    return results


# --- szego ----------------------------------------------------------------------


def run_szego_suite(seed: int = 0) -> list:
    results = []

    def torus_log_sweep():
        s = frames.make_setting("torus")
        sigma = sym.parse_symbol("2 + cos(theta1)", d=1)
        rep = szego.run_limit_sweep(s, sigma, sym.parse_psi("log"),
                                    "plain", [8, 16, 32])
        errs = [pt["error"] for pt in rep["points"]]
        ok = all(e is not None for e in errs) and \
            all(errs[i] > errs[i + 1] for i in range(len(errs) - 1)) and \
            rep["checks"]["bounds_ok"] and not rep["checks"]["failures"]
        return ok, f"errors = {errs}"

    _record(results, "torus log sweep decreasing", torus_log_sweep)

    def group_exactness():
        s = frames.make_setting("group", moduli=(12,))
        sigma = sym.parse_symbol("1 + cos(theta1) + 0.3*cos(3*theta1)", d=1)
        psi = sym.parse_psi("x^2")
        rep = szego.run_limit_sweep(s, sigma, psi, "plain", [6])
        err = rep["points"][0]["error"]
        return err <= 1e-10, f"full-dual error = {err!r}"

    _record(results, "group full-dual exactness", group_exactness)

    def fock_closed_form():
        s = frames.make_setting("fock")
        sigma = sym.parse_symbol("exp(-r2)")
        rep = szego.run_limit_sweep(s, sigma, sym.parse_psi("id"),
                                    "symbol-weighted", [4.0, 16.0])
        worst = 0.0
        for pt in rep["points"]:
            a = pt["alpha"]
            worst = max(worst, abs(pt["value"] - math.pi * a / (2 * a + 1)))
        return worst <= 1e-8, f"max |value - pi a/(2a+1)| = {worst:.3e}"

    _record(results, "fock geometric closed form", fock_closed_form)

    def bergman_pair():
        s = frames.make_setting("bergman")
        sigma = sym.parse_symbol("(1 - r2)^2")
        eta = sym.parse_symbol("(1 - r2)^3")
        rep = szego.run_limit_sweep(s, sigma, sym.parse_psi("id"),
                                    "pair-weighted", [16.0, 64.0], eta)
        errs = [pt["error"] for pt in rep["points"]]
        ok = _close(rep["target"], 0.25, 1e-9) and errs[0] > errs[1] and \
            rep["checks"]["sandwich_ok"] is True
        return ok, f"target = {rep['target']!r}, errors = {errs}"

    _record(results, "bergman pair-weighted sweep", bergman_pair)

    def moment_bounds():
        s = frames.make_setting("fock")
        sigma = sym.parse_symbol("exp(-r2)")
        table = szego.moment_table(s, sigma, [1.0, 4.0], k_max=3)
        return table["ok"], f"moments = {table['moments']}"

    _record(results, "fock moment bounds", moment_bounds)

    def scaling_covariance():
        s = frames.make_setting("torus")
        sigma = sym.parse_symbol("2 + cos(theta1)", d=1)
        sigma2 = sym.parse_symbol("2*(2 + cos(theta1))", d=1)
        from . import operators as ops
        e1 = spc.eigen_decompose(ops.assemble_torus(sigma, 4)).eigenvalues
        e2 = spc.eigen_decompose(ops.assemble_torus(sigma2, 4)).eigenvalues
        err = float(np.abs(e2 - 2.0 * e1).max())
        return err <= 1e-10, f"max |spec(2 sigma) - 2 spec(sigma)| = {err:.3e}"

    _record(results, "scaling covariance", scaling_covariance)
    return results


def run_suite(name: str, seed: int = 1234) -> list:
    if name == "frames":
        return run_frames_suite(seed)
    if name == "berezin":
        return run_berezin_suite(seed)
    if name == "lieb":
        return run_lieb_suite(seed)
    if name == "szego":
        return run_szego_suite(seed)
    if name == "all":
        out = []
        for suite in ("frames", "berezin", "lieb", "szego"):
            for rec in run_suite(suite, seed):
                out.append({"name": f"{suite}: {rec['name']}",
                            "ok": rec["ok"], "detail": rec["detail"]})
        return out
    raise KeyError(name)
