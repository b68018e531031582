"""Acceptance battery: one criterion per test, one printed line each.

Every numeric target is analytic or recomputed by an oracle that does
not share code with the package quadrature (trapezoid sums, closed
forms).  Trace-bound records accumulate across criteria and are
asserted wholesale at the end.
"""
import time

import numpy as np

import szegolab as sz
import szegolab.berezin as brz
import szegolab.frames as frm
import szegolab.operators as ops
import szegolab.spectral as spc
import szegolab.symbols as sym
import szegolab.szego as szg

BOUNDS_RECORDS = []


def _report(name, ok, detail):
    print(f"{name} {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, f"{name}: {detail}"


def _record_sweep_bounds(name, report):
    BOUNDS_RECORDS.append((name, report["checks"]["bounds_ok"]))


def _record_point_bounds(name, pt):
    BOUNDS_RECORDS.append((name, pt["bounds"]["ok"]))


def test_A1_torus_log_sweep():
    started = time.time()
    t = sz.make_setting("torus", d=1)
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    report = szg.run_limit_sweep(t, sig, sz.parse_psi("log"), "plain",
                                 [16, 64, 256])
    _record_sweep_bounds("A1", report)
    target = float(np.log((2.0 + np.sqrt(3.0)) / 2.0))
    errs = [pt["error"] for pt in report["points"]]
    ok = (abs(report["target"] - target) <= 1e-12
          and all(a > b for a, b in zip(errs, errs[1:]))
          and errs[-1] <= 2e-3
          and not report["checks"]["failures"]
          and time.time() - started < 10.0)
    _report("A1", ok, f"torus log sweep err(256)={errs[-1]:.3e} <= 2e-3, "
                      f"target={target:.12f}")


def test_A2_bergman_symbol_weighted():
    started = time.time()
    b = sz.make_setting("bergman")
    sig = sz.parse_symbol("(1 - r2)^2")
    psi = sz.parse_psi("id")
    ladder = [4.0, 16.0, 64.0, 256.0]
    report = szg.run_limit_sweep(b, sig, psi, "symbol-weighted", ladder,
                                 with_lieb=False)
    _record_sweep_bounds("A2", report)
    errs = [pt["error"] for pt in report["points"]]
    resid_ok = True
    for a in ladder:
        pt = szg.trace_point(b, sig, psi, "symbol-weighted", a)
        _record_point_bounds("A2", pt)
        resid_ok = resid_ok and \
            pt["tail_residual"] <= 1e-8 * (1.0 + abs(pt["value"]))
    # quadrature-assembled diagonal against the Beta-function closed form
    g = lambda u: (1.0 - np.asarray(u)) ** 2
    lam_ok = True
    n = np.arange(0, 64, dtype=float)
    for a in (4.0, 256.0):
        quadp = ops._bergman_quad_profile(g, a, 64)
        lam = (a + 1) * (a + 2) / ((n + a + 2) * (n + a + 3))
        lam_ok = lam_ok and np.max(np.abs(quadp(n) - lam)) <= 1e-10
    ok = (all(x > y for x, y in zip(errs, errs[1:]))
          and errs[-1] <= 5e-3 and resid_ok and lam_ok
          and abs(report["target"] - 1.0 / 3.0) <= 1e-12
          and time.time() - started < 30.0)
    _report("A2", ok, f"bergman weighted err(256)={errs[-1]:.3e} <= 5e-3, "
                      f"diagonal matches closed form to 1e-10")


def test_A3_fock_closed_form_and_rate():
    started = time.time()
    f = sz.make_setting("fock")
    sig = sz.parse_symbol("exp(-r2)")
    ladder = [4.0, 16.0, 64.0, 256.0]
    report = szg.run_limit_sweep(f, sig, sz.parse_psi("id"),
                                 "symbol-weighted", ladder, with_lieb=False)
    _record_sweep_bounds("A3", report)
    devs = [abs(pt["value"] - np.pi * a / (2 * a + 1))
            for pt, a in zip(report["points"], ladder)]
    err256 = abs(report["points"][-1]["value"] - np.pi / 2)
    p = report["rate"]["p"]
    ok = (max(devs) <= 1e-8 and err256 <= 3.1e-3
          and abs(p - 1.0) <= 0.05
          and time.time() - started < 10.0)
    _report("A3", ok, f"fock matches pi*a/(2a+1) to {max(devs):.1e}, "
                      f"err(256)={err256:.3e} <= 3.1e-3, rate p={p:.3f}")


def _random_trig_poly(rng, deg=4):
    terms = [f"{rng.uniform(0.5, 3.0):.6f}"]
    for k in range(1, deg + 1):
        a = rng.uniform(-1.0, 1.0) / k
        b = rng.uniform(-1.0, 1.0) / k
        terms.append(f"{a:+.6f}*cos({k}*theta1)")
        terms.append(f"{b:+.6f}*sin({k}*theta1)")
    return " ".join(terms)


def test_A4_random_sandwich_battery():
    started = time.time()
    t = sz.make_setting("torus", d=1)
    rng = np.random.default_rng(20260814)
    n = 8
    worst = np.inf
    held = reversed_held = True
    for _ in range(50):
        sig = sz.parse_symbol(_random_trig_poly(rng), d=1)
        for spec in ("x^2", "exp", "abs"):
            out = szg.berezin_lieb_check(t, n, sig, None, sz.parse_psi(spec))
            held = held and out["ok"] is True
            worst = min(worst, out["middle"] - out["lower"],
                        out["upper"] - out["middle"])
        lo, _ = sym.ess_bounds(sig, "torus")
        shift = 1.0 - min(0.0, lo)
        outl = szg.berezin_lieb_check(t, n, sig, None,
                                      sz.parse_psi("log", shift=shift))
        reversed_held = reversed_held and outl["ok"] is True and \
            outl["upper"] <= outl["middle"] + outl["slack"] and \
            outl["middle"] <= outl["lower"] + outl["slack"]
    ok = (held and reversed_held and worst >= -(1e-8 + 1e-7)
          and time.time() - started < 60.0)
    _report("A4", ok, f"50 random trig polynomials, psi in {{x^2, exp, abs}} "
                      f"sandwiched (worst signed slack {worst:.2e}), "
                      f"log(x+c) reversed")


_A5_CATALOG = (
    ("torus", dict(d=1), "2 + cos(theta1)", 8.0),
    ("group", dict(moduli=(12,)), "2 + cos(theta1)", 4.0),
    ("bergman", {}, "(1 - r2)^2", 8.0),
    ("fock", {}, "exp(-r2)", 8.0),
    ("paley_wiener", {}, "exp(-x^2)", 8.0),
)


def test_A5_berezin_diagnostics():
    sup_ok = mass_ok = True
    for kind, kw, txt, a in _A5_CATALOG:
        s = sz.make_setting(kind, **kw)
        d = s.d if kind in ("torus", "group") else None
        sig = sz.parse_symbol(txt, d=d)
        sup = brz.contraction_report(s, sig, a, np.inf)
        sup_ok = sup_ok and sup["lhs"] <= sup["rhs"] + 1e-9
        fb = brz.fubini_check(s, sig, a)
        # two independent 1e-8 quadratures enter the difference
        mass_ok = mass_ok and abs(fb["transform_integral"]
                                  - fb["symbol_integral"]) <= 4e-8
    f = sz.make_setting("fock")
    sigf = sz.parse_symbol("exp(-r2)")
    grid = np.linspace(0.0, 6.0, 25)
    closed_dev = 0.0
    for a in (2.0, 8.0):
        trf = brz.radial_transform(f, sigf, a)
        want = (a / (a + 1.0)) * np.exp(-a * grid / (a + 1.0))
        closed_dev = max(closed_dev,
                         float(np.max(np.abs(np.asarray(trf(grid)) - want))))
    table = brz.convergence_in_measure(f, sigf, [4.0, 16.0, 64.0])
    rows = np.asarray(table["measures"])
    monotone = bool(np.all(rows[1:] <= rows[:-1] + 1e-12))
    ok = sup_ok and mass_ok and closed_dev <= 1e-8 and monotone
    _report("A5", ok, f"contraction and mass identity across the catalog, "
                      f"fock transform closed form dev {closed_dev:.1e}, "
                      f"exceedance non-increasing")


def test_A6_kernel_tail_closed_forms():
    closed = {"bergman": lambda a, R: (1 - np.tanh(R) ** 2) ** (a + 1),
              "fock": lambda a, R: np.exp(-a * R * R)}
    worst = 0.0
    for kind, form in closed.items():
        s = sz.make_setting(kind)
        for a in (1.0, 4.0, 16.0):
            for R in (0.5, 1.0, 2.0):
                got = frm.assumption2_tail(s, a, None, R)
                worst = max(worst, abs(got - form(a, R)) / form(a, R))
    p = sz.make_setting("paley_wiener")
    bound_ok = True
    for a in (1.0, 4.0, 16.0):
        for R in (0.5, 1.0, 2.0):
            got = frm.assumption2_tail(p, a, None, R)
            bound_ok = bound_ok and got <= 1.0 / (np.pi ** 2 * a * R)
    ok = worst <= 1e-6 and bound_ok
    _report("A6", ok, f"kernel tails match closed forms (worst rel "
                      f"{worst:.1e} <= 1e-6), line tail under 1/(pi^2 a R)")


def test_A7_finite_group_exactness():
    g = sz.make_setting("group", moduli=(12,))
    rng = np.random.default_rng(7)
    vals = rng.uniform(0.5, 3.0, size=12)
    sig = sym.sampled_symbol(vals, (12,))
    spec = spc.eigen_decompose(ops.assemble(g, sig, 6))
    worst = 0.0
    for spec_txt, fn in (("x^2", lambda x: x ** 2), ("log", np.log)):
        lhs = spc.trace_psi(spec, sz.parse_psi(spec_txt)) / 12.0
        worst = max(worst, abs(lhs - float(np.mean(fn(vals)))))
    BOUNDS_RECORDS.append(
        ("A7", spc.trace_bounds_check(spec, sz.parse_psi("x^2"))["ok"]))
    ok = worst <= 1e-10
    _report("A7", ok, f"Z12 full dual trace equals the plain average "
                      f"(dev {worst:.1e} <= 1e-10)")


def test_A8_two_dimensional_torus():
    started = time.time()
    t2 = sz.make_setting("torus", d=2)
    sig = sz.parse_symbol("3 + cos(theta1) + cos(theta2)", d=2)
    report = szg.run_limit_sweep(t2, sig, sz.parse_psi("log"), "plain",
                                 [4, 8, 16])
    _record_sweep_bounds("A8", report)
    # independent oracle: periodic trapezoid sums converge exponentially
    m = 512
    th = 2.0 * np.pi * np.arange(m) / m
    oracle = float(np.mean(np.log(3.0 + np.cos(th)[:, None]
                                  + np.cos(th)[None, :])))
    errs = [pt["error"] for pt in report["points"]]
    ok = (abs(report["target"] - oracle) <= 1e-12
          and all(a > b for a, b in zip(errs, errs[1:]))
          and errs[-1] <= 1e-2
          and time.time() - started < 60.0)
    _report("A8", ok, f"torus^2 log sweep err(16)={errs[-1]:.3e} <= 1e-2, "
                      f"target={oracle:.12f}")


def test_A9_pair_weighted_limit():
    b = sz.make_setting("bergman")
    sig = sz.parse_symbol("(1 - r2)^2")
    eta = sz.parse_symbol("(1 - r2)^3")
    report = szg.run_limit_sweep(b, sig, sz.parse_psi("id"), "pair-weighted",
                                 [16.0, 64.0, 256.0], eta)
    _record_sweep_bounds("A9", report)
    errs = [pt["error"] for pt in report["points"]]
    ok = (abs(report["target"] - 0.25) <= 1e-12
          and all(a > b for a, b in zip(errs, errs[1:]))
          and errs[-1] <= 5e-3)
    _report("A9", ok, f"bergman pair-weighted err(256)={errs[-1]:.3e} "
                      f"<= 5e-3 against 1/4")


def test_A10_paley_wiener():
    p = sz.make_setting("paley_wiener")
    sig = sz.parse_symbol("exp(-x^2)")
    op = ops.assemble(p, sig, 8.0)
    ident_dev = abs(op.trace() / 16.0 - np.sqrt(np.pi))
    report = szg.run_limit_sweep(p, sig, sz.parse_psi("id"),
                                 "symbol-weighted", [2.0, 4.0, 8.0])
    _record_sweep_bounds("A10", report)
    errs = [pt["error"] for pt in report["points"]]
    ok = (ident_dev <= 1e-6
          and abs(report["target"] - np.sqrt(np.pi / 2.0)) <= 1e-9
          and all(a > b for a, b in zip(errs, errs[1:]))
          and errs[-1] <= 2e-2
          and not report["checks"]["failures"])
    _report("A10", ok, f"frame trace identity dev {ident_dev:.1e} <= 1e-6, "
                       f"weighted err(8)={errs[-1]:.3e} <= 2e-2")


def test_A11_trace_bounds_everywhere():
    # every spectrum produced above already carried its bound check
    assert len(BOUNDS_RECORDS) >= 8
    violations = [name for name, ok in BOUNDS_RECORDS if not ok]
    # direct spot checks on representative spectra
    t = sz.make_setting("torus", d=1)
    sig = sz.parse_symbol("2 + cos(theta1)", d=1)
    for n in (16, 64, 256):
        spec = spc.eigen_decompose(ops.assemble(t, sig, n))
        for spec_txt in ("log", "x^2"):
            rec = spc.trace_bounds_check(spec, sz.parse_psi(spec_txt))
            if not rec["ok"]:
                violations.append(f"torus n={n} psi={spec_txt}")
    ok = not violations
    _report("A11", ok, f"trace bounds held on all "
                       f"{len(BOUNDS_RECORDS) + 6} recorded spectra"
            if ok else f"violations: {violations}")
