"""Semi-classical trace-limit harness.

For a setting with scaling constant c(alpha), the three normalized trace
functionals of the truncations T_sigma are swept along an alpha ladder and
compared to their limiting integrals:

    plain            tr(psi(T_sigma)) / c(alpha)        -> integral psi(sigma) dnu
    symbol-weighted  tr(T_sigma psi(T_sigma)) / c(alpha) -> integral sigma psi(sigma) dnu
    pair-weighted    tr(T_eta psi(T_sigma)) / c(alpha)   -> integral eta psi(sigma) dnu

Every sweep point carries its truncation-tail estimate, the two-sided trace
bounds, and (when the convexity of psi is declared) the Berezin sandwich

    integral psi(sigma~) eta dnu  <=  middle  <=  integral psi(sigma) eta~ dnu

whose direction reverses for concave psi and collapses to equality for the
identity.  Reports are plain dicts with a fixed key order so identical runs
serialize byte-identically.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from . import berezin as brz
from . import frames
from . import operators as ops
from . import spectral as spc
from . import symbols as sym
from .errors import (ConfigError, DomainError, IntegrabilityError,
                     SzegolabError)

VARIANTS = ("plain", "symbol-weighted", "pair-weighted")


# --- target integrals ----------------------------------------------------------


def _compose(setting, sigma, fn):
    """Callable in the setting's base coordinate applying fn to sigma."""
    kind = setting.index.kind
    if kind == "torus":
        return lambda theta: fn(np.asarray(sigma.eval_theta(theta),
                                           dtype=float))
    if kind == "group":
        vals = setting.sample_symbol(sigma)
        return sym.sampled_symbol(np.asarray(fn(vals), dtype=float),
                                  setting.moduli)
    if kind in ("bergman", "fock"):
        return lambda t: fn(np.asarray(sigma.eval_radial(t), dtype=float))
    return lambda x: fn(np.asarray(sigma.eval_line(x), dtype=float))


def _require_vanishing_psi(setting, psi):
    if not setting.compact and abs(psi.at_zero()) > 1e-15:
        raise IntegrabilityError(
            f"psi '{psi.name}' has psi(0) = {psi.at_zero():g}; plain traces "
            f"on the non-compact setting '{setting.name}' require psi(0) = 0")


def target_integral(setting, sigma, psi, variant: str = "plain", eta=None,
                    tol: float = 1e-9) -> float:
    """Limiting integral of the chosen trace functional."""
    if variant not in VARIANTS:
        raise ConfigError(f"variant must be one of {VARIANTS}, got {variant!r}")
    if variant == "plain":
        _require_vanishing_psi(setting, psi)
        f = _compose(setting, sigma, lambda v: np.asarray(psi(v)))
    elif variant == "symbol-weighted":
        f = _compose(setting, sigma, lambda v: v * np.asarray(psi(v)))
    else:
        if eta is None:
            raise ConfigError("pair-weighted targets need an eta symbol")
        psi_sigma = _compose(setting, sigma, lambda v: np.asarray(psi(v)))
        kind = setting.index.kind
        if kind == "torus":
            f = lambda theta: (np.asarray(eta.eval_theta(theta), dtype=float)
                               * psi_sigma(theta))
        elif kind == "group":
            f = sym.sampled_symbol(setting.sample_symbol(eta)
                                   * setting.sample_symbol(psi_sigma),
                                   setting.moduli)
        elif kind in ("bergman", "fock"):
            f = lambda t: (np.asarray(eta.eval_radial(t), dtype=float)
                           * psi_sigma(t))
        else:
            f = lambda x: (np.asarray(eta.eval_line(x), dtype=float)
                           * psi_sigma(x))
    return setting.integrate_base(f, tol=tol)


def hypothesis_tags(setting, sigma, psi, variant: str, eta=None) -> list:
    """Advisory tags describing which limit-theorem hypotheses hold."""
    kind = setting.index.kind
    tags = []
    if sym.is_nonnegative(sigma, kind):
        tags.append("sigma_nonnegative")
    lo, hi = sym.ess_bounds(sigma, kind)
    if math.isfinite(lo) and math.isfinite(hi):
        tags.append("sigma_bounded")
    if psi.convex:
        tags.append("psi_convex")
    if psi.concave:
        tags.append("psi_concave")
    if abs(psi.at_zero()) <= 1e-15:
        tags.append("psi_vanishes_at_zero")
    if setting.compact:
        tags.append("nu_probability")
    if eta is not None and sym.is_nonnegative(eta, kind):
        tags.append("eta_nonnegative")
    return tags


# --- per-point trace evaluation --------------------------------------------------


class _TimesX:
    """x * psi(x), used to route symbol-weighted traces through trace_psi."""

    def __init__(self, psi):
        self.psi = psi
        self.name = f"x*{psi.name}"

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return x * np.asarray(self.psi(x), dtype=float)


def _psi_slope_near_zero(psi) -> float:
    u = np.array([1e-3, 1e-2, 0.1])
    vals = np.abs(np.asarray(psi(u), dtype=float) - psi.at_zero())
    return float(np.max(vals / u))


def _trace_tail(op, variant: str, psi, op_eta=None):
    """(tail, residual) of the trace functional beyond the stored block."""
    setting = op.setting
    if setting.compact:
        return 0.0, 0.0
    is_id = psi.name == "id"
    if op.profile is None:
        # paley-wiener: the diagonal deficit is exact; psi != id tails are
        # first-order-estimated through the slope of psi at 0
        deficit, resid = op.tail_estimate, op.tail_residual
        if variant == "plain":
            if is_id:
                return deficit, resid
            return 0.0, abs(deficit) * _psi_slope_near_zero(psi)
        return 0.0, abs(deficit) * _psi_slope_near_zero(psi)
    n_start = op.dim
    valid = op.profile_valid_to
    lam = op.profile
    if variant == "plain":
        if is_id:
            return op.tail_estimate, op.tail_residual
        f = lambda x: np.asarray(psi(lam(x)), dtype=float)
    elif variant == "symbol-weighted":
        f = lambda x: (np.asarray(lam(x), dtype=float)
                       * np.asarray(psi(lam(x)), dtype=float))
    else:
        mu = op_eta.profile
        valid = min(valid, op_eta.profile_valid_to)
        f = lambda x: (np.asarray(mu(x), dtype=float)
                       * np.asarray(psi(lam(x)), dtype=float))
    return ops.profile_tail_sum(f, n_start, valid_to=valid,
                                what=f"{variant} trace tail")


def _assemble_pair(setting, sigma, eta, alpha, n_cut, K):
    op = ops.assemble(setting, sigma, alpha, n_cut=n_cut, K=K)
    op_eta = None
    if eta is not None:
        kind = setting.index.kind
        if kind in ("bergman", "fock"):
            op_eta = ops.assemble(setting, eta, alpha, n_cut=op.dim)
        elif kind == "paley_wiener":
            op_eta = ops.assemble(setting, eta, alpha,
                                  K=(op.dim - 1) // 2)
        else:
            op_eta = ops.assemble(setting, eta, alpha)
    return op, op_eta


def trace_point(setting, sigma, psi, variant: str, alpha, eta=None, *,
                n_cut=None, K=None) -> dict:
    """One sweep point: normalized trace value with tail correction."""
    op, op_eta = _assemble_pair(setting, sigma, eta, alpha, n_cut, K)
    kind = setting.index.kind
    lo, hi = sym.ess_bounds(sigma, kind)
    clip_eps = 1e-8 * (1.0 + max(abs(lo), abs(hi)))
    need_vecs = variant == "pair-weighted" and not op.is_diagonal
    spec = spc.eigen_decompose(op, with_vectors=need_vecs,
                               interval=(lo - clip_eps, hi + clip_eps))
    if variant == "plain":
        block = spc.trace_psi(spec, psi)
    elif variant == "symbol-weighted":
        block = spc.trace_psi(spec, _TimesX(psi))
    else:
        if op_eta is None:
            raise ConfigError("pair-weighted traces need an eta symbol")
        block = spc.weighted_trace(spec, op_eta, psi)
    tail, tail_resid = _trace_tail(op, variant, psi, op_eta)
    c = setting.scaling_constant(alpha)
    bounds = spc.trace_bounds_check(spec, psi)
    return {
        "alpha": float(op.alpha),
        "value": (block + tail) / c,
        "tail": tail / c,
        "tail_residual": tail_resid / c,
        "dim": op.dim,
        "clip_distance": spec.clip_distance,
        "clip_eps": clip_eps,
        "bounds": bounds,
        "operator": op,
        "operator_eta": op_eta,
        "spectrum": spec,
    }


# --- Berezin-Lieb sandwich --------------------------------------------------------


_pw_smoothed_integral = brz._pw_smoothed_integral


def berezin_lieb_check(setting, alpha, sigma, eta, psi, *, tol: float = 1e-8,
                       middle: Optional[float] = None,
                       middle_residual: float = 0.0, n_cut=None,
                       K=None) -> dict:
    """Sandwich record {lower, middle, upper}; direction set by convexity.

    eta=None means the constant weight 1 (its transform is 1 exactly by
    frame normalization); on settings of infinite measure this requires
    psi(0) = 0.  Lower/upper integrals use the closed transform routes.
    The sandwich bounds the full-operator trace, so a caller-supplied
    middle is compared up to its unaccounted truncation residual.
    """
    kind = setting.index.kind
    a = setting.validate_alpha(alpha)
    if eta is not None and not sym.is_nonnegative(eta, kind):
        raise DomainError("the sandwich needs eta >= 0")
    if eta is None and not setting.compact:
        _require_vanishing_psi(setting, psi)
    psi_fn = lambda v: np.asarray(psi(v), dtype=float)

    if kind == "torus":
        trf = brz._TorusTransform(sigma, setting.d, a)
        eta_th = None if eta is None else \
            (lambda th: np.asarray(eta.eval_theta(th), dtype=float))
        lower_f = (lambda th: psi_fn(trf(th))) if eta_th is None else \
            (lambda th: psi_fn(trf(th)) * eta_th(th))
        lower = setting.integrate_base(lower_f, tol=tol)
        if eta is None:
            upper = setting.integrate_base(
                lambda th: psi_fn(np.asarray(sigma.eval_theta(th),
                                             dtype=float)), tol=tol)
        else:
            trf_eta = brz._TorusTransform(eta, setting.d, a)
            upper = setting.integrate_base(
                lambda th: psi_fn(np.asarray(sigma.eval_theta(th),
                                             dtype=float)) * trf_eta(th),
                tol=tol)
    elif kind == "group":
        sig_vals = setting.sample_symbol(sigma)
        trf_vals = brz._GroupTransform(sigma, setting, a).values
        eta_vals = 1.0 if eta is None else setting.sample_symbol(eta)
        eta_trf = 1.0 if eta is None else \
            brz._GroupTransform(eta, setting, a).values
        lower = float(np.mean(psi_fn(trf_vals) * eta_vals))
        upper = float(np.mean(psi_fn(sig_vals) * eta_trf))
    elif kind in ("bergman", "fock"):
        trf = brz.radial_transform(setting, sigma, a, tol)
        eta_t = None if eta is None else \
            (lambda t: np.asarray(eta.eval_radial(t), dtype=float))
        lower_f = (lambda t: psi_fn(trf(t))) if eta_t is None else \
            (lambda t: psi_fn(trf(t)) * eta_t(t))
        lower = setting.integrate_base(lower_f, tol=tol)
        psi_sig = lambda t: psi_fn(np.asarray(sigma.eval_radial(t),
                                              dtype=float))
        if eta is None:
            upper = setting.integrate_base(psi_sig, tol=tol)
        else:
            trf_eta = brz.radial_transform(setting, eta, a, tol)
            upper = setting.integrate_base(lambda t: psi_sig(t) * trf_eta(t),
                                           tol=tol)
    else:
        trf = brz.radial_transform(setting, sigma, a, tol)
        eta_x = None if eta is None else \
            (lambda x: np.asarray(eta.eval_line(x), dtype=float))
        lower = _pw_smoothed_integral(trf, psi_fn, eta_x, trf.W, a, tol)
        psi_sig = lambda x: psi_fn(np.asarray(sigma.eval_line(x),
                                              dtype=float))
        if eta is None:
            upper = setting.integrate_base(psi_sig, tol=tol)
        else:
            trf_eta = brz.radial_transform(setting, eta, a, tol)
            upper = _pw_smoothed_integral(
                trf_eta, lambda v: v, psi_sig, trf_eta.W, a, tol)

    if middle is None:
        variant = "plain" if eta is None else "pair-weighted"
        pt = trace_point(setting, sigma, psi, variant, a, eta,
                         n_cut=n_cut, K=K)
        middle = pt["value"]
        middle_residual = middle_residual + pt["tail_residual"]
    slack = 1e-8 * (1.0 + abs(middle)) + \
        10.0 * tol * (1.0 + max(abs(lower), abs(upper))) + \
        abs(middle_residual)
    if psi.convex and psi.concave:
        ok = bool(abs(lower - middle) <= slack and abs(middle - upper) <= slack)
    elif psi.convex:
        ok = bool(lower <= middle + slack and middle <= upper + slack)
    elif psi.concave:
        ok = bool(upper <= middle + slack and middle <= lower + slack)
    else:
        ok = None
    return {"lower": lower, "middle": middle, "upper": upper,
            "convex": psi.convex, "concave": psi.concave,
            "slack": slack, "ok": ok}


# --- sweeps ----------------------------------------------------------------------


def _sandwich_eta(variant: str, sigma, eta, kind):
    """Weight symbol entering the per-point sandwich, or (None, False)."""
    if variant == "plain":
        return None, True
    if variant == "pair-weighted":
        return eta, eta is not None and sym.is_nonnegative(eta, kind)
    return sigma, sym.is_nonnegative(sigma, kind)


def run_limit_sweep(setting, sigma, psi, variant: str = "plain", alphas=None,
                    eta=None, *, tol_quad: float = 1e-9,
                    tol_tail: float = 1e-8, n_cut=None, K=None,
                    with_lieb: bool = True, max_workers: int = 4) -> dict:
    """Sweep the alpha ladder and compare to the target integral.

    Returns the report dict (see module docstring).  Per-point numerical
    failures are recorded in checks.failures and leave a partial report.
    """
    if variant not in VARIANTS:
        raise ConfigError(f"variant must be one of {VARIANTS}, got {variant!r}")
    if variant == "pair-weighted" and eta is None:
        raise ConfigError("pair-weighted sweeps need an eta symbol")
    ladder = [setting.validate_alpha(a)
              for a in (alphas if alphas is not None
                        else setting.default_alphas)]
    if not ladder:
        raise ConfigError("the alpha ladder is empty")
    if sorted(set(ladder)) != list(ladder):
        raise ConfigError(f"the alpha ladder must be strictly increasing, "
                          f"got {ladder}")
    kind = setting.index.kind
    target = target_integral(setting, sigma, psi, variant, eta, tol=tol_quad)
    sandwich_eta, sandwich_valid = _sandwich_eta(variant, sigma, eta, kind)
    lieb_wanted = with_lieb and sandwich_valid and \
        (psi.convex is not None or psi.concave is not None)
    if lieb_wanted and sandwich_eta is None and not setting.compact and \
            abs(psi.at_zero()) > 1e-15:
        lieb_wanted = False

    def point(alpha):
        pt = trace_point(setting, sigma, psi, variant, alpha, eta,
                         n_cut=n_cut, K=K)
        lieb = None
        if lieb_wanted:
            lieb = berezin_lieb_check(setting, alpha, sigma, sandwich_eta,
                                      psi, tol=tol_quad,
                                      middle=pt["value"],
                                      middle_residual=pt["tail_residual"],
                                      n_cut=n_cut, K=K)
        return pt, lieb

    results = {}
    failures = []
    with ThreadPoolExecutor(max_workers=min(max_workers,
                                            len(ladder))) as pool:
        futures = {a: pool.submit(point, a) for a in ladder}
        for a in ladder:
            try:
                results[a] = futures[a].result()
            except SzegolabError as exc:
                failures.append(f"alpha={a:g}: {exc}")

    points = []
    bounds_ok = True
    containment_ok = True
    sandwich_ok = None
    identity_ok = None
    for a in ladder:
        if a not in results:
            points.append({"alpha": float(a), "value": None, "error": None,
                           "tail": None, "lieb": None})
            continue
        pt, lieb = results[a]
        bounds_ok = bounds_ok and pt["bounds"]["ok"]
        containment_ok = containment_ok and \
            pt["clip_distance"] <= pt["clip_eps"] + 1e-15
        lieb_out = None
        if lieb is not None:
            lieb_out = {"lower": lieb["lower"], "middle": lieb["middle"],
                        "upper": lieb["upper"]}
            if lieb["ok"] is not None:
                sandwich_ok = (lieb["ok"] if sandwich_ok is None
                               else sandwich_ok and lieb["ok"])
        if variant == "plain" and psi.name == "id":
            ident_tol = max(1e-7, 10.0 * tol_quad
                            + 2.0 * pt["tail_residual"]) * (1.0 + abs(target))
            this_ok = abs(pt["value"] - target) <= ident_tol
            identity_ok = this_ok if identity_ok is None \
                else identity_ok and this_ok
        points.append({
            "alpha": pt["alpha"],
            "value": pt["value"],
            "error": abs(pt["value"] - target),
            "tail": pt["tail"],
            "lieb": lieb_out,
        })

    report = {
        "setting": setting.describe(),
        "symbol": sigma.text if hasattr(sigma, "text") else "<samples>",
        "eta": (eta.text if eta is not None and hasattr(eta, "text")
                else None),
        "psi": {"name": psi.name, "shift": psi.shift,
                "convex": psi.convex, "concave": psi.concave},
        "variant": variant,
        "points": points,
        "target": target,
        "rate": None,
        "checks": {
            "bounds_ok": bounds_ok,
            "containment_ok": containment_ok,
            "sandwich_ok": sandwich_ok,
            "trace_identity_ok": identity_ok,
            "hypotheses": hypothesis_tags(setting, sigma, psi, variant, eta),
            "failures": failures,
        },
    }
    report["rate"] = rate_fit(report)
    return report


def rate_fit(report: dict) -> dict:
    """Least-squares fit error ~ C alpha^-p on the log-log scale."""
    data = [(pt["alpha"], pt["error"]) for pt in report["points"]
            if pt["error"] is not None and pt["error"] > 0.0]
    if len(data) < 3:
        return {"C": None, "p": None, "residual": None,
                "note": "skipped: fewer than 3 points with nonzero error"}
    la = np.log([a for a, _ in data])
    le = np.log([e for _, e in data])
    slope, intercept = np.polyfit(la, le, 1)
    fitted = slope * la + intercept
    residual = float(np.sqrt(np.mean((le - fitted) ** 2)))
    return {"C": float(np.exp(intercept)), "p": float(-slope),
            "residual": residual}


# --- moment tables -----------------------------------------------------------------


def moment_table(setting, sigma, alphas=None, k_max: int = 4, *,
                 tol: float = 1e-9, n_cut=None, K=None) -> dict:
    """m_k(alpha) = tr(T^(k+1)) / c(alpha) for k = 0..k_max, with the bound
    m_k <= ||sigma||_inf^k ||sigma||_1 asserted per entry."""
    kind = setting.index.kind
    if not sym.is_nonnegative(sigma, kind):
        raise DomainError("moment tables assume sigma >= 0")
    nn = frames.norms(setting, sigma)
    l1, linf = nn["l1_nu"], nn["linf"]
    ladder = [setting.validate_alpha(a)
              for a in (alphas if alphas is not None
                        else setting.default_alphas)]
    rows = []
    ok = True
    bounds = [linf ** k * l1 for k in range(k_max + 1)]
    for a in ladder:
        op, _ = _assemble_pair(setting, sigma, None, a, n_cut, K)
        spec = spc.eigen_decompose(op)
        c = setting.scaling_constant(a)
        row = []
        for k in range(k_max + 1):
            block = float(np.sum(spec.eigenvalues ** (k + 1)))
            if setting.compact:
                tail, resid = 0.0, 0.0
            elif k == 0:
                tail, resid = op.tail_estimate, op.tail_residual
            elif op.profile is not None:
                tail, resid = ops.profile_tail_sum(
                    lambda x, k=k: np.asarray(op.profile(x),
                                              dtype=float) ** (k + 1),
                    op.dim, valid_to=op.profile_valid_to,
                    what=f"moment {k} tail")
            else:
                tail, resid = 0.0, 0.0
            m = (block + tail) / c
            row.append(m)
            ok = ok and m <= bounds[k] + 1e-8 * (1.0 + bounds[k]) + resid / c
        rows.append(row)
    return {"alphas": [float(a) for a in ladder], "k_max": int(k_max),
            "l1_nu": l1, "linf": linf, "moments": rows,
            "bounds": bounds, "ok": ok}


# --- report serialization ------------------------------------------------------------


def _plainify(obj):
    if isinstance(obj, dict):
        return {k: _plainify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plainify(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_plainify(v) for v in obj.tolist()]
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def report_json(report: dict) -> str:
    """Deterministic serialization: insertion order, repr floats, newline."""
    return json.dumps(_plainify(report), indent=2, allow_nan=True) + "\n"


def report_csv(report: dict) -> str:
    """One row per sweep point, mirroring the JSON points."""
    lines = ["alpha,value,error,tail,target,lieb_lower,lieb_middle,lieb_upper"]
    target = report["target"]
    for pt in report["points"]:
        lieb = pt["lieb"] or {}
        cells = [pt["alpha"], pt["value"], pt["error"], pt["tail"], target,
                 lieb.get("lower"), lieb.get("middle"), lieb.get("upper")]
        lines.append(",".join("" if v is None else repr(float(v))
                              for v in cells))
    return "\n".join(lines) + "\n"


def plot_data(report: dict) -> dict:
    """Two-column ascii curves keyed by file stem."""
    curves = {}
    val_lines, err_lines = [], []
    for pt in report["points"]:
        if pt["value"] is None:
            continue
        val_lines.append(f"{pt['alpha']!r} {pt['value']!r}")
        if pt["error"] is not None and pt["error"] > 0.0:
            err_lines.append(f"{pt['alpha']!r} {pt['error']!r}")
    curves["value_vs_alpha"] = "\n".join(val_lines) + "\n"
    curves["error_vs_alpha"] = "\n".join(err_lines) + "\n"
    return curves
