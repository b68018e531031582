"""Command-line front end.

Subcommands:

* ``run``: execute a limit sweep from a config file and/or inline flags and
  write report files (JSON, CSV, plot-ready two-column data).
* ``list-catalog``: deterministic listing of settings, built-in example
  symbols, and psi kinds.
* ``verify``: run an invariant battery (frames, berezin, lieb, szego, all).

Exit codes: 0 on success, 1 on numerical assertion failures (the report is
still written), 2 on configuration/schema errors.  JSON reports are
byte-identical across reruns of the same configuration; volatile run
metadata lives in a separate ``report.meta.json`` sidecar.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
import time
from pathlib import Path

try:
    import tomllib
except ImportError:                      # python < 3.11
    import tomli as tomllib

from . import frames, szego, verify
from . import symbols as sym
from .errors import (AccuracyError, ConfigError, DomainError,
                     IntegrabilityError, ParseError, SzegolabError)

_KIND_ALIASES = {"torus": "torus", "group": "group", "bergman": "bergman",
                 "fock": "fock", "paley-wiener": "paley_wiener",
                 "paley_wiener": "paley_wiener"}

_FORMATS = ("json", "csv", "plot")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="szegolab",
        description="Trace asymptotics of Toeplitz truncations on "
                    "reproducing-kernel settings.")
    subs = parser.add_subparsers(dest="command", required=True)

    run = subs.add_parser("run", help="run a limit sweep and write reports")
    run.add_argument("--config", help="TOML config file; flags override it")
    run.add_argument("--setting", help="torus | group | bergman | fock | "
                                       "paley-wiener")
    run.add_argument("--alpha", "--n", "--N", dest="alpha",
                     help="comma-separated alpha ladder")
    run.add_argument("--dim", type=int, help="torus dimension d (1..3)")
    run.add_argument("--moduli", help="comma-separated cyclic moduli "
                                      "(group setting)")
    run.add_argument("--symbol", help="symbol expression")
    run.add_argument("--eta", help="weight symbol (pair-weighted variant)")
    run.add_argument("--psi", help="psi spec: id, x^K, exp, log, abs, "
                                   "abs^P, or an expression in x")
    run.add_argument("--psi-shift", type=float, dest="psi_shift",
                     help="shift c for psi = log(x + c)")
    run.add_argument("--variant",
                     choices=("plain", "symbol-weighted", "pair-weighted"))
    run.add_argument("--out", help="output directory (default .)")
    run.add_argument("--format", dest="formats",
                     help="comma-separated subset of json,csv,plot")
    run.add_argument("--tol-quad", type=float, dest="tol_quad",
                     help="quadrature tolerance (default 1e-9)")
    run.add_argument("--tol-tail", type=float, dest="tol_tail",
                     help="tail tolerance (default 1e-8)")
    run.add_argument("--n-cut", type=int, dest="n_cut",
                     help="diagonal truncation size override")
    run.add_argument("--K", type=int, dest="K",
                     help="sinc basis half-width override (paley-wiener)")
    run.add_argument("--seed", type=int, default=1234,
                     help="seed recorded for randomized batteries")

    lst = subs.add_parser("list-catalog",
                          help="list settings, example symbols, psi kinds")
    lst.set_defaults(command="list-catalog")

    ver = subs.add_parser("verify", help="run an invariant battery")
    ver.add_argument("suite", choices=verify.SUITES)
    ver.add_argument("--seed", type=int, default=1234)
    return parser


# --- config handling -----------------------------------------------------------


def _load_config(path) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid TOML: {exc}")


def _ladder_from(value):
    if value is None:
        return None
    if isinstance(value, str):
        parts = [p for p in value.split(",") if p.strip()]
        try:
            return [float(p) for p in parts]
        except ValueError:
            raise ConfigError(f"alpha ladder {value!r} is not numeric")
    if isinstance(value, (list, tuple)):
        return [float(v) for v in value]
    return [float(value)]


def _moduli_from(value):
    if value is None:
        return None
    if isinstance(value, str):
        parts = [p for p in value.split(",") if p.strip()]
        value = parts
    try:
        moduli = tuple(int(v) for v in value)
    except (TypeError, ValueError):
        raise ConfigError(f"moduli {value!r} must be integers")
    return moduli


def _merge_run_options(args) -> dict:
    cfg = _load_config(args.config) if args.config else {}
    setting_blk = cfg.get("setting", {})
    experiment = cfg.get("experiment", {})
    tolerances = cfg.get("tolerances", {})
    output = cfg.get("output", {})
    known = {"setting", "experiment", "tolerances", "output"}
    extra = set(cfg) - known
    if extra:
        raise ConfigError(f"unknown config sections: {sorted(extra)}")

    kind_raw = args.setting or setting_blk.get("family") or \
        setting_blk.get("kind")
    if not kind_raw:
        raise ConfigError("no setting given (flag --setting or config "
                          "[setting].family)")
    if kind_raw not in _KIND_ALIASES:
        raise ConfigError(f"unknown setting {kind_raw!r}; expected one of "
                          f"{sorted(set(_KIND_ALIASES) - {'paley_wiener'})}")
    ladder = _ladder_from(args.alpha) if args.alpha is not None else \
        _ladder_from(setting_blk.get("alpha", setting_blk.get("n")))
    if args.alpha is not None and not ladder:
        raise ConfigError("the alpha ladder is empty")
    symbol = args.symbol or experiment.get("symbol")
    if not symbol:
        raise ConfigError("no symbol given (flag --symbol or config "
                          "[experiment].symbol)")
    formats_raw = args.formats or output.get("formats") or "json,csv"
    if isinstance(formats_raw, str):
        formats = tuple(f.strip() for f in formats_raw.split(",") if f.strip())
    else:
        formats = tuple(formats_raw)
    bad = [f for f in formats if f not in _FORMATS]
    if bad:
        raise ConfigError(f"unknown output formats {bad}; expected a subset "
                          f"of {list(_FORMATS)}")
    return {
        "kind": _KIND_ALIASES[kind_raw],
        "dim": args.dim if args.dim is not None else setting_blk.get("dim", 1),
        "moduli": _moduli_from(args.moduli if args.moduli is not None
                               else setting_blk.get("moduli")),
        "ladder": ladder,
        "symbol": symbol,
        "eta": args.eta or experiment.get("eta"),
        "psi": args.psi or experiment.get("psi", "id"),
        "psi_shift": (args.psi_shift if args.psi_shift is not None
                      else float(experiment.get("psi_shift", 0.0))),
        "variant": args.variant or experiment.get("variant", "plain"),
        "out": Path(args.out or output.get("dir", ".")),
        "formats": formats,
        "tol_quad": (args.tol_quad if args.tol_quad is not None
                     else float(tolerances.get("quad", 1e-9))),
        "tol_tail": (args.tol_tail if args.tol_tail is not None
                     else float(tolerances.get("tail", 1e-8))),
        "n_cut": args.n_cut,
        "K": args.K,
        "seed": args.seed,
        "argv": args.raw_argv,
    }


def _build_setting(opts):
    kind = opts["kind"]
    if kind == "torus":
        return frames.make_setting("torus", d=int(opts["dim"]))
    if kind == "group":
        if not opts["moduli"]:
            raise ConfigError("the group setting needs --moduli (for example "
                              "--moduli 12)")
        return frames.make_setting("group", moduli=opts["moduli"])
    return frames.make_setting(kind)


def _parse_symbols(opts, setting):
    kind = opts["kind"]
    d = setting.d if kind in ("torus", "group") else None
    sigma = sym.parse_symbol(opts["symbol"], d=d)
    eta = sym.parse_symbol(opts["eta"], d=d) if opts["eta"] else None
    psi = sym.parse_psi(opts["psi"], shift=opts["psi_shift"])
    return sigma, eta, psi


def _checks_pass(report: dict) -> bool:
    checks = report["checks"]
    flags = (checks["bounds_ok"], checks["containment_ok"],
             checks["sandwich_ok"], checks["trace_identity_ok"])
    return all(f in (None, True) for f in flags) and not checks["failures"]


def _write_reports(report: dict, opts, started: float) -> list:
    out: Path = opts["out"]
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if "json" in opts["formats"]:
        path = out / "report.json"
        path.write_text(szego.report_json(report))
        written.append(path)
        meta = {
            "created": datetime.datetime.now(datetime.timezone.utc)
            .isoformat(),
            "runtime_seconds": time.time() - started,
            "seed": opts["seed"],
            "argv": opts["argv"],
        }
        meta_path = out / "report.meta.json"
        meta_path.write_text(json.dumps(meta, indent=2) + "\n")
        written.append(meta_path)
    if "csv" in opts["formats"]:
        path = out / "report.csv"
        path.write_text(szego.report_csv(report))
        written.append(path)
    if "plot" in opts["formats"]:
        for stem, text in szego.plot_data(report).items():
            path = out / f"plot_{stem}.dat"
            path.write_text(text)
            written.append(path)
    return written


def cmd_run(args) -> int:
    started = time.time()
    opts = _merge_run_options(args)
    setting = _build_setting(opts)
    sigma, eta, psi = _parse_symbols(opts, setting)
    report = szego.run_limit_sweep(
        setting, sigma, psi, opts["variant"], opts["ladder"], eta,
        tol_quad=opts["tol_quad"], tol_tail=opts["tol_tail"],
        n_cut=opts["n_cut"], K=opts["K"])
    written = _write_reports(report, opts, started)
    for pt in report["points"]:
        if pt["value"] is None:
            print(f"alpha={pt['alpha']:g}  FAILED")
        else:
            print(f"alpha={pt['alpha']:g}  value={pt['value']!r}  "
                  f"error={pt['error']!r}")
    print(f"target={report['target']!r}")
    rate = report["rate"]
    if rate["p"] is not None:
        print(f"rate: error ~ {rate['C']:.4g} * alpha^-{rate['p']:.4g} "
              f"(residual {rate['residual']:.2g})")
    for path in written:
        print(f"wrote {path}")
    ok = _checks_pass(report)
    if not ok:
        checks = report["checks"]
        print("checks failed: " + json.dumps(
            {k: v for k, v in checks.items() if k != "hypotheses"}))
    return 0 if ok else 1


def cmd_list_catalog() -> int:
    lines = ["settings:"]
    entries = sorted(frames.catalog(),
                     key=lambda e: (e["kind"].replace("_", "-"),
                                    e.get("name", "")))
    for e in entries:
        kind = e["kind"].replace("_", "-")
        name = e.get("name", kind)
        label = kind if name in (kind, e["kind"]) else f"{kind} ({name})"
        lines.append(f"  {label}: c = {e['c']}, nu = {e['measure']}, "
                     f"default ladder {e['default_alphas']}")
    lines.append("example symbols:")
    for text in sorted(["2 + cos(theta1)", "3 + cos(theta1) + cos(theta2)",
                        "(1 - r2)^2", "(1 - r2)^3", "exp(-r2)",
                        "exp(-x^2)"]):
        lines.append(f"  {text}")
    lines.append("psi kinds:")
    for kind in sorted(["id", "power", "log-shifted", "exp", "abs-power",
                        "expr"]):
        lines.append(f"  {kind}")
    print("\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    records = verify.run_suite(args.suite, seed=args.seed)
    failed = 0
    for rec in records:
        status = "PASS" if rec["ok"] else "FAIL"
        failed += 0 if rec["ok"] else 1
        print(f"{status}  {rec['name']}  ({rec['detail']})")
    print(f"{len(records) - failed}/{len(records)} checks passed")
    return 0 if failed == 0 else 1


def main(argv=None) -> int:
    parser = build_parser()
    raw = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(raw)
    args.raw_argv = raw
    try:
        if args.command == "run":
            return cmd_run(args)
        if args.command == "list-catalog":
            return cmd_list_catalog()
        return cmd_verify(args)
    except (ConfigError, ParseError, DomainError,
            IntegrabilityError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except AccuracyError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1
    except SzegolabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
