"""Command-line sweeps over the shell thickness.

Every subcommand evaluates one quantity per ``h`` (or a single dent solve),
writes ``<out_dir>/<command>.csv`` and ``<out_dir>/<command>.json`` and prints
the fitted exponents against their expected values.

Config files are flat ``key = value`` text; flags override them.
"""
from __future__ import annotations

import argparse
import csv
import datetime as _dt
import hashlib
import io
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np
from numpy.polynomial import Polynomial
from scipy import linalg

from . import __version__
from .ansatz import QuadratureError, ansatz_ratios, bump_profile, cross_limit, phipsi_profile
from .basis import ConfigError
from .branches import imperfect_branch, perfect_stress, svk_branch, transverse_stretch
from .dent import dent_grid, dent_hoop_stress, dent_solve
from .mooney_rivlin import mr_alpha, mr_branch, mr_linearize, mr_residuals
from .scaling import DataError, fit_scaling
from .spectra import (
    Resolution,
    SpectralError,
    buckling_load,
    component_korn,
    korn_constant,
    safe_load_constant,
)
from .tensors import DomainError, ShellParams

log = logging.getLogger("shellbuckle")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2
DEFAULT_H = (0.1, 0.05, 0.02, 0.01, 0.005)
ANSATZ_H = (1e-2, 1e-3, 1e-4)


@dataclass(frozen=True)
class RunConfig:
    h_list: tuple = DEFAULT_H
    L: float = 2.0
    E: float = 1.0
    nu: float = 0.3
    eps: float = 0.0
    beta0: float = 1.0
    m_max_factor: float = 6.0
    k_ax_factor: float = 4.0
    p_rad: int = 3
    tol: float = 1e-6
    out_dir: str = "runs"
    seed: int = 0

    def params(self, h: float) -> ShellParams:
        return ShellParams(h=h, L=self.L, E=self.E, nu=self.nu)

    def resolution(self) -> Resolution:
        return Resolution(p_rad=self.p_rad, k_ax_factor=self.k_ax_factor,
                          m_max_factor=self.m_max_factor)

    def snapshot(self) -> dict:
        d = asdict(self)
        d["h_list"] = list(self.h_list)
        return d


CONFIG_KEYS = tuple(f.name for f in fields(RunConfig))


def _coerce(key: str, raw) -> object:
    try:
        if key == "h_list":
            if isinstance(raw, str):
                items = [x for x in raw.replace(",", " ").split() if x]
            else:
                items = list(raw)
            vals = tuple(float(x) for x in items)
            if not vals:
                raise ValueError("empty list")
            return vals
        if key in ("p_rad", "seed"):
            return int(raw)
        if key == "out_dir":
            return str(raw)
        return float(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value for {key}: {raw!r} ({exc})") from None


def parse_config_text(text: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    out, unknown = {}, []
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {n}: expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_KEYS:
            unknown.append(key)
            continue
        out[key] = _coerce(key, value)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))} "
                          f"(allowed: {', '.join(CONFIG_KEYS)})")
    return out


def make_config(values: dict | None = None) -> RunConfig:
    values = dict(values or {})
    unknown = sorted(set(values) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    cfg = RunConfig(**{k: _coerce(k, v) for k, v in values.items()})
    if cfg.p_rad < 1:
        raise ConfigError("p_rad must be >= 1")
    if cfg.k_ax_factor <= 0 or cfg.m_max_factor <= 0:
        raise ConfigError("resolution factors must be positive")
    if cfg.tol <= 0:
        raise ConfigError("tol must be positive")
    try:
        for h in cfg.h_list:
            cfg.params(h)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    return cfg


# per-h evaluators; top-level so that a process pool can pickle them

def _res_cols(meta: dict) -> dict:
    return {"p_rad": meta["p_rad"], "k_ax": meta["k_ax"], "m_max": meta["m_max"]}


def _row_korn(cfg: RunConfig, h: float, extra: dict) -> dict:
    r = korn_constant(cfg.params(h), cfg.resolution())
    return {"K": r.value, "m_star": r.m_star, "boundary_flag": r.boundary_flag, **_res_cols(r.basis_meta)}


def _row_safeload(cfg: RunConfig, h: float, extra: dict) -> dict:
    p, res = cfg.params(h), cfg.resolution()
    s = safe_load_constant(p, res)
    k = korn_constant(p, res)
    lo, hi = p.coercivity
    ok = lo * k.value * (1 - 1e-10) <= s.value <= hi * k.value * (1 + 1e-10)
    return {"K_L0": s.value, "K": k.value, "lower": lo * k.value, "upper": hi * k.value,
            "sandwich": ok, "m_star": s.m_star, "boundary_flag": s.boundary_flag or k.boundary_flag,
            **_res_cols(s.basis_meta)}


def _row_component(cfg: RunConfig, h: float, extra: dict) -> dict:
    p, res = cfg.params(h), cfg.resolution()
    tz = component_korn(p, "tz", res)
    rz = component_korn(p, "rz", res)
    zz = component_korn(p, "zz", res)
    return {"C_tz": tz.value, "C_rz": rz.value, "C_zz": zz.value,
            "m_star_tz": tz.m_star, "m_star_rz": rz.m_star,
            "boundary_flag": tz.boundary_flag or rz.boundary_flag or zz.boundary_flag,
            **_res_cols(tz.basis_meta)}


def _stress(cfg: RunConfig, p: ShellParams):
    return perfect_stress(p) if cfg.eps == 0.0 else imperfect_branch(cfg.eps, p).stress


def reference_imperfect(h: float, eps: float) -> float:
    return h ** 1.25 / (eps + h ** 0.25)


def _row_buckling(cfg: RunConfig, h: float, extra: dict) -> dict:
    p = cfg.params(h)
    r = buckling_load(p, _stress(cfg, p), cfg.resolution())
    row = {"lambda_hat": r.value, "lambda_over_h": r.value / h}
    if cfg.eps != 0.0:
        row["band_ratio"] = r.value / reference_imperfect(h, cfg.eps)
    row.update({"m_star": r.m_star, "boundary_flag": r.boundary_flag, **_res_cols(r.basis_meta)})
    return row


def _row_sufficiency(cfg: RunConfig, h: float, extra: dict) -> dict:
    p, res = cfg.params(h), cfg.resolution()
    lam = buckling_load(p, _stress(cfg, p), res)
    k = korn_constant(p, res)
    return {"lambda_hat": lam.value, "K": k.value, "ratio": lam.value ** 2 / k.value,
            "boundary_flag": lam.boundary_flag or k.boundary_flag, **_res_cols(k.basis_meta)}


def cross_profile(L: float):
    """Separable profile with a nonzero cross-term limit."""
    phi = Polynomial([1.0, 0.0, -1.0]) ** 6
    psi = Polynomial([0.0, 0.0, 0.0, 1.0]) * Polynomial([L, -1.0]) ** 3 / L ** 6
    return phipsi_profile(phi, psi, L)


def _row_ansatz(cfg: RunConfig, h: float, extra: dict) -> dict:
    p = cfg.params(h)
    a = ansatz_ratios(bump_profile("poly6", cfg.L), p)
    W = cross_profile(cfg.L)
    c = ansatz_ratios(W, p)
    lim = cross_limit(W)
    return {"korn": a.korn, "korn_band": a.korn / h ** 1.5,
            "theta_z": a.theta_z, "theta_z_band": a.theta_z * h ** 0.5,
            "r_z": a.r_z, "r_z_band": a.r_z * h,
            "load": a.load, "load_band": a.load / h,
            "cross_over_h": c.cross / h, "cross_limit": lim,
            "cross_gap": abs(c.cross / h - lim) / abs(lim)}


def _row_trivial(cfg: RunConfig, h: float, extra: dict) -> dict:
    p = cfg.params(h)
    b = imperfect_branch(cfg.eps, p)
    res = b.residuals(seed=cfg.seed)
    step = 1e-5
    da = (transverse_stretch(step, p.nu) - transverse_stretch(-step, p.nu)) / (2 * step)
    svk = 0.0 if p.nu >= 0.5 else max(svk_branch(lam, p).traction_residual(p) for lam in (0.01, 0.05, 0.1))
    return {"eps": cfg.eps, "sigma_tz_at_1": float(b.stress.at(1.0)["tz"]),
            "equilibrium": res.equilibrium, "traction": res.traction, "clamp": res.clamp,
            "constitutive": res.constitutive, "svk_traction": svk, "da_dlambda": da}


def _row_mr(cfg: RunConfig, h: float, extra: dict) -> dict:
    lam = extra.get("lam", 0.05)
    b = mr_branch(lam, h, cfg.beta0, cfg.E)
    r = mr_residuals(b, None)
    step = 1e-5
    dal = (mr_alpha(step, h, cfg.beta0) - mr_alpha(-step, h, cfg.beta0)) / (2 * step)
    _, sig_h, _ = mr_linearize(h, cfg.beta0, cfg.E)
    lin = imperfect_branch(cfg.beta0, ShellParams(h=h, L=cfg.L, E=cfg.E, nu=0.5)).stress
    gap = float(np.max(np.abs(np.concatenate([sig_h.sigma0.data - lin.sigma0.data,
                                              sig_h.sigma1.data - lin.sigma1.data]))))
    return {"lambda": lam, "beta0": cfg.beta0, "alpha": b.alpha, "gamma": b.gamma,
            "ode": r.ode, "det": r.det, "traction": r.traction, "face_system": r.face_system,
            "dalpha_fd": dal, "dalpha_exact": 4 * cfg.beta0 / (4 - h * h), "sigma_gap": gap}


@dataclass(frozen=True)
class Fit:
    column: str
    target: float
    tol: float


@dataclass(frozen=True)
class Command:
    name: str
    row: object
    columns: tuple
    fits: tuple = ()
    help: str = ""
    default_h: tuple | None = None


RES_COLS = ("p_rad", "k_ax", "m_max")

COMMANDS = {c.name: c for c in (
    Command("korn-sweep", _row_korn, ("K", "m_star", "boundary_flag") + RES_COLS,
            (Fit("K", 1.5, 0.1),), "Korn constant K(V_h)"),
    Command("safeload-sweep", _row_safeload,
            ("K_L0", "K", "lower", "upper", "sandwich", "m_star", "boundary_flag") + RES_COLS,
            (Fit("K_L0", 1.5, 0.1),), "safe-load constant and its Korn sandwich"),
    Command("component-sweep", _row_component,
            ("C_tz", "C_rz", "C_zz", "m_star_tz", "m_star_rz", "boundary_flag") + RES_COLS,
            (Fit("C_tz", -0.5, 0.1), Fit("C_rz", -1.0, 0.1)), "component Korn constants"),
    Command("buckling-sweep", _row_buckling,
            ("lambda_hat", "lambda_over_h", "band_ratio", "m_star", "boundary_flag") + RES_COLS,
            (Fit("lambda_hat", 1.0, 0.1),), "constitutively linearised buckling load"),
    Command("sufficiency", _row_sufficiency, ("lambda_hat", "K", "ratio", "boundary_flag") + RES_COLS,
            (Fit("ratio", 0.5, 0.15),), "lambda_hat^2 / K"),
    Command("ansatz-check", _row_ansatz,
            ("korn", "korn_band", "theta_z", "theta_z_band", "r_z", "r_z_band", "load", "load_band",
             "cross_over_h", "cross_limit", "cross_gap"),
            (Fit("korn", 1.5, 0.1), Fit("theta_z", -0.5, 0.1), Fit("r_z", -1.0, 0.1), Fit("load", 1.0, 0.1)),
            "Rayleigh ratios of the explicit ansatz", ANSATZ_H),
    Command("trivial-branch", _row_trivial,
            ("eps", "sigma_tz_at_1", "equilibrium", "traction", "clamp", "constitutive",
             "svk_traction", "da_dlambda"), (), "trivial-branch residuals"),
    Command("mr-branch", _row_mr,
            ("lambda", "beta0", "alpha", "gamma", "ode", "det", "traction", "face_system",
             "dalpha_fd", "dalpha_exact", "sigma_gap"), (), "Mooney-Rivlin helical branch"),
)}

DENT_COLUMNS = ("amplitude", "n", "E", "iterations", "converged", "residual", "gap",
                "hoop_min", "hoop_min_eta", "hoop_min_zeta", "szz_center")

NUMERIC_ERRORS = (SpectralError, linalg.LinAlgError, DomainError, QuadratureError, FloatingPointError)


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return "" if v is None else str(v)


def render_csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(row.get(c)) for c in columns])
    return buf.getvalue()


def _jsonable(v):
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else repr(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def input_hash(command: str, cfg: RunConfig, extra: dict) -> str:
    blob = json.dumps({"command": command, "config": cfg.snapshot(), "args": extra},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class RunRecord:
    command: str
    config: dict
    input_hash: str
    columns: tuple
    rows: list
    fits: dict = field(default_factory=dict)
    reports: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    started: str = ""
    finished: str = ""
    version: str = __version__

    @property
    def ok(self) -> bool:
        return not self.failures

    def csv(self) -> str:
        return render_csv(self.columns, self.rows)

    def to_json(self) -> str:
        d = asdict(self)
        d["columns"] = list(self.columns)
        return json.dumps(_jsonable(d), sort_keys=True, indent=2) + "\n"


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def _evaluate(task):
    name, cfg, h, extra = task
    try:
        return h, COMMANDS[name].row(cfg, h, extra), None
    except NUMERIC_ERRORS as exc:
        return h, None, f"{type(exc).__name__}: {exc}"


def _fit_reports(cmd: Command, rows: list, cfg: RunConfig, rec: RunRecord) -> None:
    good = [r for r in rows if "error" not in r]
    for f in cmd.fits:
        pts = [(r["h"], r[f.column]) for r in good if r.get(f.column) is not None]
        try:
            fit = fit_scaling(pts)
        except DataError as exc:
            rec.warnings.append(f"fit {f.column}: {exc}")
            continue
        target = f.target
        if cmd.name == "buckling-sweep" and cfg.eps != 0.0:
            # compare with the slope of h^(5/4) / (eps + h^(1/4)) over the same points
            target = fit_scaling([(h, reference_imperfect(h, cfg.eps)) for h, _ in pts]).exponent
        rec.fits[f.column] = {"exponent": fit.exponent, "log_prefactor": fit.log_prefactor,
                              "r_squared": fit.r_squared, "target": target, "tol": f.tol,
                              "within": abs(fit.exponent - target) <= f.tol}
    if cmd.name == "buckling-sweep":
        if cfg.eps == 0.0:
            ref = 1.0 / math.sqrt(3.0 * (1.0 - cfg.nu ** 2))
            near = min(good, key=lambda r: abs(math.log(r["h"] / 0.01)), default=None)
            if near is not None:
                rec.reports["prefactor"] = {"h": near["h"], "lambda_over_h": near["lambda_over_h"],
                                            "classical": ref,
                                            "relative_gap": abs(near["lambda_over_h"] / ref - 1.0)}
        else:
            band = [r["band_ratio"] for r in good]
            if band:
                rec.reports["band"] = {"min": min(band), "max": max(band), "max_over_min": max(band) / min(band)}
    if cmd.name == "sufficiency":
        vals = [r["ratio"] for r in sorted(good, key=lambda r: -r["h"])]
        rec.reports["strictly_decreasing"] = all(b < a for a, b in zip(vals, vals[1:]))
    if cmd.name == "ansatz-check":
        for col in ("korn_band", "theta_z_band", "r_z_band", "load_band"):
            v = [r[col] for r in good]
            if v:
                rec.reports[col] = {"max_over_min": max(v) / min(v)}


def run_sweep(command: str, cfg: RunConfig, extra: dict | None = None, jobs: int = 1) -> RunRecord:
    """Evaluate ``command`` over ``cfg.h_list``; per-h failures are recorded, not raised."""
    extra = dict(extra or {})
    cmd = COMMANDS[command]
    rec = RunRecord(command, cfg.snapshot(), input_hash(command, cfg, extra),
                    ("h",) + cmd.columns + ("error",), [], started=_now())
    tasks = [(command, cfg, h, extra) for h in cfg.h_list]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate, tasks))
    else:
        results = [_evaluate(t) for t in tasks]
    by_h = {}
    for h, row, err in results:
        if err is not None:
            rec.failures.append({"h": h, "error": err})
            log.error("h=%g failed: %s", h, err)
            by_h[h] = {"h": h, "error": err}
        else:
            by_h[h] = {"h": h, **row}
            if row.get("boundary_flag"):
                msg = f"h={h:g}: extremum on the boundary of the sweep"
                rec.warnings.append(msg)
                log.warning(msg)
    rec.rows = [by_h[h] for h in sorted(by_h, reverse=True)]
    _fit_reports(cmd, rec.rows, cfg, rec)
    rec.finished = _now()
    return rec


def run_dent(cfg: RunConfig, extra: dict) -> RunRecord:
    rec = RunRecord("dent-solve", cfg.snapshot(), input_hash("dent-solve", cfg, extra), DENT_COLUMNS, [],
                    started=_now())
    grid = dent_grid(extra["n"], extra["amplitude"], extra["a_eta"], extra["a_zeta"], extra["margin"])
    sol = dent_solve(grid, E=cfg.E, tol=cfg.tol, max_iter=extra["max_iter"], backend=extra.get("backend"))
    hs = dent_hoop_stress(sol)
    ic = grid.center_index()
    ref = cfg.E * float(np.max(np.abs(grid.rho)))
    gap = float(np.max(np.abs(sol.s + cfg.E * grid.rho))) / ref if ref > 0 else float(np.max(np.abs(sol.s)))
    rec.rows = [{"amplitude": extra["amplitude"], "n": extra["n"], "E": cfg.E,
                 "iterations": sol.iterations, "converged": sol.converged, "residual": sol.residual,
                 "gap": gap, "hoop_min": hs.minimum, "hoop_min_eta": hs.location[0],
                 "hoop_min_zeta": hs.location[1], "szz_center": float(hs.values[ic])}]
    if not sol.converged:
        rec.failures.append({"error": f"dent iteration did not reach tol {cfg.tol:g}; "
                                      f"best residual {sol.residual:.3e}"})
    rec.finished = _now()
    return rec


def write_outputs(rec: RunRecord, out_dir: str | Path) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = rec.command
    csv_path, json_path = out / f"{stem}.csv", out / f"{stem}.json"
    csv_path.write_text(rec.csv(), encoding="utf-8")
    json_path.write_text(rec.to_json(), encoding="utf-8")
    return csv_path, json_path


def print_report(rec: RunRecord, stream=None) -> None:
    stream = stream or sys.stdout
    for col, f in rec.fits.items():
        print(f"{rec.command}: {col} exponent {f['exponent']:.4f} (target {f['target']:g} "
              f"+/- {f['tol']:g}) r2 {f['r_squared']:.5f} prefactor {math.exp(f['log_prefactor']):.6g} "
              f"-> {'ok' if f['within'] else 'OFF'}", file=stream)
    for key, val in rec.reports.items():
        print(f"{rec.command}: {key} {json.dumps(_jsonable(val), sort_keys=True)}", file=stream)
    for fail in rec.failures:
        print(f"{rec.command}: FAILED {json.dumps(_jsonable(fail), sort_keys=True)}", file=stream)


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="flat 'key = value' config file")
    p.add_argument("--h-list", dest="h_list", help="comma separated thickness ratios")
    for key in ("L", "E", "nu", "eps", "beta0", "m_max_factor", "k_ax_factor", "tol"):
        p.add_argument(f"--{key.replace('_', '-')}", dest=key, type=float)
    p.add_argument("--p-rad", dest="p_rad", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out-dir", dest="out_dir")
    p.add_argument("--jobs", type=int, default=1, help="worker processes over h")
    p.add_argument("-q", "--quiet", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="shellbuckle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, cmd in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=cmd.help)
        if name == "mr-branch":
            sp.add_argument("--lam", type=float, default=0.05, help="load parameter lambda")
    sp = sub.add_parser("dent-solve", parents=[common], help="dent stress potential")
    sp.add_argument("--amplitude", type=float, default=0.01)
    sp.add_argument("--n", type=int, default=129)
    sp.add_argument("--a-eta", dest="a_eta", type=float, default=1.0)
    sp.add_argument("--a-zeta", dest="a_zeta", type=float, default=0.5)
    sp.add_argument("--margin", type=float, default=0.5)
    sp.add_argument("--max-iter", dest="max_iter", type=int, default=200)
    sp.add_argument("--backend", choices=("numba", "numpy"))
    return parser


def config_from_args(args: argparse.Namespace, command: str) -> RunConfig:
    values = {}
    if args.config:
        try:
            values.update(parse_config_text(Path(args.config).read_text(encoding="utf-8")))
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
    for key in CONFIG_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    if "h_list" not in values and COMMANDS.get(command) and COMMANDS[command].default_h:
        values["h_list"] = COMMANDS[command].default_h
    return make_config(values)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args, args.command)
        if args.command == "dent-solve":
            extra = {k: getattr(args, k) for k in ("amplitude", "n", "a_eta", "a_zeta", "margin", "max_iter")}
            extra["backend"] = args.backend
            rec = run_dent(cfg, extra)
        else:
            extra = {"lam": args.lam} if args.command == "mr-branch" else {}
            if args.jobs < 1:
                raise ConfigError("--jobs must be >= 1")
            rec = run_sweep(args.command, cfg, extra, jobs=args.jobs)
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NUMERIC_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    csv_path, json_path = write_outputs(rec, cfg.out_dir)
    print_report(rec)
    print(f"wrote {csv_path} and {json_path}")
    return EXIT_OK if rec.ok else EXIT_NUMERIC


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
