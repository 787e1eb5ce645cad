"""Reproducible scenario runner.

    hqz <scenario> [--key=value ...] [--config PATH] [--out PATH] [--format csv|jsonl]

One subcommand per verifiable claim; every scenario runs with zero
configuration, writes one table, prints a single PASS/FAIL line against
its acceptance thresholds, and exits 0 iff PASS.  A plain-text key=value
config file can seed the options and command-line flags override it; the
environment variable HQZ_SEED overrides the seed count from either.
Unknown scenarios or keys are rejected (exit 2); unwritable output paths
exit 3.  Floats are formatted with 17 significant digits so rerunning a
configuration reproduces the output byte for byte.
"""

from __future__ import annotations

import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from .ball import (AffineBallMap, X_of, Y_of, ball_green_calibration,
                   ball_green_identity_n3, phi_of_m, ratio_limit_scan)
from .errors import ConfigError, HqzError
from .functionals import (_l1_norm_calderon, _l1_norm_series,
                          calderon_ratio_estimate)
from .laplacian import audit_laplacians, disk_green_identity, laplacian_ratio_sup
from .planar import PlanarHarmonicMap, dilatation_sup, random_qr_map
from .quadrature import QuadratureSpec
from .series import ComplexSeries, random_series
from .theorems import (fuzz_search, verify_T1, verify_T2, verify_T2_strip,
                       verify_T3_affine)

SCENARIOS = (
    "reproduce-sharpness-3d",
    "reproduce-ratio-limit",
    "reproduce-strip",
    "verify-t1",
    "verify-t2",
    "verify-t3",
    "fuzz",
    "laplacian-audit",
    "green-audit",
    "calderon-estimate",
)

_INT_KEYS = {"seeds", "n", "degree", "circle_nodes", "radial_nodes",
             "refinement_limit"}
_FLOAT_KEYS = {"k", "r", "abs_tol", "c1c2"}
_STR_KEYS = {"out", "format", "config"}
KNOWN_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS


@dataclass
class RunConfig:
    scenario: str
    quadrature: QuadratureSpec = QuadratureSpec()
    seeds: int = -1          # -1 means "scenario default"
    n: int = -1
    k: float = -1.0
    r: float = 1.0
    degree: int = 16
    c1c2: float = -1.0
    output_path: str = ""
    format: str = "csv"

    extras: dict = field(default_factory=dict)


def _parse_value(key: str, raw: str):
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
        return raw
    except ValueError as exc:
        raise ConfigError(f"cannot parse value for {key!r}: {raw!r}") from exc


def _read_config_file(path: str) -> dict:
    out: dict = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key=value")
                key, raw = (s.strip() for s in line.split("=", 1))
                if key == "scenario":
                    out["scenario"] = raw
                    continue
                if key not in KNOWN_KEYS:
                    raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
                out[key] = _parse_value(key, raw)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return out


def parse_args(argv: list[str]) -> RunConfig:
    if not argv:
        raise ConfigError(
            "usage: hqz <scenario> [--key=value ...] [--out PATH] [--format csv|jsonl]\n"
            "scenarios: " + " ".join(SCENARIOS))
    scenario = argv[0]
    if scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {scenario!r}; choose from: "
                          + ", ".join(SCENARIOS))
    # collect --key=value and --key value tokens
    raw: dict = {}
    i = 1
    while i < len(argv):
        tok = argv[i]
        if not tok.startswith("--"):
            raise ConfigError(f"unexpected argument {tok!r}")
        body = tok[2:]
        if "=" in body:
            key, val = body.split("=", 1)
        else:
            key = body
            i += 1
            if i >= len(argv):
                raise ConfigError(f"flag --{key} needs a value")
            val = argv[i]
        key = key.replace("-", "_")
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}")
        raw[key] = _parse_value(key, val)
        i += 1

    merged: dict = {}
    if "config" in raw:
        merged.update(_read_config_file(str(raw["config"])))
        if merged.pop("scenario", scenario) != scenario:
            raise ConfigError("config file scenario differs from command line")
    env_seed = os.environ.get("HQZ_SEED")
    if env_seed is not None:
        merged["seeds"] = _parse_value("seeds", env_seed)
    merged.update({k: v for k, v in raw.items() if k != "config"})

    fmt = str(merged.get("format", "csv"))
    if fmt not in ("csv", "jsonl"):
        raise ConfigError(f"format must be csv or jsonl, got {fmt!r}")

    quad = QuadratureSpec(
        circle_nodes=int(merged.get("circle_nodes", 512)),
        radial_nodes=int(merged.get("radial_nodes", 32)),
        refinement_limit=int(merged.get("refinement_limit", 12)),
        abs_tol=float(merged.get("abs_tol", 1e-10)),
    )
    return RunConfig(
        scenario=scenario,
        quadrature=quad,
        seeds=int(merged.get("seeds", -1)),
        n=int(merged.get("n", -1)),
        k=float(merged.get("k", -1.0)),
        r=float(merged.get("r", 1.0)),
        degree=int(merged.get("degree", 16)),
        c1c2=float(merged.get("c1c2", -1.0)),
        output_path=str(merged.get("out", "")),
        format=fmt,
    )


def _fmt(v) -> str:
    if isinstance(v, float):
        if math.isinf(v) or math.isnan(v):
            return repr(v)
        return format(v, ".17g")
    return str(v)


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    return v


def write_rows(rows: list[dict], path: str, fmt: str) -> None:
    header = list(rows[0].keys()) if rows else []
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            if fmt == "csv":
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(header)
                for row in rows:
                    writer.writerow([_fmt(row[k]) for k in header])
            else:
                for row in rows:
                    fh.write(json.dumps({k: _jsonable(v) for k, v in row.items()},
                                        sort_keys=True) + "\n")
    except OSError as exc:
        raise IOError(f"cannot write {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# scenario implementations: each returns (rows, passed, detail)
# ---------------------------------------------------------------------------

def _default(value, fallback):
    return fallback if value is None or value < 0 else value


def run_reproduce_sharpness_3d(cfg: RunConfig):
    q = cfg.quadrature
    rows = []
    ok = True
    for m in (2, 5, 10, 20, 50, 100):
        fam = AffineBallMap(n=3, c=float(m * m), a=float(m))
        x = X_of(fam, q)
        ph = phi_of_m(float(m))
        two_y = 2.0 * Y_of(fam, q)
        rows.append({"m": m, "X": x, "phi": ph, "phi_gap": abs(ph - 1.0 / 3.0),
                     "two_Y": two_y, "cross_check": abs(ph - two_y)})
        if m in (2, 5, 10) and abs(x - 1.0 / 3.0) > 1e-8:
            ok = False
        if abs(ph - two_y) > 1e-7:
            ok = False
    gaps = [row["phi_gap"] for row in rows if row["m"] in (10, 20, 50, 100)]
    if not all(b < a for a, b in zip(gaps[:-1], gaps[1:])):
        ok = False
    if abs(phi_of_m(100.0) - 1.0 / 3.0) >= 1e-3:
        ok = False
    detail = (f"max |X - 1/3| = {max(abs(r['X'] - 1/3) for r in rows):.2e}, "
              f"|phi(100) - 1/3| = {rows[-1]['phi_gap']:.2e}")
    return rows, ok, detail


def run_reproduce_ratio_limit(cfg: RunConfig):
    n = _default(cfg.n, 3)
    q = cfg.quadrature
    scan = ratio_limit_scan(n, (0.2, 0.1, 0.05, 0.01), q)
    rows = [{"n": r.n, "a": r.a, "X": r.X, "Y": r.Y, "ratio": r.ratio,
             "target": r.target, "deviation": r.deviation} for r in scan]
    devs = [r.deviation for r in scan]
    ok = devs[-1] < 0.05 and all(b < a for a, b in zip(devs[:-1], devs[1:]))
    detail = f"final X/Y = {scan[-1].ratio:.6f} vs target {n - 1} (dev {devs[-1]:.2%})"
    return rows, ok, detail


def run_reproduce_strip(cfg: RunConfig):
    n_max = _default(cfg.n, 64)
    q = cfg.quadrature
    rows = []
    values = []
    for n in range(1, n_max + 1):
        rep = verify_T2_strip(n, q)
        values.append(rep.lhs)
        rows.append({"n": n, "h1_norm": rep.lhs, "gap": rep.margin,
                     "gap_envelope": rep.params["gap_envelope"]})
    ok = all(v < 1.0 for v in values)
    ok = ok and all(b > a for a, b in zip(values[:-1], values[1:]))
    if n_max >= 32:
        ok = ok and (1.0 - values[31]) < 2.0 / 33.0
    ok = ok and abs(values[0] - 2.0 / math.pi) < 1e-9
    detail = (f"norms in [{values[0]:.6f}, {values[-1]:.6f}], all < 1, "
              f"gap(32) = {1.0 - values[31]:.6f}" if n_max >= 32 else
              f"norms in [{values[0]:.6f}, {values[-1]:.6f}]")
    return rows, ok, detail


def _h_corpus(seeds: int, degree: int) -> list[tuple[str, ComplexSeries]]:
    """Estimator corpus: the monomial z (the known ratio witness) plus the
    deterministic random series."""
    corpus = [("z", ComplexSeries((0j, 1.0 + 0j)))]
    corpus.extend((f"seed{seed}", random_series(seed, degree, zero_constant=True))
                  for seed in range(seeds))
    return corpus


def run_calderon_estimate(cfg: RunConfig):
    seeds = _default(cfg.seeds, 100)
    q = cfg.quadrature
    rows = []
    c1_lb, c2_lb = 0.0, 0.0
    for label, H in _h_corpus(seeds, cfg.degree):
        nh = _l1_norm_series(H, q)
        ng = _l1_norm_calderon(H, q)
        rows.append({"member": label, "norm_H": nh, "norm_GH": ng,
                     "ratio_H_over_GH": nh / ng, "ratio_GH_over_H": ng / nh})
        c1_lb = max(c1_lb, nh / ng)
        c2_lb = max(c2_lb, ng / nh)
    rows.append({"member": "max", "norm_H": math.nan, "norm_GH": math.nan,
                 "ratio_H_over_GH": c1_lb, "ratio_GH_over_H": c2_lb})
    baseline = math.sqrt(2.0)
    ok = (math.isfinite(c1_lb) and math.isfinite(c2_lb)
          and c1_lb >= baseline - 1e-9 and c2_lb >= 1.0 / baseline - 1e-9)
    detail = f"c1 lower bound {c1_lb:.6f}, c2 lower bound {c2_lb:.6f} over {seeds} series"
    return rows, ok, detail


def run_verify_t1(cfg: RunConfig):
    seeds = _default(cfg.seeds, 100)
    k = cfg.k if cfg.k >= 0 else 0.3
    q = cfg.quadrature
    corpus = [H for _, H in _h_corpus(seeds, cfg.degree)]
    c1_lb, c2_lb = calderon_ratio_estimate(corpus, q)
    c1c2 = cfg.c1c2 if cfg.c1c2 > 0 else c1_lb * c2_lb
    rows = []
    ok = math.isfinite(c1c2) and c1c2 > 0
    for seed in range(min(seeds, 20)):
        m = random_qr_map(seed, k, cfg.degree)
        rep = verify_T1(m, cfg.r, c1c2, q)
        rows.append({"seed": seed, "k": k, "lhs": rep.lhs, "rhs": rep.rhs,
                     "margin": rep.margin, "quad_error": rep.quad_error,
                     "empirical_constant": rep.params["empirical_constant"]})
        if rep.margin < -rep.quad_error:
            ok = False
    detail = f"c1c2 = {c1c2:.6f}; min margin = {min(r['margin'] for r in rows):.6f}"
    return rows, ok, detail


def run_verify_t2(cfg: RunConfig):
    seeds = _default(cfg.seeds, 200)
    q = cfg.quadrature
    rows = []
    ok = True
    worst = math.inf
    for k in (0.0, 0.1, 0.3, 0.5):
        summary = fuzz_search(seeds, k, cfg.degree, q, r=cfg.r)
        rows.append({"k": k, "seeds": summary.seeds,
                     "worst_margin": summary.worst_margin,
                     "best_ratio": summary.best_ratio})
        worst = min(worst, summary.worst_margin)
        if summary.seeds > 0 and summary.worst_margin < -1e-9:
            ok = False
    constant = PlanarHarmonicMap(g=ComplexSeries.constant(1.0),
                                 h=ComplexSeries.zero())
    degenerate = verify_T2(constant, 1.0, q, K=1.0)
    rows.append({"k": 0.0, "seeds": 0, "worst_margin": degenerate.margin,
                 "best_ratio": degenerate.lhs / degenerate.rhs})
    if degenerate.margin != 0.0:
        ok = False
    detail = f"worst margin over corpus = {worst!r}; degenerate margin = {degenerate.margin!r}"
    return rows, ok, detail


def run_verify_t3(cfg: RunConfig):
    q = cfg.quadrature
    rows = []
    ok = True
    for m in (2.0, 5.0, 10.0):
        rep = verify_T3_affine(AffineBallMap(n=3, c=m * m, a=m), q)
        rows.append({"family": "m", "n": 3, "param": m, "lhs_X": rep.lhs,
                     "rhs": rep.rhs, "margin": rep.margin,
                     "ratio": rep.lhs / rep.rhs})
        if rep.margin < -1e-9:
            ok = False
    for n in range(2, 9):
        rep = verify_T3_affine(AffineBallMap(n=n, c=1.0, a=0.01), q)
        ratio = rep.lhs / rep.params["Y"]
        rows.append({"family": "a", "n": n, "param": 0.01, "lhs_X": rep.lhs,
                     "rhs": rep.rhs, "margin": rep.margin,
                     "ratio": ratio / (n - 1)})
        if rep.margin < -1e-9 or abs(ratio - (n - 1)) / (n - 1) >= 0.05:
            ok = False
    detail = f"min margin = {min(r['margin'] for r in rows):.3e}"
    return rows, ok, detail


def run_fuzz(cfg: RunConfig):
    seeds = _default(cfg.seeds, 200)
    k = cfg.k if cfg.k >= 0 else 0.5
    summary = fuzz_search(seeds, k, cfg.degree, cfg.quadrature, r=cfg.r)
    rows = [{"seeds": summary.seeds, "k": k,
             "worst_margin": summary.worst_margin,
             "best_ratio": summary.best_ratio,
             "witness": summary.witness}]
    ok = summary.seeds == 0 or summary.worst_margin >= -1e-9
    if summary.seeds == 0:
        detail = "empty corpus, vacuous PASS"
    else:
        detail = (f"worst margin {summary.worst_margin:.3e}, "
                  f"best ratio {summary.best_ratio:.6f} over {seeds} seeds")
    return rows, ok, detail


def run_laplacian_audit(cfg: RunConfig):
    seeds = _default(cfg.seeds, 40)
    k = cfg.k if cfg.k >= 0 else 0.3
    rows = []
    ok = True
    radii = (0.25, 0.55, 0.8)
    angles = [2.0 * math.pi * j / 5 for j in range(5)]
    points = [r * complex(math.cos(t), math.sin(t)) for r in radii for t in angles]
    pts = np.asarray(points, dtype=complex)
    for seed in range(seeds):
        m = random_qr_map(seed, k, cfg.degree)
        audit = audit_laplacians(m, pts)
        rep = dilatation_sup(m)
        ratio = laplacian_ratio_sup(m)
        bound = rep.K_hat ** 2 * (1.0 + 1e-9)
        rows.append({"seed": seed, "k": k, "points": len(audit.rows),
                     "skipped": audit.skipped,
                     "max_rel_abs_f": audit.max_rel_abs_f,
                     "max_rel_ulogu": audit.max_rel_ulogu,
                     "max_ratio": ratio, "K2_bound": bound})
        if audit.max_rel_abs_f > 1e-5 or audit.max_rel_ulogu > 1e-5 or ratio > bound:
            ok = False
    worst = max(max(r["max_rel_abs_f"], r["max_rel_ulogu"]) for r in rows)
    detail = f"worst FD relative deviation {worst:.2e} over {seeds} maps"
    return rows, ok, detail


def run_green_audit(cfg: RunConfig):
    q = cfg.quadrature
    rows = []
    m1 = PlanarHarmonicMap(g=ComplexSeries((2.0, 1.0)), h=ComplexSeries.zero())
    res1 = disk_green_identity(m1, 0.9, q)
    rows.append({"case": "disk_2_plus_z", "residual": res1, "threshold": 1e-6})
    m2 = random_qr_map(7, 0.3, cfg.degree)
    res2 = disk_green_identity(m2, 0.9, q)
    rows.append({"case": "disk_fuzz_k03", "residual": res2, "threshold": 1e-6})
    res3 = ball_green_calibration(q)
    rows.append({"case": "ball_calibration_x2", "residual": res3, "threshold": 1e-10})
    res4 = ball_green_identity_n3(AffineBallMap(n=3, c=4.0, a=2.0), q)
    rows.append({"case": "ball_m2_family", "residual": res4, "threshold": 1e-4})
    ok = all(abs(r["residual"]) < r["threshold"] for r in rows)
    detail = "; ".join(f"{r['case']}={r['residual']:.2e}" for r in rows)
    return rows, ok, detail


RUNNERS = {
    "reproduce-sharpness-3d": run_reproduce_sharpness_3d,
    "reproduce-ratio-limit": run_reproduce_ratio_limit,
    "reproduce-strip": run_reproduce_strip,
    "verify-t1": run_verify_t1,
    "verify-t2": run_verify_t2,
    "verify-t3": run_verify_t3,
    "fuzz": run_fuzz,
    "laplacian-audit": run_laplacian_audit,
    "green-audit": run_green_audit,
    "calderon-estimate": run_calderon_estimate,
}


def run(cfg: RunConfig) -> int:
    """Execute a scenario, write its table, print one PASS/FAIL line."""
    rows, passed, detail = RUNNERS[cfg.scenario](cfg)
    path = cfg.output_path or f"{cfg.scenario}.{cfg.format}"
    write_rows(rows, path, cfg.format)
    status = "PASS" if passed else "FAIL"
    print(f"[{status}] {cfg.scenario}: {detail} -> {path}")
    return 0 if passed else 1


def main(argv: list[str] | None = None) -> int:
    args = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(args)
        return run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (IOError, OSError) as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3
    except HqzError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
