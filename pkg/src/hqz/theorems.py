"""Explicit verifiers for the three Zygmund-type inequalities and the
strip bound, plus a randomized tightness search.

Each verifier evaluates both sides of one inequality instance with the
quadrature machinery and returns a TheoremReport whose margin
(rhs - lhs) must stay above -quad_error.  The planar sharp bound reads

    M_1(r, f) <= K^2 ( exp(-1 + 1/K^2) + (1/2pi) int u log u dt )

for K-quasiregular f with u = Re f > 0 and v(0) = 0; its affine-family
analogue on the ball is

    X(f) <= K^2 (n - 1) Y(f)

(K = 1 for the affine family), and the non-sharp planar bound carries
the symbolic square-function constants c1, c2, supplied by the caller
because they are estimated, not computed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping

from .ball import AffineBallMap, X_of, Y_of, ulogplus_mean
from .errors import HypothesisViolation, NonpositiveRealPart
from .functionals import (circle_mean_p, entropy_u_report, hardy_norm_estimate,
                          zygmund_plus_report)
from .planar import (PlanarHarmonicMap, dilatation_sup, map_to_json,
                     random_qr_map, strip_example)
from .quadrature import DEFAULT_SPEC, QuadratureSpec

#: tolerance for the v(0) = 0 hypothesis; constructions satisfy it exactly
V0_TOL = 1e-12

#: corpus runs localize on this lighter grid; the polish step inside
#: dilatation_sup still pins the supremum to machine precision
CORPUS_DILATATION_GRID = QuadratureSpec(circle_nodes=256, radial_nodes=24,
                                        refinement_limit=3, abs_tol=1e-9)

#: the classical-theorem envelope constant 2 (6 pi e + 1) appearing in the
#: non-sharp bound
T1_ENVELOPE = 2.0 * (6.0 * math.pi * math.e + 1.0)


@dataclass(frozen=True)
class TheoremReport:
    theorem_id: str
    params: Mapping[str, float]
    lhs: float
    rhs: float
    margin: float
    quad_error: float

    def to_json(self) -> str:
        payload = {
            "theorem_id": self.theorem_id,
            "params": dict(sorted(self.params.items())),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "quad_error": self.quad_error,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class FuzzSummary:
    seeds: int
    worst_margin: float
    best_ratio: float
    witness: str


def _resolve_K(m: PlanarHarmonicMap, K: float | None,
               dilatation_grid: QuadratureSpec | None) -> float:
    if K is not None:
        if K < 1.0:
            raise HypothesisViolation("K must be >= 1")
        return float(K)
    return dilatation_sup(m, dilatation_grid).K_hat


def verify_T2(m: PlanarHarmonicMap, r: float, q: QuadratureSpec,
              K: float | None = None,
              dilatation_grid: QuadratureSpec | None = None) -> TheoremReport:
    """Sharp planar bound for positive real part and v(0) = 0.

    K is measured by dilatation_sup unless supplied (constant maps have no
    measurable dilatation, so the degenerate check passes K = 1 directly).
    """
    v0 = float(m.v(0j))
    if abs(v0) > V0_TOL:
        raise HypothesisViolation(f"v(0) = {v0:.3e}, expected 0")
    K_val = _resolve_K(m, K, dilatation_grid)
    try:
        ent, ent_err, _ = entropy_u_report(m, r, q)
    except NonpositiveRealPart as exc:
        raise HypothesisViolation(f"u must be positive on the circle: {exc}") from exc
    lhs_rep = circle_mean_p(m, r, 1.0, q)
    rhs = K_val ** 2 * (math.exp(-1.0 + K_val ** -2) + ent)
    quad_error = lhs_rep.est_error + K_val ** 2 * ent_err
    return TheoremReport(
        theorem_id="T2",
        params={"K": K_val, "k": (K_val - 1.0) / (K_val + 1.0), "r": r,
                "u0": float(m.u(0j)), "entropy": ent},
        lhs=lhs_rep.value,
        rhs=rhs,
        margin=rhs - lhs_rep.value,
        quad_error=quad_error,
    )


def verify_T2_strip(n: int, q: QuadratureSpec) -> TheoremReport:
    """Strip bound: the map n/(n+1) + z/(n+1) has h^1 norm strictly below 1,
    with gap shrinking like 1/(n+1) (that envelope is reported as a param)."""
    m = strip_example(n)
    lhs = hardy_norm_estimate(m, 1.0, q)
    rep = circle_mean_p(m, 1.0, 1.0, q)
    return TheoremReport(
        theorem_id="T2_strip",
        params={"n": float(n), "gap": 1.0 - lhs, "gap_envelope": 2.0 / (n + 1.0)},
        lhs=lhs,
        rhs=1.0,
        margin=1.0 - lhs,
        quad_error=rep.est_error,
    )


def verify_T1(m: PlanarHarmonicMap, r: float, c1c2: float, q: QuadratureSpec,
              K: float | None = None,
              dilatation_grid: QuadratureSpec | None = None) -> TheoremReport:
    """Non-sharp planar bound M_1 <= 2(6 pi e + 1) c1c2 K (1 + zygmund_plus).

    The square-function constants enter as the caller-supplied product
    c1c2; the report also carries the hypothesis-free empirical constant
    lhs / (1 + zygmund_plus) for comparison with corpus estimates.
    """
    if c1c2 <= 0.0:
        raise HypothesisViolation("c1c2 must be positive")
    K_val = _resolve_K(m, K, dilatation_grid)
    zp, zp_err, _ = zygmund_plus_report(m, r, q)
    lhs_rep = circle_mean_p(m, r, 1.0, q)
    rhs = T1_ENVELOPE * c1c2 * K_val * (1.0 + zp)
    quad_error = lhs_rep.est_error + T1_ENVELOPE * c1c2 * K_val * zp_err
    return TheoremReport(
        theorem_id="T1",
        params={"K": K_val, "r": r, "c1c2": c1c2, "zygmund_plus": zp,
                "empirical_constant": lhs_rep.value / (1.0 + zp)},
        lhs=lhs_rep.value,
        rhs=rhs,
        margin=rhs - lhs_rep.value,
        quad_error=quad_error,
    )


def verify_T3_affine(m: AffineBallMap, q: QuadratureSpec) -> TheoremReport:
    """Ball inequality X(f) <= (n-1) Y(f) on the affine family (K = 1).

    The rhs uses the quadrature entropy difference directly; when
    |f(0)| = u(0) (always true here) the report also carries the
    log-plus variant rhs (n-1)(exp(-1 + 1/(n-1)) + mean u log+ u).
    """
    if m.c <= m.a:
        raise HypothesisViolation(f"need c > a for positive u (c={m.c}, a={m.a})")
    x = X_of(m, q)
    y = Y_of(m, q)
    rhs = (m.n - 1) * y
    nm1 = float(m.n - 1)
    params = {"n": float(m.n), "c": m.c, "a": m.a, "Y": y,
              "h1_norm": x + m.c,
              "rhs_logplus": nm1 * (math.exp(-1.0 + 1.0 / nm1)
                                    + ulogplus_mean(m, q))}
    return TheoremReport(
        theorem_id="T3",
        params=params,
        lhs=x,
        rhs=rhs,
        margin=rhs - x,
        quad_error=2.0 * q.abs_tol * max(1, m.n),
    )


def fuzz_search(seeds: int, k: float, degree: int = 16,
                q: QuadratureSpec = DEFAULT_SPEC, r: float = 1.0,
                positivity_margin: float = 0.05) -> FuzzSummary:
    """Run the sharp planar verifier across the deterministic corpus.

    Returns the worst margin, the best lhs/rhs ratio (tightness), and the
    serialized map attaining that ratio.  seeds = 0 yields the vacuous
    summary (infinite worst margin, zero best ratio, empty witness).
    """
    worst = math.inf
    best = 0.0
    witness = ""
    for seed in range(seeds):
        m = random_qr_map(seed, k, degree, positivity_margin)
        rep = verify_T2(m, r, q, dilatation_grid=CORPUS_DILATATION_GRID)
        if rep.margin < worst:
            worst = rep.margin
        ratio = rep.lhs / rep.rhs
        if ratio > best:
            best = ratio
            witness = map_to_json(m)
    return FuzzSummary(seeds=seeds, worst_margin=worst, best_ratio=best,
                       witness=witness)
