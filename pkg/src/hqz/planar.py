"""Planar harmonic maps f = g + conj(h) with controlled dilatation.

A sense-preserving harmonic map of the unit disk splits as f = g + conj(h)
with g, h holomorphic and h(0) = 0; it is k-quasiregular exactly when
|h'| <= k |g'| with k = (K-1)/(K+1).  Everything here works on truncated
power series, so construction and differentiation are exact and the only
numerics live in grid suprema.

``make_qr_map`` engineers a map with prescribed analytic ratio
omega = h'/g' and prescribed g + h = F (hence Re f = Re F and
Im f(0) = Im F(0)), which is how the fuzz corpus realizes positive real
part and an exact dilatation envelope by construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (DegenerateDerivative, DomainError, HypothesisViolation,
                     TruncationOverflow)
from .quadrature import QuadratureSpec
from .series import DEGREE_CAP, ComplexSeries

#: floor distinguishing genuine critical points of g from rounding
TAU_G = 1e-9

#: default grid/refinement policy for sup-norm scans over the disk; the
#: polish step carries the accuracy, so levels converge after one doubling
SUP_GRID_SPEC = QuadratureSpec(circle_nodes=512, radial_nodes=64,
                               refinement_limit=4, abs_tol=1e-9)


@dataclass(frozen=True)
class PlanarHarmonicMap:
    """Pair (g, h) encoding f = g + conj(h), plus the claimed dilatation bound."""

    g: ComplexSeries
    h: ComplexSeries
    k_declared: float = 0.0

    def __post_init__(self) -> None:
        if self.h.coeffs[0] != 0:
            raise DomainError("h(0) must vanish in the decomposition f = g + conj(h)")
        if not 0.0 <= self.k_declared < 1.0:
            raise DomainError("k_declared must lie in [0, 1)")

    @cached_property
    def g_prime(self) -> ComplexSeries:
        return self.g.derivative()

    @cached_property
    def h_prime(self) -> ComplexSeries:
        return self.h.derivative()

    def __call__(self, z):
        return self.g(z) + np.conjugate(self.h(z))

    def u(self, z):
        """Real part of f."""
        return np.real(self.g(z) + np.conjugate(self.h(z)))

    def v(self, z):
        """Imaginary part of f."""
        return np.imag(self.g(z) + np.conjugate(self.h(z)))

    def f0(self) -> complex:
        return complex(self.g.coeffs[0])

    @property
    def K_declared(self) -> float:
        return (1.0 + self.k_declared) / (1.0 - self.k_declared)


@dataclass(frozen=True)
class DilatationReport:
    k_hat: float
    K_hat: float
    grid: str


def eval_map(m: PlanarHarmonicMap, z: complex) -> complex:
    """f(z) = g(z) + conj(h(z)) for |z| <= 1."""
    if abs(z) > 1.0 + 1e-12:
        raise DomainError(f"evaluation point |z| = {abs(z)} outside the closed disk")
    return complex(m.g(complex(z)) + m.h(complex(z)).conjugate())


def disk_grid(n_radii: int, n_angles: int, r_max: float = 1.0,
              include_zero: bool = True) -> np.ndarray:
    """Tensor grid of radii {j/n_radii} * r_max and uniform angles."""
    radii = r_max * np.arange(1, n_radii + 1) / n_radii
    angles = 2.0 * np.pi * np.arange(n_angles) / n_angles
    pts = np.outer(radii, np.exp(1j * angles)).ravel()
    if include_zero:
        pts = np.concatenate(([0j], pts))
    return pts


def _ratio_values(m: PlanarHarmonicMap, z: np.ndarray, tau_g: float) -> np.ndarray:
    gp = np.abs(m.g_prime(z))
    hp = np.abs(m.h_prime(z))
    gmin = float(gp.min())
    if gmin <= tau_g:
        raise DegenerateDerivative(
            f"min |g'| = {gmin:.3e} <= {tau_g:.1e} on the sample grid")
    return hp / gp


def _polar_values(s, radii: np.ndarray, n_angles: int) -> np.ndarray:
    """Series values on the polar tensor grid radii x uniform angles.

    On uniform angles the Horner sum is a zero-padded inverse FFT of the
    radius-scaled coefficients, one transform per radius row.
    """
    coeffs = s._arr
    if n_angles < len(coeffs):
        angles = 2.0 * np.pi * np.arange(n_angles) / n_angles
        return s(np.outer(radii, np.exp(1j * angles)))
    powers = radii[:, None] ** np.arange(len(coeffs))[None, :]
    buf = np.zeros((len(radii), n_angles), dtype=complex)
    buf[:, : len(coeffs)] = coeffs[None, :] * powers
    return np.fft.ifft(buf, axis=1) * n_angles


def _grid_dilatation(m: PlanarHarmonicMap, n_radii: int, n_angles: int,
                     tau_g: float) -> tuple[float, float, float]:
    """(max ratio, argmax radius, argmax angle) over the tensor grid."""
    radii = np.concatenate(([0.0], np.arange(1, n_radii + 1) / n_radii))
    gp = np.abs(_polar_values(m.g_prime, radii, n_angles))
    hp = np.abs(_polar_values(m.h_prime, radii, n_angles))
    gmin = float(gp.min())
    if gmin <= tau_g:
        raise DegenerateDerivative(
            f"min |g'| = {gmin:.3e} <= {tau_g:.1e} on the sample grid")
    ratio = hp / gp
    i, j = np.unravel_index(int(np.argmax(ratio)), ratio.shape)
    return float(ratio[i, j]), float(radii[i]), float(2.0 * np.pi * j / n_angles)


def _polish_max(m: PlanarHarmonicMap, r0: float, t0: float, dr: float,
                dt: float, tau_g: float, rounds: int = 12) -> float:
    """Shrinking local grid search around a coarse argmax.

    The ratio is smooth where g' does not vanish, so each round reduces
    the bracket by 4x and the final value is exact to well below 1e-12.
    """
    best = float(_ratio_values(m, np.asarray([r0 * np.exp(1j * t0)]), tau_g)[0])
    for _ in range(rounds):
        rs = np.clip(np.linspace(r0 - dr, r0 + dr, 9), 0.0, 1.0)
        ts = np.linspace(t0 - dt, t0 + dt, 9)
        z = np.outer(rs, np.exp(1j * ts))
        ratio = _ratio_values(m, z.ravel(), tau_g).reshape(z.shape)
        i, j = np.unravel_index(int(np.argmax(ratio)), ratio.shape)
        if ratio[i, j] > best:
            best = float(ratio[i, j])
            r0, t0 = float(rs[i]), float(ts[j])
        dr /= 4.0
        dt /= 4.0
    return best


def dilatation_sup(m: PlanarHarmonicMap, grid: QuadratureSpec | None = None,
                   tau_g: float = TAU_G) -> DilatationReport:
    """Grid supremum of |h'/g'|, refined until stable.

    Each level combines the tensor grid (localization) with a shrinking
    local search around the argmax (polish); levels double the grid and
    stop once the polished supremum moves by less than ``grid.abs_tol``.
    The result is always a lower bound for the true dilatation.
    """
    spec = grid if grid is not None else SUP_GRID_SPEC
    n_r, n_t = spec.radial_nodes, spec.circle_nodes

    def level(nr: int, nt: int) -> float:
        raw, r0, t0 = _grid_dilatation(m, nr, nt, tau_g)
        return _polish_max(m, r0, t0, 1.0 / nr, 2.0 * np.pi / nt, tau_g)

    k_hat = level(n_r, n_t)
    levels = 0
    for _ in range(spec.refinement_limit):
        n_r *= 2
        n_t *= 2
        nxt = level(n_r, n_t)
        levels += 1
        moved = abs(nxt - k_hat)
        k_hat = max(k_hat, nxt)
        if moved <= spec.abs_tol:
            break
    if k_hat >= 1.0:
        raise HypothesisViolation(
            f"grid dilatation {k_hat:.6f} >= 1: map is not sense-preserving QR")
    K_hat = (1.0 + k_hat) / (1.0 - k_hat)
    return DilatationReport(k_hat=k_hat, K_hat=K_hat,
                            grid=f"radii={n_r},angles={n_t},levels={levels}")


def make_qr_map(F: ComplexSeries, omega: ComplexSeries,
                truncation_degree: int = DEGREE_CAP) -> PlanarHarmonicMap:
    """Map with g + h = F and h'/g' = omega, as truncated series.

    g' = F'/(1 + omega) and h' = omega F'/(1 + omega) are expanded by the
    reciprocal recursion and integrated termwise, so Re f = Re F exactly in
    coefficient arithmetic and the dilatation equals |omega| pointwise (up
    to the geometrically small truncation tail).

    Requires F(0) real and sup |omega| < 1 (certified via the coefficient
    l1 norm when possible).
    """
    if truncation_degree > DEGREE_CAP:
        raise TruncationOverflow(
            f"requested degree {truncation_degree} exceeds cap {DEGREE_CAP}")
    if truncation_degree < 1:
        raise DomainError("truncation_degree must be >= 1")
    if abs(F.coeffs[0].imag) > 0:
        raise DomainError("F(0) must be real so that Im f(0) = 0")
    if omega.coeff_abs_sum() >= 1.0:
        # l1 envelope is the cheap sufficient certificate; a genuine
        # sup |omega| >= 1 would break sense-preservation anyway
        sup_grid = float(np.abs(omega(disk_grid(32, 256))).max())
        if sup_grid >= 1.0:
            raise DomainError(f"sup |omega| >= 1 on the disk (grid value {sup_grid:.4f})")
    Fp = F.derivative()
    one_plus = ComplexSeries.constant(1.0) + omega
    recip = one_plus.reciprocal(truncation_degree - 1)
    gp = (Fp * recip).truncated(truncation_degree - 1)
    hp = (omega * gp).truncated(truncation_degree - 1)
    g = ComplexSeries((F.coeffs[0],)) + gp.antiderivative()
    h = hp.antiderivative()
    k_decl = min(omega.coeff_abs_sum(), 1.0 - 1e-15)
    return PlanarHarmonicMap(g=g, h=h, k_declared=k_decl)


def random_qr_map(seed: int, k: float, degree: int = 16,
                  positivity_margin: float = 0.05) -> PlanarHarmonicMap:
    """Deterministic fuzz-corpus generator.

    Draws F = c0 + sum c_j z^j with c0 real and sum |c_j| <= c0 - margin,
    so Re F >= margin on the closed disk by the triangle inequality, and
    omega with coefficient l1 norm <= k, so sup |omega| <= k.  The same
    seed reproduces the same coefficients byte for byte.
    """
    if not 0.0 <= k < 1.0:
        raise DomainError("k must lie in [0, 1)")
    if positivity_margin <= 0.0:
        raise DomainError("positivity_margin must be positive")
    rng = np.random.default_rng(seed)
    c0 = float(rng.uniform(0.8, 2.0))
    budget = c0 - positivity_margin
    if budget <= 0.0:
        raise DomainError("positivity_margin leaves no coefficient budget")
    raw = rng.standard_normal(degree) + 1j * rng.standard_normal(degree)
    mass = float(rng.uniform(0.05, 0.9)) * budget
    tail = raw * (mass / np.abs(raw).sum())
    F = ComplexSeries((complex(c0),) + tuple(complex(c) for c in tail))
    if k == 0.0:
        omega = ComplexSeries.zero()
    else:
        raw2 = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
        target = float(rng.uniform(0.5, 1.0)) * k
        raw2 = raw2 * (target / np.abs(raw2).sum())
        omega = ComplexSeries(tuple(complex(c) for c in raw2))
    m = make_qr_map(F, omega, DEGREE_CAP)
    return PlanarHarmonicMap(g=m.g, h=m.h, k_declared=k)


def strip_example(n: int) -> PlanarHarmonicMap:
    """The analytic map z -> n/(n+1) + z/(n+1) into the strip (0,1) x R."""
    if n < 1:
        raise DomainError("n must be a positive integer")
    g = ComplexSeries((n / (n + 1.0), 1.0 / (n + 1.0)))
    return PlanarHarmonicMap(g=g, h=ComplexSeries.zero(), k_declared=0.0)


def map_to_json(m: PlanarHarmonicMap) -> str:
    """Serialize as {"g": [[re, im], ...], "h": [[re, im], ...], "k": real}."""
    payload = {
        "g": [[c.real, c.imag] for c in m.g.coeffs],
        "h": [[c.real, c.imag] for c in m.h.coeffs],
        "k": m.k_declared,
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def map_from_json(text: str) -> PlanarHarmonicMap:
    payload = json.loads(text)
    g = ComplexSeries(tuple(complex(re, im) for re, im in payload["g"]))
    h = ComplexSeries(tuple(complex(re, im) for re, im in payload["h"]))
    return PlanarHarmonicMap(g=g, h=h, k_declared=float(payload["k"]))


def jacobian(m: PlanarHarmonicMap, z) -> float:
    """|g'|^2 - |h'|^2; positive exactly where f is sense-preserving."""
    gp = m.g_prime(z)
    hp = m.h_prime(z)
    return np.abs(gp) ** 2 - np.abs(hp) ** 2
