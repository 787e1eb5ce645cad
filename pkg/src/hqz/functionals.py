"""Circle functionals on harmonic maps.

Integral means M_p(r, f), the h^1 norm estimate for polynomial data, the
two entropy-type functionals

    zygmund_plus:  (1/2pi) int |u| log+ |u| dt      (log+ x = max(log x, 0))
    entropy_u:     (1/2pi) int  u  log  u  dt       (requires u > 0)

with u = Re f, the Poisson extension on the disk, and the radial square
function

    G[H](z) = ( int_0^1 |H'(rho z)|^2 (1 - rho) d rho )^(1/2)

whose L1 comparison constants against ||H||_1 are estimated empirically
from a corpus.  Circle integrals use the periodic trapezoid rule with
doubling refinement; |f| is merely piecewise smooth where f vanishes, so
the refinement-based error control is not optional.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (DomainError, EmptyCorpus, KernelBlowup,
                     MonotonicityViolation, NoConvergence, NonpositiveRealPart)
from .planar import PlanarHarmonicMap
from .quadrature import (QuadratureSpec, circle_angles, gauss_legendre,
                         refined_circle_mean)
from .series import ComplexSeries

#: evaluation points closer to the boundary than this are rejected by the
#: Poisson quadrature
POISSON_FLOOR = 1e-2

#: dyadic radius grid used as the monotonicity cross-check in the norm estimate
HARDY_RADII = tuple(1.0 - 2.0 ** -j for j in range(1, 7))


@dataclass(frozen=True)
class MeanReport:
    r: float
    p: float
    value: float
    nodes: int
    est_error: float

    def as_row(self) -> dict:
        """CSV export columns, in order."""
        return {"r": self.r, "p": self.p, "value": self.value,
                "nodes": self.nodes, "est_error": self.est_error}


def _map_on_circle(m: PlanarHarmonicMap, r: float) -> Callable[[np.ndarray], np.ndarray]:
    def values(theta: np.ndarray) -> np.ndarray:
        z = r * np.exp(1j * theta)
        return m.g(z) + np.conjugate(m.h(z))
    return values


def circle_mean_p(m: PlanarHarmonicMap, r: float, p: float,
                  q: QuadratureSpec) -> MeanReport:
    """M_p(r, f) = ((1/2pi) int |f(r e^it)|^p dt)^(1/p) with refinement."""
    if not 0.0 < r <= 1.0:
        raise DomainError("radius must lie in (0, 1]")
    if p <= 0.0:
        raise DomainError("exponent p must be positive")
    fvals = _map_on_circle(m, r)

    def integrand(theta: np.ndarray) -> np.ndarray:
        return np.abs(fvals(theta)) ** p

    # refine on the transformed value so est_error lives on the M_p scale
    n = q.circle_nodes
    prev = float(np.mean(integrand(circle_angles(n)))) ** (1.0 / p)
    for _ in range(q.refinement_limit):
        n *= 2
        cur = float(np.mean(integrand(circle_angles(n)))) ** (1.0 / p)
        err = abs(cur - prev)
        if err <= q.abs_tol:
            return MeanReport(r=r, p=p, value=cur, nodes=n, est_error=err)
        prev = cur
    raise NoConvergence(f"M_p(r={r}, p={p}): {n} nodes, last change "
                        f"{err:.3e} > abs_tol {q.abs_tol:.3e}")


def hardy_norm_estimate(m: PlanarHarmonicMap, p: float, q: QuadratureSpec) -> float:
    """sup over radii of M_p(r, f); equals M_p(1, f) for polynomial data.

    The dyadic radius grid is evaluated as a cross-check: |f|^p is
    subharmonic, so the means must be nondecreasing in r up to quadrature
    error, and a decrease beyond tolerance raises MonotonicityViolation.
    """
    value, _ = _hardy_report(m, p, q)
    return value


def _hardy_report(m: PlanarHarmonicMap, p: float,
                  q: QuadratureSpec) -> tuple[float, float]:
    if p < 1.0:
        raise DomainError("hardy_norm_estimate requires p >= 1")
    reports = [circle_mean_p(m, r, p, q) for r in HARDY_RADII]
    top = circle_mean_p(m, 1.0, p, q)
    reports.append(top)
    for lo, hi in zip(reports[:-1], reports[1:]):
        slack = lo.est_error + hi.est_error + 1e-12
        if hi.value < lo.value - slack:
            raise MonotonicityViolation(
                f"M_p decreased from {lo.value!r} (r={lo.r}) to {hi.value!r} "
                f"(r={hi.r}) beyond tolerance {slack:.3e}")
    return top.value, top.est_error


def _log_plus(x: np.ndarray) -> np.ndarray:
    """x * log+(x) for x >= 0, with the x <= 1 branch exactly zero."""
    out = np.zeros_like(x)
    mask = x > 1.0
    out[mask] = x[mask] * np.log(x[mask])
    return out


def zygmund_plus(m: PlanarHarmonicMap, r: float, q: QuadratureSpec) -> float:
    """(1/2pi) int |u(r e^it)| log+ |u(r e^it)| dt for u = Re f."""
    value, _, _ = zygmund_plus_report(m, r, q)
    return value


def zygmund_plus_report(m: PlanarHarmonicMap, r: float,
                        q: QuadratureSpec) -> tuple[float, float, int]:
    if not 0.0 < r <= 1.0:
        raise DomainError("radius must lie in (0, 1]")
    fvals = _map_on_circle(m, r)

    def integrand(theta: np.ndarray) -> np.ndarray:
        return _log_plus(np.abs(np.real(fvals(theta))))

    return refined_circle_mean(integrand, q, context="zygmund_plus")


def entropy_u(m: PlanarHarmonicMap, r: float, q: QuadratureSpec) -> float:
    """(1/2pi) int u log u dt; may be negative; requires u > 0 on the circle."""
    value, _, _ = entropy_u_report(m, r, q)
    return value


def entropy_u_report(m: PlanarHarmonicMap, r: float,
                     q: QuadratureSpec) -> tuple[float, float, int]:
    if not 0.0 < r <= 1.0:
        raise DomainError("radius must lie in (0, 1]")
    fvals = _map_on_circle(m, r)

    def integrand(theta: np.ndarray) -> np.ndarray:
        u = np.real(fvals(theta))
        if u.min() <= 0.0:
            raise NonpositiveRealPart(
                f"min u = {u.min():.3e} <= 0 on the circle of radius {r}")
        return u * np.log(u)

    return refined_circle_mean(integrand, q, context="entropy_u")


def poisson_kernel(x: complex, theta: np.ndarray) -> np.ndarray:
    """P(x, e^it) = (1 - |x|^2) / |x - e^it|^2, the disk case of the ball kernel."""
    eta = np.exp(1j * theta)
    return (1.0 - abs(x) ** 2) / np.abs(x - eta) ** 2


def poisson_extend_circle(boundary, x: complex, q: QuadratureSpec,
                          min_distance: float = POISSON_FLOOR) -> float:
    """Harmonic extension (1/2pi) int P(x, e^it) phi(t) dt of circle data.

    ``boundary`` is either a callable t -> phi(t) (sampled uniformly, with
    refinement) or a 1-D array of uniform-in-angle samples (used as given,
    with the half-rule comparison as the error estimate).
    """
    x = complex(x)
    if 1.0 - abs(x) < min_distance:
        raise KernelBlowup(f"1 - |x| = {1.0 - abs(x):.3e} below floor {min_distance:.1e}")
    if isinstance(boundary, np.ndarray) or isinstance(boundary, (list, tuple)):
        phi = np.asarray(boundary, dtype=float)
        n = phi.size
        if n < 8:
            raise DomainError("need at least 8 uniform boundary samples")
        theta = circle_angles(n)
        full = float(np.mean(poisson_kernel(x, theta) * phi))
        return full

    def integrand(theta: np.ndarray) -> np.ndarray:
        phi = np.asarray(boundary(theta), dtype=float)
        return poisson_kernel(x, theta) * phi

    value, _, _ = refined_circle_mean(integrand, q, context="poisson_extend_circle")
    return value


def _calderon_nodes(H: ComplexSeries) -> int:
    """Gauss-Legendre count making the |H'|^2 (1 - rho) integral exact."""
    d = H.derivative().trimmed().degree
    return max(16, d + 1)


def calderon_square(H: ComplexSeries, z: complex,
                    radial_nodes: int | None = None) -> float:
    """G[H](z) = sqrt( int_0^1 |H'(rho z)|^2 (1 - rho) d rho )."""
    if abs(z) > 1.0 + 1e-12:
        raise DomainError("|z| must be <= 1")
    return float(calderon_square_on_circle(H, np.asarray([z], dtype=complex),
                                           radial_nodes)[0])


def calderon_square_on_circle(H: ComplexSeries, z: np.ndarray,
                              radial_nodes: int | None = None) -> np.ndarray:
    """Vectorized G[H] over an array of evaluation points."""
    n = radial_nodes if radial_nodes is not None else _calderon_nodes(H)
    rho, w = gauss_legendre(n, 0.0, 1.0)
    Hp = H.derivative()
    acc = np.zeros(z.shape, dtype=float)
    for rho_i, w_i in zip(rho, w):
        vals = Hp(rho_i * z)
        acc += w_i * (1.0 - rho_i) * (vals.real ** 2 + vals.imag ** 2)
    return np.sqrt(acc)


def _l1_norm_series(H: ComplexSeries, q: QuadratureSpec) -> float:
    def integrand(theta: np.ndarray) -> np.ndarray:
        return np.abs(H(np.exp(1j * theta)))
    value, _, _ = refined_circle_mean(integrand, q, context="||H||_1")
    return value


def _l1_norm_calderon(H: ComplexSeries, q: QuadratureSpec) -> float:
    nodes = _calderon_nodes(H)

    def integrand(theta: np.ndarray) -> np.ndarray:
        return calderon_square_on_circle(H, np.exp(1j * theta), nodes)

    value, _, _ = refined_circle_mean(integrand, q, context="||G[H]||_1")
    return value


def calderon_ratio_estimate(corpus: Sequence[ComplexSeries],
                            q: QuadratureSpec) -> tuple[float, float]:
    """Empirical lower bounds for the two square-function comparison constants.

    Returns (max ||H||_1 / ||G[H]||_1, max ||G[H]||_1 / ||H||_1) over the
    corpus; every H must satisfy H(0) = 0.
    """
    if len(corpus) == 0:
        raise EmptyCorpus("calderon_ratio_estimate needs a nonempty corpus")
    c1_lb = 0.0
    c2_lb = 0.0
    for H in corpus:
        if H.coeffs[0] != 0:
            raise DomainError("every corpus series must satisfy H(0) = 0")
        nh = _l1_norm_series(H, q)
        ng = _l1_norm_calderon(H, q)
        if nh == 0.0 or ng == 0.0:
            raise DomainError("corpus contains the zero series")
        c1_lb = max(c1_lb, nh / ng)
        c2_lb = max(c2_lb, ng / nh)
    return c1_lb, c2_lb


def v_norm(m: PlanarHarmonicMap, r: float, q: QuadratureSpec) -> float:
    """(1/2pi) int |Im f(r e^it)| dt, the conjugate-part L1 norm."""
    fvals = _map_on_circle(m, r)

    def integrand(theta: np.ndarray) -> np.ndarray:
        return np.abs(np.imag(fvals(theta)))

    value, _, _ = refined_circle_mean(integrand, q, context="||v||_1")
    return value
