"""Quadrature primitives shared by the whole toolkit.

Two rules cover everything here:

* periodic trapezoid on the circle (spectrally accurate for smooth
  periodic integrands, so refinement converges in a couple of doublings
  unless the integrand has corners);
* Gauss-Legendre on intervals, optionally on a dyadically graded panel
  mesh so that endpoint log singularities stay cheap.

Refinement always doubles node counts and stops when the change between
consecutive levels drops below ``abs_tol``; the last change is reported
as the error estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import NoConvergence

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadratureSpec:
    """Node counts and refinement policy for every integral in the package.

    circle_nodes:     starting node count for periodic trapezoid rules.
    radial_nodes:     starting node count for Gauss-Legendre rules.
    refinement_limit: maximum number of doublings before NoConvergence.
    abs_tol:          stop refining once |change between levels| <= abs_tol.
    """

    circle_nodes: int = 512
    radial_nodes: int = 32
    refinement_limit: int = 12
    abs_tol: float = 1e-10

    def __post_init__(self) -> None:
        if self.circle_nodes <= 0 or self.radial_nodes <= 0:
            raise ValueError("node counts must be positive")
        if self.refinement_limit <= 0:
            raise ValueError("refinement_limit must be positive")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")


DEFAULT_SPEC = QuadratureSpec()


@lru_cache(maxsize=128)
def _leggauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(n: int, a: float = 0.0, b: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [a, b]; exact through degree 2n-1."""
    x, w = _leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def gl_integrate(f: Integrand, a: float, b: float, n: int) -> float:
    x, w = gauss_legendre(n, a, b)
    vals = np.asarray(f(x), dtype=float)
    return float(math.fsum((w * vals).tolist()))


def circle_angles(n: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(n) / n


def circle_mean(f: Integrand, n: int) -> float:
    """(1/2pi) * integral of f over [0, 2pi) by the periodic trapezoid rule."""
    vals = np.asarray(f(circle_angles(n)), dtype=float)
    return float(np.mean(vals))


def refined_circle_mean(f: Integrand, spec: QuadratureSpec,
                        context: str = "circle mean") -> tuple[float, float, int]:
    """Refine the periodic trapezoid mean of ``f`` until stable.

    Returns (value, est_error, nodes); raises NoConvergence past the limit.
    """
    n = spec.circle_nodes
    prev = circle_mean(f, n)
    for _ in range(spec.refinement_limit):
        n *= 2
        cur = circle_mean(f, n)
        err = abs(cur - prev)
        if err <= spec.abs_tol:
            return cur, err, n
        prev = cur
    raise NoConvergence(f"{context}: {n} nodes, last change {err:.3e} "
                        f"> abs_tol {spec.abs_tol:.3e}")


def refined_gl(f: Integrand, a: float, b: float, spec: QuadratureSpec,
               n0: int | None = None, context: str = "integral") -> tuple[float, float, int]:
    """Refine a Gauss-Legendre integral of ``f`` over [a, b] until stable."""
    n = n0 if n0 is not None else spec.radial_nodes
    prev = gl_integrate(f, a, b, n)
    for _ in range(spec.refinement_limit):
        n *= 2
        cur = gl_integrate(f, a, b, n)
        err = abs(cur - prev)
        if err <= spec.abs_tol:
            return cur, err, n
        prev = cur
    raise NoConvergence(f"{context}: {n} nodes, last change {err:.3e} "
                        f"> abs_tol {spec.abs_tol:.3e}")


def dyadic_panels(depth: int) -> list[tuple[float, float]]:
    """Panels [0, 2^-depth], [2^-depth, 2^-depth+1], ..., [1/2, 1].

    On each panel away from 0 the weight -s*log(s) is analytic, so a fixed
    Gauss-Legendre rule per panel handles the logarithmic endpoint of the
    whole interval (0, 1].
    """
    cuts = [0.0] + [2.0 ** -j for j in range(depth, 0, -1)] + [1.0]
    return list(zip(cuts[:-1], cuts[1:]))


def panel_nodes(panels: list[tuple[float, float]], n: int) -> tuple[np.ndarray, np.ndarray]:
    """Concatenated Gauss-Legendre nodes/weights over a panel mesh."""
    xs, ws = [], []
    for a, b in panels:
        x, w = gauss_legendre(n, a, b)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)
