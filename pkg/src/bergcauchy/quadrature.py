"""Tensor-product area quadrature on the unit disk.

Radial Gauss-Legendre nodes on [0, 1] carry the polar Jacobian ``r`` in their
weights; the angular direction is the uniform trapezoid rule.  For analytic
integrands this converges spectrally, and ``r^p e^{ik theta}`` is integrated
exactly when ``p + 1 <= 2 n_r - 1`` and ``|k| < M``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .domains import ConformalMap
from .errors import QuadratureError

DEFAULT_NR = 64
DEFAULT_NTHETA = 128


@dataclass(frozen=True, eq=False)
class DiskQuadrature:
    n_r: int
    M: int
    nodes: np.ndarray  # complex, shape (n_r * M,), radial-major
    weights: np.ndarray

    @property
    def size(self) -> int:
        return self.nodes.size


def build_rule(n_r: int = DEFAULT_NR, M: int = DEFAULT_NTHETA) -> DiskQuadrature:
    if n_r < 1 or M < 2:
        raise ValueError(f"need n_r >= 1 and M >= 2, got n_r={n_r}, M={M}")
    x, w = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * (x + 1.0)
    wr = 0.5 * w * r
    theta = 2 * np.pi * np.arange(M) / M
    nodes = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
    weights = np.repeat(wr * (2 * np.pi / M), M)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return DiskQuadrature(n_r, M, nodes, weights)


def integrate_disk(rule: DiskQuadrature, integrand: Callable[[np.ndarray], np.ndarray]) -> complex:
    """``iint_D integrand dA``; ``integrand`` is called once on the node array."""
    vals = np.broadcast_to(np.asarray(integrand(rule.nodes), dtype=complex), rule.nodes.shape)
    bad = ~np.isfinite(vals)
    if np.any(bad):
        node = complex(rule.nodes[np.flatnonzero(bad)[0]])
        raise QuadratureError(f"non-finite integrand at node {node}", node)
    terms = rule.weights * vals
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def bergman_norm_on_domain(g: Callable, phi: ConformalMap, rule: DiskQuadrature) -> float:
    """``||g||_{B2(phi(D))}`` computed as ``(iint_D |g(phi(w))|^2 |phi'(w)|^2 dA)^(1/2)``."""

    def density(w):
        return np.abs(g(phi(w))) ** 2 * np.abs(phi.derivative(w)) ** 2

    return math.sqrt(integrate_disk(rule, density).real)
