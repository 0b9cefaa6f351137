"""Cauchy transform, Cauchy-type boundary integral and off-support Beurling transform.

The Cauchy transform of the Bergman space is

    (K g)(zeta) = (1/pi) iint_G conj(g(z)) / (z - zeta) dA(z),   zeta outside closure(G),

which is conjugate-linear in ``g``.  Three routes are provided: the exact
coefficient formula on the disk, area quadrature pulled back through an
interior map, and an exact residue formula for polynomial ``g`` on polynomial
domains that stays accurate arbitrarily close to the boundary.
"""

from __future__ import annotations

import math
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.polynomial import polynomial as P

from .domains import IDENTITY, ConformalMap, check_clearance
from .errors import ClearanceError
from .quadrature import DiskQuadrature, integrate_disk
from .series import BoundaryFunction, CoefficientSeries, LaurentTail

DEFAULT_GUARD = 0.05


def cauchy_disk_series(g: CoefficientSeries) -> LaurentTail:
    """K on the unit disk: ``F_{k+1} = -conj(c_k) / (k+1)``."""
    k = np.arange(g.coeffs.size)
    return LaurentTail(-np.conj(g.coeffs) / (k + 1), 0j)


def cauchy_quadrature(
    g: Callable,
    phi: ConformalMap,
    zeta,
    rule: DiskQuadrature,
    guard: float = DEFAULT_GUARD,
):
    """``(1/pi) iint_D conj(g(phi(w))) |phi'(w)|^2 / (phi(w) - zeta) dA(w)``.

    ``zeta`` (scalar or array) must lie outside ``phi(D)`` at distance at
    least ``guard`` from its boundary.
    """
    scalar = np.ndim(zeta) == 0
    zs = np.atleast_1d(np.asarray(zeta, dtype=complex))
    check_clearance(phi, zs, guard, inside=False)
    w = rule.nodes
    z = phi(w)
    dens = np.conj(np.broadcast_to(np.asarray(g(z), dtype=complex), w.shape)) * np.abs(phi.derivative(w)) ** 2
    out = np.array([integrate_disk(rule, lambda _w, s=s: dens / (z - s)) for s in zs]) / math.pi
    return complex(out[0]) if scalar else out


def _compose(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    out = np.array([outer[-1]], dtype=complex)
    for c in outer[-2::-1]:
        out = P.polyadd(P.polymul(out, inner), [c])
    return out


def cauchy_polynomial(g: CoefficientSeries, phi: ConformalMap, zeta):
    """Exact K g on ``G = phi(D)`` for polynomial ``g`` and polynomial ``phi``.

    With ``Q' = g``, Stokes' formula gives
    ``Kg(zeta) = (1/2 pi i) oint_{dG} conj(Q(z)) / (z - zeta) dz``.  On the
    circle ``conj(Q(phi(t))) = sum conj(p_m) t^-m`` where ``Q o phi = sum p_m t^m``,
    and the only singularity inside the disk is at ``t = 0``, so the integral is
    ``sum_m conj(p_m) [t^(m-1)] phi'(t) / (phi(t) - zeta)``.
    Valid for every ``zeta`` outside ``closure(G)``; no clearance needed.
    """
    if phi.kind != "interior":
        raise ValueError("residue path needs an interior polynomial map")
    scalar = np.ndim(zeta) == 0
    zs = np.atleast_1d(np.asarray(zeta, dtype=complex))
    p = _compose(g.antiderivative().coeffs, np.asarray(phi.coeffs))
    D = p.size - 1
    a = np.asarray(phi.coeffs)
    dphi = a[1:] * np.arange(1, a.size)
    den0 = a[0] - zs
    L = np.zeros((max(D, 1), zs.size), dtype=complex)
    for j in range(D):
        acc = np.full(zs.shape, dphi[j] if j < dphi.size else 0.0, dtype=complex)
        for i in range(1, min(j, a.size - 1) + 1):
            acc = acc - a[i] * L[j - i]
        L[j] = acc / den0
    out = np.zeros(zs.shape, dtype=complex)
    for m in range(D, 0, -1):
        out = out + np.conj(p[m]) * L[m - 1]
    return complex(out[0]) if scalar else out


def cauchy_transform(g: CoefficientSeries, phi: ConformalMap = IDENTITY) -> Callable:
    """``K g`` as a callable on the exterior of ``phi(D)``."""
    if phi.is_identity:
        return cauchy_disk_series(g)
    return lambda zeta: cauchy_polynomial(g, phi, zeta)


def boundary_cauchy_integral(f: BoundaryFunction) -> LaurentTail:
    """``(1/2 pi i) oint f(t)/(t - zeta) dt = -sum_{k>=1} f_{-k} zeta^-k`` off the disk."""
    return LaurentTail(-f.negative_modes(), 0j)


def beurling_offsupport(density: Sequence[complex], zeta, guard: float = DEFAULT_GUARD):
    """Beurling transform of ``u = sum d_k conj(z)^k`` on the disk, at ``|zeta| > 1``.

    Off the support the principal value is an ordinary integral and equals
    ``sum_k d_k zeta^-(k+2)``.
    """
    scalar = np.ndim(zeta) == 0
    zs = np.atleast_1d(np.asarray(zeta, dtype=complex))
    if np.any(np.abs(zs) < 1 + guard):
        bad = zs[np.abs(zs) < 1 + guard][0]
        raise ClearanceError(f"|zeta| = {abs(bad):.6g} is within {guard} of the unit disk")
    d = np.asarray(density, dtype=complex)
    u = 1.0 / zs
    acc = np.zeros_like(zs)
    for dk in d[::-1]:
        acc = acc * u + dk
    out = acc * u * u
    return complex(out[0]) if scalar else out


def beurling_quadrature(density: Sequence[complex], zeta, rule: DiskQuadrature):
    """``(1/pi) iint_D u(z) / (z - zeta)^2 dA`` by area quadrature."""
    scalar = np.ndim(zeta) == 0
    zs = np.atleast_1d(np.asarray(zeta, dtype=complex))
    d = np.asarray(density, dtype=complex)
    zbar = np.conj(rule.nodes)
    u = np.zeros_like(zbar)
    for dk in d[::-1]:
        u = u * zbar + dk
    out = np.array([integrate_disk(rule, lambda z, s=s: u / (z - s) ** 2) for s in zs]) / math.pi
    return complex(out[0]) if scalar else out


def beurling_exterior_norm(density: Sequence[complex]) -> float:
    """L2 norm of ``sum d_k zeta^-(k+2)`` over ``|zeta| > 1``: ``(pi sum |d_k|^2/(k+1))^(1/2)``."""
    d = np.asarray(density, dtype=complex)
    k = np.arange(d.size)
    return math.sqrt(math.pi * math.fsum(np.abs(d) ** 2 / (k + 1)))


def _derivative_of(gamma, dgamma):
    if dgamma is not None:
        return dgamma
    if hasattr(gamma, "derivative"):
        return gamma.derivative()
    raise TypeError("pass dgamma for a gamma without a derivative() method")


def b21_norm_exterior_quadrature(
    gamma: Callable,
    psi: ConformalMap,
    rule: DiskQuadrature,
    dgamma: Optional[Callable] = None,
) -> float:
    """``(iint_{|w|>1} |(gamma o psi)'(w)|^2 dA)^(1/2)`` in the coordinate ``s = 1/w``.

    ``dA_w = |s|^-4 dA_s`` and the integrand decays like ``|w|^-4``, so the
    pulled-back integrand is bounded on the punctured disk.
    """
    if psi.kind != "exterior":
        raise ValueError("needs an exterior map")
    dg = _derivative_of(gamma, dgamma)

    def integrand(s):
        w = 1.0 / s
        return np.abs(dg(psi(w)) * psi.derivative(w)) ** 2 / np.abs(s) ** 4

    return math.sqrt(integrate_disk(rule, integrand).real)


def b21_norm_boundary(
    gamma: Callable,
    cmap: ConformalMap,
    M: int = 1024,
    dgamma: Optional[Callable] = None,
) -> float:
    """``||gamma||_{B2^1}`` off ``closure(G)`` by Green's formula on ``dG``.

    ``iint_{C \\ G} |gamma'|^2 dA = -(1/2i) oint_{dG} gamma' conj(gamma) dz`` with
    ``dG`` traversed counterclockwise as ``cmap(e^{i theta})``; the trapezoid
    rule is spectrally accurate when ``gamma`` is analytic near ``dG``.
    """
    dg = _derivative_of(gamma, dgamma)
    t = np.exp(2j * np.pi * np.arange(M) / M)
    z = cmap(t)
    terms = dg(z) * np.conj(gamma(z)) * cmap.derivative(t) * t
    total = -(math.pi / M) * math.fsum(terms.real)
    return math.sqrt(max(total, 0.0))
