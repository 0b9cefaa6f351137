"""Membership experiments for the Cauchy image of the Bergman space.

For an exhaustion ``G_n = phi(r_n D)`` of ``G = phi(D)`` a function ``gamma``
off ``closure(G)`` is tested through the sequence

    rho_n = rho(gamma o phi_n restricted to the unit circle),

which stays below ``||g||_{B2(G)}`` whenever ``gamma = K g``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .domains import ConformalMap, ExhaustionSequence, check_clearance
from .errors import ClearanceError, InversionError
from .quadrature import DiskQuadrature, bergman_norm_on_domain, build_rule, integrate_disk
from .series import (
    BoundaryFunction,
    CoefficientSeries,
    LaurentTail,
    b2_disk_norm,
    b21_exterior_norm,
    rho_seminorm,
)
from .transforms import (
    DEFAULT_GUARD,
    b21_norm_boundary,
    b21_norm_exterior_quadrature,
    cauchy_quadrature,
    cauchy_transform,
)

log = logging.getLogger(__name__)

BOUNDED = "bounded"
INCONCLUSIVE = "inconclusive"


@dataclass
class CriterionReport:
    domain: str
    gamma: str
    levels: list  # (n, r_n, rho_n)
    reference_norm: float
    bound: float
    verdict: str
    tolerances: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)

    @property
    def sup_rho(self) -> float:
        return max(rho for _, _, rho in self.levels)

    @property
    def checked_range(self) -> tuple[float, float]:
        return self.levels[0][1], self.levels[-1][1]

    def to_dict(self) -> dict:
        return {
            "domain": self.domain,
            "gamma": self.gamma,
            "levels": [{"n": n, "r_n": r, "rho_n": rho} for n, r, rho in self.levels],
            "sup_rho": self.sup_rho,
            "reference_norm": self.reference_norm,
            "bound": self.bound,
            "verdict": self.verdict,
            "checked_radii": list(self.checked_range),
            "tolerances": dict(self.tolerances),
            "extras": dict(self.extras),
        }


def _check_poles(gamma, pts: np.ndarray, guard: float) -> None:
    center = getattr(gamma, "center", None)
    if center is not None:
        d = np.abs(pts - center)
        if np.min(d) < guard:
            p = pts[np.argmin(d)]
            raise ClearanceError(f"pole {center} within {np.min(d):.3g} of sample point {p} (guard {guard})")


def _trace(gamma, pts: np.ndarray, guard: float) -> np.ndarray:
    _check_poles(gamma, pts, guard)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        vals = np.broadcast_to(np.asarray(gamma(pts), dtype=complex), pts.shape)
    if not np.all(np.isfinite(vals)):
        p = pts[np.flatnonzero(~np.isfinite(vals))[0]]
        raise ClearanceError(f"gamma is not finite at sample point {p}")
    return vals


def boundary_trace(gamma: Callable, phi_n: ConformalMap, M: int = 256, guard: float = DEFAULT_GUARD) -> BoundaryFunction:
    """Samples of ``gamma(phi_n(e^{i theta_j}))``."""
    t = np.exp(2j * np.pi * np.arange(M) / M)
    return BoundaryFunction(_trace(gamma, phi_n(t), guard), "samples")


def rho_sequence(gamma: Callable, ex: ExhaustionSequence, M: int = 256, guard: float = DEFAULT_GUARD) -> list:
    """``[(n, rho(gamma o phi_n)), ...]`` over the exhaustion levels."""
    return [(n, rho_seminorm(boundary_trace(gamma, phi_n, M, guard))) for n, _, phi_n in ex.levels()]


def _levels(ex: ExhaustionSequence, rhos: list) -> list:
    return [(n, r, rho) for (n, rho), r in zip(rhos, ex.radii)]


def theorem1_bound_check(
    g: CoefficientSeries,
    phi: ConformalMap,
    ex: ExhaustionSequence,
    rule: Optional[DiskQuadrature] = None,
    M: int = 256,
    tol_rel: float = 1e-6,
    tol_abs: float = 1e-8,
    label: str = "",
) -> CriterionReport:
    """Check ``rho_n <= ||g||_{B2(G)}`` for ``gamma = K g`` at every level."""
    if ex.base is not phi:
        raise ValueError("exhaustion was built from a different map")
    rule = rule or build_rule()
    gamma = cauchy_transform(g, phi)
    levels = _levels(ex, rho_sequence(gamma, ex, M))
    ref = b2_disk_norm(g) if phi.is_identity else bergman_norm_on_domain(g, phi, rule)
    limit = ref * (1 + tol_rel) + tol_abs
    ok = all(math.isfinite(rho) and rho <= limit for _, _, rho in levels)
    return CriterionReport(
        domain=phi.name,
        gamma=label or f"K[{g!r}]",
        levels=levels,
        reference_norm=ref,
        bound=ref,
        verdict=BOUNDED if ok else INCONCLUSIVE,
        tolerances={"rel": tol_rel, "abs": tol_abs},
    )


def _ring(radius: float, n: int, offset: float = 0.0) -> np.ndarray:
    return radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + offset))


def invert_cauchy(
    gamma: Callable,
    phi: ConformalMap,
    degree: int,
    rule: Optional[DiskQuadrature] = None,
    ring_radius: float = 2.0,
    regularization: float = 1e-12,
    guard: float = DEFAULT_GUARD,
):
    """Find a polynomial ``g`` of the given degree with ``K g ~ gamma``.

    Returns ``(g, residual)``.  On the disk the coefficient map is diagonal and
    the residual is the norm of the unmatched part of the tail.  Elsewhere
    ``K`` is fitted on ``4(degree+1)`` collocation points of ``|zeta| = ring_radius``
    through regularized normal equations; the residual is the RMS mismatch.

    Raises InversionError if the Gram matrix is singular below the
    regularization level.
    """
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    k = np.arange(degree + 1)
    if phi.is_identity:
        if isinstance(gamma, LaurentTail):
            tail = gamma.recentered(0j) if gamma.center != 0 else gamma
            F = tail.coeffs
        else:
            nfft = max(256, 4 * (degree + 1))
            t = np.exp(2j * np.pi * np.arange(nfft) / nfft)
            modes = np.fft.fft(gamma(ring_radius * t)) / nfft
            kk = np.arange(1, nfft // 2)
            neg = modes[nfft - kk]
            # roundoff-level modes would be amplified by ring_radius^k
            neg[np.abs(neg) < 64 * np.finfo(float).eps * np.max(np.abs(modes))] = 0
            F = neg * ring_radius**kk
        F = np.pad(F, (0, max(0, degree + 2 - F.size)))
        g = CoefficientSeries(-np.conj(F[: degree + 1]) * (k + 1))
        residual = b21_exterior_norm(LaurentTail(np.concatenate([np.zeros(degree + 1), F[degree + 1 :]])))
        return g, residual

    rule = rule or build_rule()
    zeta = _ring(ring_radius, 4 * (degree + 1))
    check_clearance(phi, zeta, guard, inside=False)
    A = np.column_stack([cauchy_quadrature(CoefficientSeries.monomial(j), phi, zeta, rule, guard) for j in k])
    b = np.asarray(gamma(zeta), dtype=complex)
    gram = A.conj().T @ A
    eig = np.linalg.eigvalsh(gram)
    condition = float(eig[-1] / max(eig[0], np.finfo(float).tiny))
    if eig[0] < regularization:
        raise InversionError(
            f"Gram matrix rank deficient beyond regularization (min eigenvalue {eig[0]:.3g})", condition
        )
    x = np.linalg.solve(gram + regularization * np.eye(k.size), A.conj().T @ b)
    residual = math.sqrt(math.fsum(np.abs(A @ x - b) ** 2) / zeta.size)
    log.debug("inversion degree=%d condition=%.3g residual=%.3g", degree, condition, residual)
    return CoefficientSeries(np.conj(x)), residual


def theorem2_membership(
    gamma: LaurentTail,
    phi: ConformalMap,
    ex: ExhaustionSequence,
    M: int = 256,
    rule: Optional[DiskQuadrature] = None,
    exterior: Optional[ConformalMap] = None,
    degree: int = 12,
    tol: float = 1e-3,
    residual_tol: float = 1e-6,
    heldout_tol: float = 1e-5,
    ring_radius: float = 2.0,
    regularization: float = 1e-12,
    guard: float = DEFAULT_GUARD,
    label: str = "",
) -> CriterionReport:
    """Close the loop for a principal part ``gamma`` with pole inside a quasidisk.

    ``gamma`` is in ``B2^1`` of the exterior; the experiment constructs ``g``
    with ``K g ~ gamma`` and checks ``rho_n <= ||g||_{B2(G)} (1 + tol)``.
    """
    if ex.base is not phi:
        raise ValueError("exhaustion was built from a different map")
    check_clearance(phi, gamma.center, guard, inside=True)
    rule = rule or build_rule()
    tolerances = {"rel": tol, "residual": residual_tol, "heldout": heldout_tol}

    if exterior is not None:
        ref = b21_norm_exterior_quadrature(gamma, exterior, rule)
    elif phi.is_identity:
        ref = b21_exterior_norm(gamma.recentered(0j))
    else:
        ref = b21_norm_boundary(gamma, phi)

    levels = _levels(ex, rho_sequence(gamma, ex, M, guard))
    extras = {"degree": degree, "ring_radius": ring_radius}
    try:
        g, residual = invert_cauchy(gamma, phi, degree, rule, ring_radius, regularization, guard)
    except InversionError as exc:
        extras["condition"] = exc.condition
        return CriterionReport(phi.name, label or repr(gamma), levels, ref, math.nan, INCONCLUSIVE, tolerances, extras)

    # Kg - gamma is analytic off the ring and vanishes at infinity, so the ring
    # (at angles disjoint from the collocation nodes) carries its maximum.
    held = _ring(ring_radius, 20, offset=np.pi / 20)
    heldout_err = float(np.max(np.abs(cauchy_transform(g, phi)(held) - gamma(held))))
    g_norm = b2_disk_norm(g) if phi.is_identity else bergman_norm_on_domain(g, phi, rule)
    extras.update(ghat=[[c.real, c.imag] for c in g.coeffs], ghat_norm=g_norm, residual=residual, heldout_error=heldout_err)
    ok = (
        all(math.isfinite(rho) and rho <= g_norm * (1 + tol) for _, _, rho in levels)
        and residual < residual_tol
        and heldout_err < heldout_tol
    )
    return CriterionReport(
        domain=phi.name,
        gamma=label or repr(gamma),
        levels=levels,
        reference_norm=ref,
        bound=g_norm,
        verdict=BOUNDED if ok else INCONCLUSIVE,
        tolerances=tolerances,
        extras=extras,
    )


def riesz_functional(
    gamma: Callable,
    h: Callable,
    ex: ExhaustionSequence,
    n: int,
    M: int = 256,
    guard: float = DEFAULT_GUARD,
) -> complex:
    """``(1/2 pi i) oint_{dG_n} gamma(xi) h(xi) d xi`` by the M-point trapezoid rule."""
    phi_n = ex.level(n)
    t = np.exp(2j * np.pi * np.arange(M) / M)
    xi = phi_n(t)
    terms = _trace(gamma, xi, guard) * np.asarray(h(xi), dtype=complex) * phi_n.derivative(t) * t
    return complex(math.fsum(terms.real), math.fsum(terms.imag)) / M


def bergman_pairing(h: Callable, g: Callable, phi: ConformalMap, rule: Optional[DiskQuadrature] = None) -> complex:
    """``(1/pi) iint_G h conj(g) dA``, the representation of the boundary functional."""
    rule = rule or build_rule()

    def integrand(w):
        z = phi(w)
        return h(z) * np.conj(g(z)) * np.abs(phi.derivative(w)) ** 2

    return integrate_disk(rule, integrand) / math.pi

