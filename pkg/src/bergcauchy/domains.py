"""Explicit conformal maps, level-curve exhaustions and quasicircle geometry.

Interior maps are polynomials ``phi(z) = a_0 + a_1 z + ... + a_d z^d`` from the
unit disk; exterior maps are ``psi(z) = z + b_0 + sum_{k>=1} b_k z^-k`` from
the exterior of the closed unit disk.  Univalence is certified by the
coefficient criteria ``sum_{k>=2} k|a_k| < |a_1|`` and ``sum_{k>=1} k|b_k| < 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ClearanceError, NotUnivalentError
from .series import complex_to_pairs, pairs_to_complex

INTERIOR = "interior"
EXTERIOR = "exterior"


def _interior_margin(a: np.ndarray, r: float = 1.0) -> float:
    if a.size < 2 or a[1] == 0:
        return -math.inf
    k = np.arange(2, a.size)
    return abs(a[1]) - math.fsum(k * np.abs(a[2:]) * r ** (k - 1))


def _exterior_margin(b: np.ndarray) -> float:
    k = np.arange(1, b.size)
    return 1.0 - math.fsum(k * np.abs(b[1:]))


@dataclass(frozen=True, eq=False)
class ConformalMap:
    kind: str
    coeffs: np.ndarray
    margin: float
    name: str = ""

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        c = self.coeffs
        if self.kind == INTERIOR:
            out = np.zeros_like(z)
            for a in c[::-1]:
                out = out * z + a
            return out
        u = 1.0 / z
        acc = np.zeros_like(z)
        for b in c[:0:-1]:
            acc = acc * u + b
        return z + c[0] + acc * u

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        c = self.coeffs
        if self.kind == INTERIOR:
            out = np.zeros_like(z)
            for k in range(c.size - 1, 0, -1):
                out = out * z + k * c[k]
            return out
        u = 1.0 / z
        acc = np.zeros_like(z)
        for k in range(c.size - 1, 0, -1):
            acc = acc * u - k * c[k]
        return 1.0 + acc * u * u

    @property
    def is_identity(self) -> bool:
        if self.kind == INTERIOR:
            return self.coeffs.size >= 2 and self.coeffs[1] == 1 and not np.any(self.coeffs[[0, *range(2, self.coeffs.size)]])
        return not np.any(self.coeffs)

    def admissible_at(self, r: float) -> bool:
        """Whether the univalence criterion holds on the disk (exterior) of radius ``r``."""
        if self.kind == INTERIOR:
            return _interior_margin(self.coeffs, r) > 0
        return r >= 1.0

    def scaled(self, r: float) -> ConformalMap:
        """The interior map ``z -> phi(r z)``."""
        if self.kind != INTERIOR:
            raise ValueError("only interior maps are rescaled")
        if not self.admissible_at(r):
            raise NotUnivalentError(f"not certified univalent at radius {r}", _interior_margin(self.coeffs, r))
        c = self.coeffs * r ** np.arange(self.coeffs.size)
        return ConformalMap(INTERIOR, c, _interior_margin(c), self.name)

    def inverse(self, w, r_start: float = 1.0, tol: float = 1e-14, maxiter: int = 60):
        """Newton inversion started from the nearest of 64 sampled preimages on radius ``r_start``."""
        w = np.atleast_1d(np.asarray(w, dtype=complex))
        t = r_start * np.exp(2j * np.pi * np.arange(64) / 64)
        pts = self(t)
        z = t[np.argmin(np.abs(w[:, None] - pts[None, :]), axis=1)]
        for _ in range(maxiter):
            step = (self(z) - w) / self.derivative(z)
            z = z - step
            if np.max(np.abs(step)) < tol:
                break
        return z

    def to_dict(self) -> dict:
        return {"name": self.name, "kind": self.kind, "coeffs": complex_to_pairs(self.coeffs)}

    @classmethod
    def from_dict(cls, data: dict) -> ConformalMap:
        return make_map(data["kind"], pairs_to_complex(data["coeffs"]), name=data.get("name", ""))

    def __repr__(self) -> str:
        return f"ConformalMap({self.kind!r}, {self.coeffs.tolist()!r}, margin={self.margin:.6g})"


def make_map(kind: str, coeffs: Sequence[complex], name: str = "") -> ConformalMap:
    """Build a map after checking the coefficient univalence criterion.

    For ``interior``, ``coeffs`` is ``a_0..a_d``; for ``exterior`` it is
    ``b_0..b_d`` (the leading ``z`` term is implicit).
    """
    c = np.array(coeffs, dtype=complex).ravel()
    if c.size == 0:
        raise ValueError("empty coefficient list")
    if kind == INTERIOR:
        margin = _interior_margin(c)
    elif kind == EXTERIOR:
        margin = _exterior_margin(c)
    else:
        raise ValueError(f"kind must be {INTERIOR!r} or {EXTERIOR!r}, got {kind!r}")
    if not margin > 0:
        raise NotUnivalentError(f"univalence not certified: margin {margin:.6g} <= 0", margin)
    c.setflags(write=False)
    return ConformalMap(kind, c, margin, name)


IDENTITY = make_map(INTERIOR, [0, 1], name="disk")


@dataclass(frozen=True, eq=False)
class ExhaustionSequence:
    """Nested domains ``G_n = phi(r_n D)`` with ``r_1 > r_2 > ... > 1``."""

    base: ConformalMap
    radii: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.radii)

    def level(self, n: int) -> ConformalMap:
        """``phi_n(z) = phi(r_n z)`` for ``n`` counted from 1."""
        return self.base.scaled(self.radii[n - 1])

    def levels(self):
        for n, r in enumerate(self.radii, start=1):
            yield n, r, self.level(n)


def exhaust(phi: ConformalMap, N: int, delta: float) -> ExhaustionSequence:
    """Radii ``r_n = 1 + delta 2^-(n-1)``; ``phi`` must be admissible at ``1 + delta``."""
    if phi.kind != INTERIOR:
        raise ValueError("exhaustions are built from interior maps")
    if N < 1 or not delta > 0:
        raise ValueError(f"need N >= 1 and delta > 0, got N={N}, delta={delta}")
    if not phi.admissible_at(1 + delta):
        raise NotUnivalentError(
            f"map not admissible at radius {1 + delta}", _interior_margin(phi.coeffs, 1 + delta)
        )
    radii = tuple(1 + delta * 2.0 ** -(n - 1) for n in range(1, N + 1))
    return ExhaustionSequence(phi, radii)


def boundary_points(cmap: ConformalMap, r: float = 1.0, M: int = 256) -> np.ndarray:
    """``cmap(r e^{i theta_j})`` at ``theta_j = 2 pi j / M``."""
    if not cmap.admissible_at(r):
        raise ClearanceError(f"radius {r} is not admissible for {cmap!r}")
    theta = 2 * np.pi * np.arange(M) / M
    return cmap(r * np.exp(1j * theta))


def winding_number(curve: np.ndarray, z: complex) -> int:
    """Winding number of the closed polygon ``curve`` around ``z``."""
    d = np.asarray(curve, dtype=complex) - z
    if np.any(d == 0):
        raise ClearanceError(f"point {z} lies on the curve")
    turns = np.angle(np.roll(d, -1) / d)
    return int(round(math.fsum(turns) / (2 * math.pi)))


def distance_to_curve(curve: np.ndarray, z) -> np.ndarray:
    """Distance from each ``z`` to the closed polygon through ``curve``."""
    a = np.asarray(curve, dtype=complex)
    b = np.roll(a, -1)
    z = np.atleast_1d(np.asarray(z, dtype=complex))[:, None]
    ab = b - a
    t = np.clip(((z - a) * np.conj(ab)).real / np.abs(ab) ** 2, 0.0, 1.0)
    return np.min(np.abs(z - (a + t * ab)), axis=1)


def check_clearance(cmap: ConformalMap, z, guard: float, inside: bool, M: int = 2048) -> None:
    """Require each ``z`` to be at distance >= ``guard`` from ``cmap(unit circle)``
    and strictly inside (``inside=True``) or outside the enclosed domain.
    """
    curve = boundary_points(cmap, 1.0, M)
    pts = np.atleast_1d(np.asarray(z, dtype=complex))
    dist = distance_to_curve(curve, pts)
    for p, d in zip(pts, dist):
        if d < guard:
            raise ClearanceError(f"point {p} is within {d:.3g} of the boundary (guard {guard})")
        w = winding_number(curve, p)
        if inside and w != 1:
            raise ClearanceError(f"point {p} is not inside the domain")
        if not inside and w != 0:
            raise ClearanceError(f"point {p} is not outside the closed domain")


def quasicircle_constant(points: Sequence[complex]) -> float:
    """Sampled three-point constant: max over pairs of ``diam(smaller arc) / |a - b|``.

    Arcs are the cyclic runs of samples between the pair; the smaller arc is the
    one with fewer samples, or the one of smaller diameter when the counts tie.
    Arc diameters are built up by length:
    ``diam[i..i+L] = max(diam[i..i+L-1], diam[i+1..i+L], |p_i - p_{i+L}|)``.
    """
    p = np.asarray(points, dtype=complex).ravel()
    M = p.size
    if M < 3:
        raise ValueError(f"need at least 3 points, got {M}")
    idx = np.arange(M)
    diam = np.zeros(M)
    best = 0.0
    for L in range(1, M // 2 + 1):
        chord = np.abs(p - p[(idx + L) % M])
        if np.any(chord == 0):
            i = int(np.flatnonzero(chord == 0)[0])
            raise ValueError(f"coincident points at indices {i} and {(i + L) % M}")
        diam = np.maximum(np.maximum(diam, diam[(idx + 1) % M]), chord)
        if 2 * L == M:
            # equal sample counts: the two arcs from i are diam[i] and diam[i + M/2]
            best = max(best, float(np.max(np.minimum(diam, np.roll(diam, -L)) / chord)))
        else:
            best = max(best, float(np.max(diam / chord)))
    return best


def mapped_area(phi: ConformalMap) -> float:
    """Area of ``phi(D)``: ``pi sum_{k>=1} k |a_k|^2``."""
    if phi.kind != INTERIOR:
        raise ValueError("area is defined for interior maps")
    k = np.arange(1, phi.coeffs.size)
    return math.pi * math.fsum(k * np.abs(phi.coeffs[1:]) ** 2)


DEFAULT_CATALOG = (
    {"name": "disk", "kind": INTERIOR, "coeffs": [0, 1]},
    {"name": "quad03", "kind": INTERIOR, "coeffs": [0, 1, 0.3]},
    {"name": "cubic025", "kind": INTERIOR, "coeffs": [0, 1, 0, 0.25]},
    {"name": "ellipse02", "kind": EXTERIOR, "coeffs": [0, 0.2]},
)


def load_catalog(entries) -> dict[str, ConformalMap]:
    """Named maps from catalog entries ``{"name", "kind", "coeffs"}``."""
    out = {}
    for entry in entries:
        cmap = make_map(entry["kind"], pairs_to_complex(entry["coeffs"]), name=entry["name"])
        if cmap.name in out:
            raise ValueError(f"duplicate catalog name {cmap.name!r}")
        out[cmap.name] = cmap
    return out
