"""Coefficient representations of analytic functions and their norms.

Three value types live here:

* :class:`CoefficientSeries` -- a polynomial ``g(z) = sum c_k z^k`` on the
  unit disk, i.e. a (finite) element of the Bergman space.
* :class:`LaurentTail` -- a finite principal part ``sum F_k (z - z0)^-k``,
  analytic off a compact set and vanishing at infinity.
* :class:`BoundaryFunction` -- a function on the unit circle, held either as
  uniform samples or as discrete Fourier modes.

All reductions use :func:`math.fsum` in ascending index order, so results do
not depend on evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb
from typing import Callable, Union

import numpy as np

DEFAULT_SAMPLES = 256


def _as_complex_array(values) -> np.ndarray:
    arr = np.array(values, dtype=complex).ravel()
    arr.setflags(write=False)
    return arr


def complex_to_pairs(values) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in np.asarray(values, dtype=complex).ravel()]


def pairs_to_complex(pairs) -> np.ndarray:
    """Parse ``[[re, im], ...]``; bare real numbers are accepted too."""
    out = []
    for p in pairs:
        if isinstance(p, (list, tuple)):
            if len(p) != 2:
                raise ValueError(f"expected [re, im] pair, got {p!r}")
            out.append(complex(float(p[0]), float(p[1])))
        else:
            out.append(complex(p))
    return np.array(out, dtype=complex)


@dataclass(frozen=True, eq=False)
class CoefficientSeries:
    """Polynomial ``g(z) = sum_{k=0}^{d} c_k z^k``."""

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = _as_complex_array(self.coeffs)
        if coeffs.size == 0:
            coeffs = _as_complex_array([0.0])
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def monomial(cls, k: int, scale: complex = 1.0) -> CoefficientSeries:
        c = np.zeros(k + 1, dtype=complex)
        c[k] = scale
        return cls(c)

    @property
    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else 0

    def trimmed(self) -> CoefficientSeries:
        return CoefficientSeries(self.coeffs[: self.degree + 1])

    def __call__(self, z):
        return evaluate(self, z)

    def derivative(self) -> CoefficientSeries:
        k = np.arange(1, self.coeffs.size)
        return CoefficientSeries(self.coeffs[1:] * k)

    def antiderivative(self) -> CoefficientSeries:
        k = np.arange(1, self.coeffs.size + 1)
        return CoefficientSeries(np.concatenate([[0.0], self.coeffs / k]))

    def __mul__(self, scalar: complex) -> CoefficientSeries:
        return CoefficientSeries(self.coeffs * scalar)

    __rmul__ = __mul__

    def allclose(self, other: CoefficientSeries, atol: float = 1e-12) -> bool:
        n = max(self.coeffs.size, other.coeffs.size)
        a = np.pad(self.coeffs, (0, n - self.coeffs.size))
        b = np.pad(other.coeffs, (0, n - other.coeffs.size))
        return bool(np.allclose(a, b, rtol=0.0, atol=atol))

    def to_dict(self) -> dict:
        return {"type": "CoefficientSeries", "coeffs": complex_to_pairs(self.coeffs)}

    @classmethod
    def from_dict(cls, data: dict) -> CoefficientSeries:
        return cls(pairs_to_complex(data["coeffs"]))

    def __repr__(self) -> str:
        return f"CoefficientSeries({self.coeffs.tolist()!r})"


@dataclass(frozen=True, eq=False)
class LaurentTail:
    """Finite principal part ``gamma(z) = sum_{k=1}^{d} F_k (z - center)^-k``.

    ``coeffs[0]`` is ``F_1``; there is no constant term, so ``gamma(inf) = 0``.
    """

    coeffs: np.ndarray
    center: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_complex_array(self.coeffs))
        object.__setattr__(self, "center", complex(self.center))

    @classmethod
    def pole(cls, order: int, center: complex = 0j, scale: complex = 1.0) -> LaurentTail:
        c = np.zeros(order, dtype=complex)
        c[order - 1] = scale
        return cls(c, center)

    def __call__(self, z):
        return evaluate(self, z)

    def derivative(self) -> LaurentTail:
        """``d/dz sum F_k w^-k = sum -k F_k w^-(k+1)``, again a tail."""
        k = np.arange(1, self.coeffs.size + 1)
        return LaurentTail(np.concatenate([[0.0], -k * self.coeffs]), self.center)

    def recentered(self, center: complex = 0j, order: int | None = None, tol: float = 1e-18) -> LaurentTail:
        """Re-expand about ``center`` (valid for |z - center| > |old - center|).

        Uses ``(w - a)^-m = sum_j C(m+j-1, j) a^j w^-(m+j)`` with ``a`` the
        offset between centers.  Without ``order`` the expansion is carried
        until every further term is below ``tol`` (capped at 4096 terms).
        """
        a = self.center - complex(center)
        if a == 0:
            out = self.coeffs if order is None else np.pad(self.coeffs, (0, max(0, order - self.coeffs.size)))[:order]
            return LaurentTail(out, center)
        if abs(a) >= 1 and order is None:
            raise ValueError("automatic truncation needs |offset| < 1; pass an explicit order")
        m_max = self.coeffs.size
        if order is None:
            order = m_max
            scale = float(np.max(np.abs(self.coeffs), initial=0.0))
            while order < 4096:
                j = order - m_max
                bound = scale * comb(order, m_max) * abs(a) ** max(j, 0)
                if bound < tol:
                    break
                order += 1
        out = np.zeros(order, dtype=complex)
        for m, f in enumerate(self.coeffs, start=1):
            if f == 0:
                continue
            for j in range(order - m + 1):
                out[m + j - 1] += f * comb(m + j - 1, j) * a**j
        return LaurentTail(out, center)

    def to_dict(self) -> dict:
        return {
            "type": "LaurentTail",
            "center": [self.center.real, self.center.imag],
            "coeffs": complex_to_pairs(self.coeffs),
        }

    @classmethod
    def from_dict(cls, data: dict) -> LaurentTail:
        return cls(pairs_to_complex(data["coeffs"]), pairs_to_complex([data.get("center", 0.0)])[0])

    def __repr__(self) -> str:
        return f"LaurentTail({self.coeffs.tolist()!r}, center={self.center!r})"


def mode_numbers(M: int) -> np.ndarray:
    """Mode index k for each FFT slot: ``-M/2 < k <= M/2``."""
    j = np.arange(M)
    return np.where(j <= M // 2, j, j - M)


@dataclass(frozen=True, eq=False)
class BoundaryFunction:
    """A function on the unit circle sampled at ``theta_j = 2 pi j / M``.

    ``values`` holds either the samples or the Fourier modes in FFT slot
    order (see :func:`mode_numbers`); ``canonical`` says which.
    """

    values: np.ndarray
    canonical: str = "samples"

    def __post_init__(self):
        values = _as_complex_array(self.values)
        if values.size < 2:
            raise ValueError(f"need at least 2 samples, got {values.size}")
        if self.canonical not in ("samples", "modes"):
            raise ValueError(f"canonical must be 'samples' or 'modes', got {self.canonical!r}")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, f: Callable, M: int = DEFAULT_SAMPLES) -> BoundaryFunction:
        theta = 2 * np.pi * np.arange(M) / M
        return cls(np.broadcast_to(f(theta), (M,)), "samples")

    @classmethod
    def from_mode_dict(cls, modes: dict[int, complex], M: int = DEFAULT_SAMPLES) -> BoundaryFunction:
        out = np.zeros(M, dtype=complex)
        for k, v in modes.items():
            if not -M / 2 < k <= M / 2:
                raise ValueError(f"mode {k} not resolvable with M={M}")
            out[k % M] = v
        return cls(out, "modes")

    @property
    def M(self) -> int:
        return self.values.size

    @property
    def theta(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.M) / self.M

    def samples(self) -> np.ndarray:
        if self.canonical == "samples":
            return self.values
        return np.fft.ifft(self.values) * self.M

    def modes(self) -> np.ndarray:
        if self.canonical == "modes":
            return self.values
        return np.fft.fft(self.values) / self.M

    def mode(self, k: int) -> complex:
        if not -self.M / 2 < k <= self.M / 2:
            return 0j
        return complex(self.modes()[k % self.M])

    def negative_modes(self) -> np.ndarray:
        """``f_{-1}, f_{-2}, ...`` for every negative mode M resolves."""
        M = self.M
        kmax = (M - 1) // 2
        return self.modes()[M - np.arange(1, kmax + 1)]

    def to_dict(self) -> dict:
        return {
            "type": "BoundaryFunction",
            "representation": self.canonical,
            "values": complex_to_pairs(self.values),
        }

    @classmethod
    def from_dict(cls, data: dict) -> BoundaryFunction:
        return cls(pairs_to_complex(data["values"]), data.get("representation", "samples"))


def boundary_to_modes(f: BoundaryFunction) -> BoundaryFunction:
    """Discrete Fourier coefficients ``f_k = (1/M) sum_j f(theta_j) e^{-ik theta_j}``."""
    return BoundaryFunction(f.modes(), "modes")


def modes_to_samples(f: BoundaryFunction) -> BoundaryFunction:
    return BoundaryFunction(f.samples(), "samples")


def evaluate(series: Union[CoefficientSeries, LaurentTail], point):
    """Horner evaluation of a finite series at a scalar or array ``point``."""
    scalar = np.ndim(point) == 0
    z = np.asarray(point, dtype=complex)
    c = series.coeffs
    if isinstance(series, LaurentTail):
        w = z - series.center
        if np.any(w == 0):
            raise ZeroDivisionError(f"Laurent tail evaluated at its pole {series.center}")
        u = 1.0 / w
        acc = np.zeros_like(u)
        for f in c[::-1]:
            acc = acc * u + f
        out = acc * u
    else:
        out = np.zeros_like(z)
        for a in c[::-1]:
            out = out * z + a
    return complex(out) if scalar else out


def _weighted_norm(values: np.ndarray, weights: np.ndarray) -> float:
    """``(pi sum w_k |v_k|^2)^(1/2)``, scaled so tiny or huge entries do not under/overflow."""
    mag = np.abs(values)
    scale = float(np.max(mag, initial=0.0))
    if scale == 0.0:
        return 0.0
    return scale * math.sqrt(math.pi * math.fsum(weights * (mag / scale) ** 2))


def b2_disk_norm(g: CoefficientSeries) -> float:
    """Bergman norm on the unit disk, ``(pi sum_{k>=0} |c_k|^2/(k+1))^(1/2)``.

    The sum starts at k=0: ``iint_D |z^k|^2 dA = pi/(k+1)``.
    """
    k = np.arange(g.coeffs.size)
    return _weighted_norm(g.coeffs, 1.0 / (k + 1))


def b21_exterior_norm(gamma: LaurentTail) -> float:
    """Dirichlet norm off the closed unit disk, ``(pi sum_k k |F_k|^2)^(1/2)``."""
    if gamma.center != 0:
        raise ValueError(f"coefficient norm needs a tail about 0, got center {gamma.center}")
    return _weighted_norm(gamma.coeffs, np.arange(1, gamma.coeffs.size + 1))


def rho_seminorm(f: BoundaryFunction) -> float:
    """``(pi sum_{k>=1} k |f_{-k}|^2)^(1/2)`` over the resolvable negative modes."""
    neg = f.negative_modes()
    return _weighted_norm(neg, np.arange(1, neg.size + 1))
