"""Verification suites run by the command line.

Each suite returns a :class:`SuiteResult` whose rows become ``<suite>.csv``.
Random inputs come from ``numpy.random.default_rng(config.seed)`` created
fresh inside each suite, so a suite's output does not depend on which other
suites ran before it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import Config
from .criterion import (
    BOUNDED,
    bergman_pairing,
    invert_cauchy,
    riesz_functional,
    theorem1_bound_check,
    theorem2_membership,
)
from .domains import EXTERIOR, INTERIOR, ConformalMap, boundary_points, exhaust, load_catalog, make_map
from .quadrature import build_rule, integrate_disk
from .series import (
    BoundaryFunction,
    CoefficientSeries,
    LaurentTail,
    b2_disk_norm,
    b21_exterior_norm,
    modes_to_samples,
    pairs_to_complex,
    rho_seminorm,
)
from .transforms import (
    b21_norm_exterior_quadrature,
    beurling_offsupport,
    beurling_quadrature,
    boundary_cauchy_integral,
    cauchy_disk_series,
    cauchy_quadrature,
    cauchy_transform,
)

SUITES = ("verify-lemma1", "verify-disk-isometry", "theorem1", "theorem2", "beurling", "riesz")

EXTERIOR_IDENTITY = make_map(EXTERIOR, [0], name="disk")

CHECK_COLUMNS = ["check", "case", "value", "reference", "error", "tolerance", "pass"]


@dataclass
class SuiteResult:
    name: str
    columns: list
    rows: list = field(default_factory=list)
    reports: list = field(default_factory=list)

    def add(self, **row):
        self.rows.append([row[c] for c in self.columns])

    @property
    def passed(self) -> bool:
        ok = self.columns.index("pass")
        return all(r[ok] for r in self.rows)

    @property
    def first_failure(self):
        ok = self.columns.index("pass")
        for r in self.rows:
            if not r[ok]:
                return dict(zip(self.columns, r))
        return None


def _rel(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale else 0.0


def _random_complex(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def _catalog(cfg: Config) -> dict[str, ConformalMap]:
    return load_catalog(cfg.catalog)


def _interior(cfg: Config, names) -> list[ConformalMap]:
    catalog = _catalog(cfg)
    out = []
    for name in names:
        if name not in catalog:
            raise KeyError(f"unknown catalog domain {name!r}")
        if catalog[name].kind != INTERIOR:
            raise ValueError(f"domain {name!r} is not an interior map")
        out.append(catalog[name])
    return out


def _gammas(cfg: Config) -> list[tuple[str, LaurentTail]]:
    return [
        (g["name"], LaurentTail(pairs_to_complex(g["coeffs"]), pairs_to_complex([g["center"]])[0]))
        for g in cfg.gammas
    ]


def _g_label(g: CoefficientSeries) -> str:
    k = g.degree
    return "1" if k == 0 else ("z" if k == 1 else f"z^{k}")


def lemma1(cfg: Config) -> SuiteResult:
    """rho(f) against the B2^1 norm of its Cauchy-type integral."""
    res = SuiteResult("verify-lemma1", ["index", "degree", "rho", "b21_norm", "b21_quad", "rel_error", "rel_error_quad", "pass"])
    rng = np.random.default_rng(cfg.seed)
    rule = build_rule(cfg.n_r, cfg.n_theta)
    for i in range(cfg.lemma1_count):
        deg = int(rng.integers(1, cfg.lemma1_max_degree + 1))
        coeffs = _random_complex(rng, 2 * deg + 1)
        f = BoundaryFunction.from_mode_dict(dict(zip(range(-deg, deg + 1), coeffs)), cfg.samples)
        rho = rho_seminorm(modes_to_samples(f))
        F = boundary_cauchy_integral(f)
        norm = b21_exterior_norm(F)
        quad = b21_norm_exterior_quadrature(F, EXTERIOR_IDENTITY, rule)
        err, errq = _rel(rho, norm), _rel(rho, quad)
        res.add(index=i, degree=deg, rho=rho, b21_norm=norm, b21_quad=quad, rel_error=err, rel_error_quad=errq,
                **{"pass": err <= cfg.lemma1_tol and errq <= cfg.isometry_quad_tol})
    return res


def disk_isometry(cfg: Config) -> SuiteResult:
    """||K g|| = ||g|| on the disk by coefficients and by quadrature; K inverts exactly."""
    res = SuiteResult("verify-disk-isometry", ["index", "degree", "norm_g", "norm_Kg", "norm_Kg_quad", "rel_error", "rel_error_quad", "inversion_error", "pass"])
    rng = np.random.default_rng(cfg.seed)
    rule = build_rule(cfg.n_r, cfg.n_theta)
    for i in range(cfg.isometry_count):
        deg = int(rng.integers(0, cfg.isometry_max_degree + 1))
        g = CoefficientSeries(_random_complex(rng, deg + 1))
        Kg = cauchy_disk_series(g)
        ng, nk = b2_disk_norm(g), b21_exterior_norm(Kg)
        nq = b21_norm_exterior_quadrature(Kg, EXTERIOR_IDENTITY, rule)
        back, _ = invert_cauchy(Kg, _catalog(cfg).get("disk", make_map(INTERIOR, [0, 1])), deg)
        inv = float(np.max(np.abs(back.coeffs - g.coeffs)))
        err, errq = _rel(ng, nk), _rel(ng, nq)
        res.add(index=i, degree=deg, norm_g=ng, norm_Kg=nk, norm_Kg_quad=nq, rel_error=err, rel_error_quad=errq,
                inversion_error=inv,
                **{"pass": err <= cfg.isometry_tol and errq <= cfg.isometry_quad_tol and inv <= cfg.isometry_tol * max(1.0, ng)})
    return res


def theorem1(cfg: Config) -> SuiteResult:
    res = SuiteResult("theorem1", ["domain", "g", "n", "r_n", "rho_n", "ref_norm", "ratio", "pass"])
    rule = build_rule(cfg.n_r, cfg.n_theta)
    for phi in _interior(cfg, cfg.theorem1_domains):
        ex = exhaust(phi, cfg.levels, cfg.delta)
        for k in range(cfg.theorem1_max_degree + 1):
            g = CoefficientSeries.monomial(k)
            rep = theorem1_bound_check(g, phi, ex, rule, cfg.samples, cfg.tol_rel, cfg.tol_abs, label=_g_label(g))
            res.reports.append(rep.to_dict())
            limit = rep.reference_norm * (1 + cfg.tol_rel) + cfg.tol_abs
            for n, r, rho in rep.levels:
                ok = rho <= limit
                if phi.is_identity and k == 1:
                    # closed form: gamma o phi_n = -e^{-2i theta} / (2 r_n^2)
                    ok = ok and abs(rho - math.sqrt(math.pi / 2) / r**2) <= cfg.closed_form_tol
                ratio = rho / rep.reference_norm if rep.reference_norm else 0.0
                res.add(domain=phi.name, g=rep.gamma, n=n, r_n=r, rho_n=rho, ref_norm=rep.reference_norm, ratio=ratio, **{"pass": ok})
    return res


def theorem2(cfg: Config) -> SuiteResult:
    res = SuiteResult("theorem2", ["domain", "gamma", "n", "r_n", "rho_n", "ref_norm", "ghat_norm", "ratio", "residual", "heldout_error", "pass"])
    rule = build_rule(cfg.n_r, cfg.n_theta)
    for phi in _interior(cfg, cfg.theorem2_domains):
        ex = exhaust(phi, cfg.levels, cfg.delta)
        exterior = EXTERIOR_IDENTITY if phi.is_identity else None
        for name, gamma in _gammas(cfg):
            rep = theorem2_membership(
                gamma, phi, ex, cfg.samples, rule, exterior,
                degree=cfg.inversion_degree, tol=cfg.theorem2_tol, residual_tol=cfg.residual_tol,
                heldout_tol=cfg.heldout_tol, ring_radius=cfg.ring_radius, regularization=cfg.regularization,
                guard=cfg.guard, label=name,
            )
            res.reports.append(rep.to_dict())
            ghat = rep.bound
            for n, r, rho in rep.levels:
                res.add(domain=phi.name, gamma=name, n=n, r_n=r, rho_n=rho, ref_norm=rep.reference_norm,
                        ghat_norm=ghat, ratio=rho / ghat if ghat else math.nan,
                        residual=rep.extras.get("residual", math.nan),
                        heldout_error=rep.extras.get("heldout_error", math.nan),
                        **{"pass": rep.verdict == BOUNDED})
    return res


def beurling(cfg: Config) -> SuiteResult:
    res = SuiteResult("beurling", CHECK_COLUMNS)
    rule = build_rule(cfg.n_r, cfg.n_theta)
    identity = make_map(INTERIOR, [0, 1], name="disk")
    for k in range(cfg.beurling_max_k + 1):
        d = np.zeros(k + 1, dtype=complex)
        d[k] = 1.0
        for R in cfg.beurling_radii:
            zeta = R * np.exp(0.7j)
            v, q = beurling_offsupport(d, zeta, cfg.guard), beurling_quadrature(d, zeta, rule)
            err = abs(v - q)
            res.add(check="offsupport", case=f"k={k} |zeta|={R}", value=abs(v), reference=abs(q), error=err,
                    tolerance=cfg.beurling_tol, **{"pass": err <= cfg.beurling_tol})
        # ||T u||^2 off the disk (inverted coordinates) and ||u||^2 on the disk, both by quadrature
        outer = integrate_disk(rule, lambda s: np.abs(s) ** (2 * k)).real
        inner = integrate_disk(rule, lambda z: np.abs(np.conj(z) ** k) ** 2).real
        exact = math.pi / (k + 1)
        for side, val in (("exterior", outer), ("disk", inner)):
            err = _rel(val, exact)
            res.add(check="norm", case=f"k={k} {side}", value=val, reference=exact, error=err,
                    tolerance=cfg.beurling_norm_tol, **{"pass": err <= cfg.beurling_norm_tol})
        # d/dzeta K[z^k] = T(conj(z)^k) off the disk
        g = CoefficientSeries.monomial(k)
        zeta, h = 1.5 * np.exp(0.7j), cfg.fd_step
        fd = (cauchy_quadrature(g, identity, zeta + h, rule, cfg.guard) - cauchy_quadrature(g, identity, zeta - h, rule, cfg.guard)) / (2 * h)
        t = beurling_offsupport(np.conj(g.coeffs), zeta, cfg.guard)
        err = abs(fd - t)
        res.add(check="derivative", case=f"k={k} |zeta|=1.5", value=abs(fd), reference=abs(t), error=err,
                tolerance=cfg.fd_tol, **{"pass": err <= cfg.fd_tol})
    return res


def riesz(cfg: Config) -> SuiteResult:
    res = SuiteResult("riesz", CHECK_COLUMNS)
    rule = build_rule(cfg.n_r, cfg.n_theta)
    tests = [(name, gamma) for name, gamma in _gammas(cfg)] + [("inv_zeta", LaurentTail([1.0]))]
    hs = {"h=1": lambda z: np.ones_like(z), "h=z^2": lambda z: z**2}
    for phi in _interior(cfg, cfg.theorem2_domains):
        ex = exhaust(phi, cfg.riesz_levels, cfg.delta)
        outer = float(np.max(np.abs(boundary_points(phi, ex.radii[0], cfg.samples))))
        ring = 1.5 * outer * np.exp(2j * np.pi * (np.arange(cfg.riesz_ring_points) + 0.5) / cfg.riesz_ring_points)
        for name, gamma in tests:
            for hname, h in hs.items():
                vals = [riesz_functional(gamma, h, ex, n, cfg.samples, cfg.guard) for n in range(1, cfg.riesz_levels + 1)]
                spread = max(abs(v - vals[0]) for v in vals)
                res.add(check="level_spread", case=f"{phi.name} {name} {hname}", value=abs(vals[0]), reference=abs(vals[-1]),
                        error=spread, tolerance=cfg.riesz_spread_tol, **{"pass": spread <= cfg.riesz_spread_tol})
            worst = 0.0
            for z in ring:
                v = riesz_functional(gamma, lambda x, z=z: 1.0 / (x - z), ex, 1, cfg.samples, cfg.guard)
                worst = max(worst, abs(v + gamma(z)))
            res.add(check="kernel", case=f"{phi.name} {name}", value=worst, reference=0.0, error=worst,
                    tolerance=cfg.riesz_kernel_tol, **{"pass": worst <= cfg.riesz_kernel_tol})
        # representation: gamma = K g0 gives F(h) = -(1/pi) iint_G h conj(g0) dA
        g0 = CoefficientSeries([1.0, 0.5j, -0.25])
        gamma = cauchy_transform(g0, phi)
        for hname, h in hs.items():
            v = riesz_functional(gamma, h, ex, 1, cfg.samples, cfg.guard)
            ref = -bergman_pairing(h, g0, phi, rule)
            err = abs(v - ref)
            res.add(check="representation", case=f"{phi.name} {hname}", value=abs(v), reference=abs(ref), error=err,
                    tolerance=cfg.riesz_kernel_tol, **{"pass": err <= cfg.riesz_kernel_tol})
    return res


RUNNERS = {
    "verify-lemma1": lemma1,
    "verify-disk-isometry": disk_isometry,
    "theorem1": theorem1,
    "theorem2": theorem2,
    "beurling": beurling,
    "riesz": riesz,
}
