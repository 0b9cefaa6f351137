"""Experiment configuration: a flat dataclass loaded from JSON."""

from __future__ import annotations

import dataclasses
import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from .domains import DEFAULT_CATALOG

DEFAULT_GAMMAS = (
    {"name": "pole1", "center": [0.1, 0.0], "coeffs": [[1.0, 0.0]]},
    {"name": "pole2", "center": [0.1, 0.0], "coeffs": [[0.0, 0.0], [1.0, 0.0]]},
    {"name": "mixed", "center": [0.1, 0.0], "coeffs": [[1.0, 0.0], [0.0, 0.5], [-0.25, 0.0]]},
)


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass
class Config:
    catalog: list = field(default_factory=lambda: [dict(e) for e in DEFAULT_CATALOG])
    seed: int = 42
    delta: float = 0.1
    levels: int = 8
    samples: int = 256
    n_r: int = 64
    n_theta: int = 128
    guard: float = 0.05
    # theorem1
    theorem1_domains: list = field(default_factory=lambda: ["disk", "quad03", "cubic025"])
    theorem1_max_degree: int = 3
    tol_rel: float = 1e-6
    tol_abs: float = 1e-8
    closed_form_tol: float = 1e-10
    # theorem2 and inversion
    theorem2_domains: list = field(default_factory=lambda: ["disk", "quad03"])
    gammas: list = field(default_factory=lambda: [dict(g) for g in DEFAULT_GAMMAS])
    inversion_degree: int = 12
    ring_radius: float = 2.0
    regularization: float = 1e-12
    theorem2_tol: float = 1e-3
    residual_tol: float = 1e-6
    heldout_tol: float = 1e-5
    # lemma1 / isometry
    lemma1_count: int = 100
    lemma1_max_degree: int = 32
    lemma1_tol: float = 1e-12
    isometry_count: int = 50
    isometry_max_degree: int = 16
    isometry_tol: float = 1e-12
    isometry_quad_tol: float = 1e-6
    # beurling
    beurling_radii: list = field(default_factory=lambda: [1.5, 2.0, 5.0])
    beurling_max_k: int = 8
    beurling_tol: float = 1e-8
    beurling_norm_tol: float = 1e-12
    fd_step: float = 1e-4
    fd_tol: float = 1e-6
    # riesz
    riesz_levels: int = 4
    riesz_ring_points: int = 16
    riesz_spread_tol: float = 1e-10
    riesz_kernel_tol: float = 1e-8

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def replace(self, **changes) -> Config:
        return dataclasses.replace(self, **{k: v for k, v in changes.items() if v is not None})


def _schema() -> dict:
    return json.loads(resources.files("bergcauchy").joinpath("schemas/config.schema.json").read_text())


def _line_of(text: str, path) -> int | None:
    for key in reversed([p for p in path if isinstance(p, str)]):
        m = re.search(r'"%s"\s*:' % re.escape(key), text)
        if m:
            return text.count("\n", 0, m.start()) + 1
    return None


def parse_config(text: str) -> Config:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg} (column {exc.colno})", exc.lineno) from exc
    validator = jsonschema.Draft202012Validator(_schema())
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise ConfigError(f"{where}: {err.message}", _line_of(text, list(err.absolute_path)))
    return Config(**data)


def load_config(path: str | Path | None) -> Config:
    if path is None:
        return Config()
    return parse_config(Path(path).read_text())
