"""JSON verification configs: validation and construction of the geometric objects."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from ..exact_field import ExpGenerator, FieldError, ScalarExpr, ScalarField
from ..paracontact import AmbientStructure, structure_from_matrices
from ..tensor_calc import Chart

TOP_LEVEL_KEYS = ("chart", "epsilon", "metric", "phi", "xi", "eta", "hypersurface", "checks",
                  "numeric", "base_point")

# selectable pipeline stages; "all" selects every one
STAGES = ("axioms", "para_sasakian", "curvature", "hypersurface", "gauss_weingarten",
          "classification", "identities", "integrability", "numeric")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class HypersurfaceSpec:
    parameters: tuple[str, ...]
    mapping: tuple[ScalarExpr, ...]
    screen: tuple[tuple[ScalarExpr, ...], ...] | None


@dataclass
class VerificationConfig:
    raw: dict[str, Any]
    digest: str
    field: ScalarField
    chart: Chart
    structure: AmbientStructure
    hypersurface: HypersurfaceSpec | None
    checks: frozenset[str]
    samples: int
    seed: int
    base_point: dict[str, Fraction] = field(default_factory=dict)

    def with_overrides(self, checks: frozenset[str] | None = None, samples: int | None = None,
                       seed: int | None = None) -> "VerificationConfig":
        out = VerificationConfig(**{k: getattr(self, k) for k in self.__dataclass_fields__})
        if checks is not None:
            out.checks = checks
        if samples is not None:
            out.samples = samples
        if seed is not None:
            out.seed = seed
        return out


def parse_checks(value) -> frozenset[str]:
    if value is None or value == "all":
        return frozenset(STAGES)
    if isinstance(value, str):
        value = [v.strip() for v in value.split(",") if v.strip()]
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ConfigError("checks must be 'all' or a list of stage names")
    if "all" in value:
        return frozenset(STAGES)
    unknown = sorted(set(value) - set(STAGES))
    if unknown:
        raise ConfigError(f"unknown check stages {unknown}; known: {', '.join(STAGES)}")
    return frozenset(value)


def _expr(f: ScalarField, text, where: str) -> ScalarExpr:
    if isinstance(text, int) and not isinstance(text, bool):
        text = str(text)
    if not isinstance(text, str):
        raise ConfigError(f"{where}: expected an expression string, got {type(text).__name__}")
    try:
        return f.parse(text)
    except FieldError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def _vector(f: ScalarField, items, m: int, where: str) -> list[ScalarExpr]:
    if not isinstance(items, list) or len(items) != m:
        raise ConfigError(f"{where}: expected a list of {m} expressions")
    return [_expr(f, t, f"{where}[{k}]") for k, t in enumerate(items)]


def _matrix(f: ScalarField, rows, m: int, where: str) -> list[list[ScalarExpr]]:
    if not isinstance(rows, list) or len(rows) != m:
        raise ConfigError(f"{where}: expected {m} rows")
    return [_vector(f, r, m, f"{where}[{i}]") for i, r in enumerate(rows)]


def _rational(value, where: str) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{where}: not a rational number: {value!r}") from exc


def load_config(source: str | Path | dict | bytes) -> VerificationConfig:
    """Parse and validate a config from a path, JSON bytes, or an already-decoded dict."""
    if isinstance(source, dict):
        raw = source
        data = json.dumps(source, sort_keys=True, ensure_ascii=False).encode()
    else:
        if isinstance(source, (str, Path)):
            try:
                data = Path(source).read_bytes()
            except OSError as exc:
                raise ConfigError(f"cannot read config: {exc}") from exc
        else:
            data = source
        try:
            raw = json.loads(data.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ConfigError(f"config is not valid UTF-8 JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = sorted(set(raw) - set(TOP_LEVEL_KEYS))
    if unknown:
        raise ConfigError(f"unknown top-level keys {unknown}")
    for key in ("chart", "epsilon", "metric", "phi", "xi", "eta"):
        if key not in raw:
            raise ConfigError(f"missing required key {key!r}")
    digest = hashlib.sha256(data).hexdigest()

    chart_raw = raw["chart"]
    if not isinstance(chart_raw, dict) or not isinstance(chart_raw.get("coordinates"), list):
        raise ConfigError("chart.coordinates must be a list of names")
    coords = chart_raw["coordinates"]
    gens = []
    for k, g in enumerate(chart_raw.get("generators", [])):
        try:
            gens.append(ExpGenerator(g["name"], g["base"], Fraction(str(g["rate"]))))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"chart.generators[{k}]: {exc}") from exc
    try:
        f = ScalarField(coords, gens)
        chart = Chart(f, coords)
    except FieldError as exc:
        raise ConfigError(f"chart: {exc}") from exc
    m = chart.dim

    eps = raw["epsilon"]
    if eps not in (1, -1) or isinstance(eps, bool):
        raise ConfigError("epsilon must be 1 or -1")
    g_rows = _matrix(f, raw["metric"], m, "metric")
    phi_images = _matrix(f, raw["phi"], m, "phi")
    xi = _vector(f, raw["xi"], m, "xi")
    eta = _vector(f, raw["eta"], m, "eta")
    try:
        structure = structure_from_matrices(chart, g_rows, phi_images, xi, eta, eps)
    except FieldError as exc:
        raise ConfigError(f"structure: {exc}") from exc

    hyp = None
    if raw.get("hypersurface") is not None:
        hyp = _hypersurface(f, chart, raw["hypersurface"])

    numeric = raw.get("numeric", {}) or {}
    samples = numeric.get("samples", 0)
    seed = numeric.get("seed", 0)
    if not isinstance(samples, int) or samples < 0 or not isinstance(seed, int):
        raise ConfigError("numeric.samples must be a non-negative integer and numeric.seed an integer")

    bp_raw = raw.get("base_point") or {c: "0" for c in coords}
    if not isinstance(bp_raw, dict):
        raise ConfigError("base_point must map coordinates to rationals")
    missing = [c for c in coords if c not in bp_raw]
    extra = sorted(set(bp_raw) - set(coords))
    if missing or extra:
        raise ConfigError(f"base_point must give exactly the coordinates (missing {missing}, extra {extra})")
    base_point = {c: _rational(bp_raw[c], f"base_point.{c}") for c in coords}

    return VerificationConfig(raw, digest, f, chart, structure, hyp, parse_checks(raw.get("checks")),
                              samples, seed, base_point)


def _hypersurface(f: ScalarField, chart: Chart, h) -> HypersurfaceSpec:
    if not isinstance(h, dict) or not isinstance(h.get("parameters"), list):
        raise ConfigError("hypersurface.parameters must be a list of names")
    params = tuple(h["parameters"])
    for p in params:
        if p not in f.symbols:
            raise ConfigError(f"hypersurface.parameters: undeclared symbol {p!r}")
    mp = h.get("map", {})
    if isinstance(mp, list):
        mapping = _vector(f, mp, chart.dim, "hypersurface.map")
    elif isinstance(mp, dict):
        bad = sorted(set(mp) - set(chart.coordinates))
        if bad:
            raise ConfigError(f"hypersurface.map: unknown coordinates {bad}")
        mapping = []
        for c in chart.coordinates:
            if c in mp:
                mapping.append(_expr(f, mp[c], f"hypersurface.map.{c}"))
            elif c in params:
                mapping.append(f.symbol(c))
            else:
                raise ConfigError(f"hypersurface.map: coordinate {c!r} is neither mapped nor a parameter")
    else:
        raise ConfigError("hypersurface.map must be an object or a list")
    screen = None
    if h.get("screen") is not None:
        if not isinstance(h["screen"], list):
            raise ConfigError("hypersurface.screen must be a list of ambient vectors")
        screen = tuple(tuple(_vector(f, v, chart.dim, f"hypersurface.screen[{k}]"))
                       for k, v in enumerate(h["screen"]))
    return HypersurfaceSpec(params, tuple(mapping), screen)
