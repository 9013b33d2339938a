"""Floating-point finite-difference oracles for the symbolic tensor engine.

The oracle only ever evaluates metric, φ, ξ entries numerically; Christoffel
symbols and curvature are rebuilt from those values by fourth-order central
differences, so agreement with the exact engine is an independent check.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .exact_field import PoleError, ScalarExpr
from .paracontact import AmbientStructure
from .tensor_calc import MetricTensor

RTOL = 1e-6
STEP = 1e-3
_STENCIL = ((-2, 1 / 12), (-1, -8 / 12), (1, 8 / 12), (2, -1 / 12))


def _values(field, coords: Sequence[str], x: np.ndarray) -> dict[str, float]:
    vals = dict(zip(coords, map(float, x)))
    for g in field.generators:
        vals[g.name] = math.exp(float(g.rate) * vals[g.base])
    return vals


def entrywise(exprs, field, coords) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorised float evaluator of a nested list of expressions."""
    arr = np.array(exprs, dtype=object)

    def fn(x):
        vals = _values(field, coords, x)
        return np.vectorize(lambda e: e.evaluate_numeric(vals), otypes=[float])(arr)

    return fn


def derivative(fn: Callable[[np.ndarray], np.ndarray], x: np.ndarray, h: float = STEP) -> np.ndarray:
    """out[..., i] = ∂_i fn(x) by the five-point stencil."""
    cols = []
    for i in range(len(x)):
        acc = 0.0
        for k, w in _STENCIL:
            y = x.copy()
            y[i] += k * h
            acc = acc + w * fn(y)
        cols.append(acc / h)
    return np.stack(cols, axis=-1)


def christoffel_fd(g_fn, x: np.ndarray, h: float = STEP) -> np.ndarray:
    """gam[k, i, j] = Γ^k_ij from numerically differentiated metric values."""
    g = g_fn(x)
    dg = derivative(g_fn, x, h)          # dg[a, b, c] = ∂_c g_ab
    first = 0.5 * (np.einsum("jli->lij", dg) + np.einsum("ilj->lij", dg) - np.einsum("ijl->lij", dg))
    return np.einsum("kl,lij->kij", np.linalg.inv(g), first)


def riemann_fd(g_fn, x: np.ndarray, h: float = STEP) -> np.ndarray:
    """R[l, i, j, k] = l-th component of R(∂i,∂j)∂k."""
    gam = christoffel_fd(g_fn, x, h)
    dgam = derivative(lambda y: christoffel_fd(g_fn, y, h), x, h)   # dgam[l, j, k, i] = ∂_i Γ^l_jk
    r = (np.einsum("ljki->lijk", dgam) - np.einsum("likj->lijk", dgam)
         + np.einsum("lim,mjk->lijk", gam, gam) - np.einsum("ljm,mik->lijk", gam, gam))
    return r


def para_sasakian_fd(s: AmbientStructure, x: np.ndarray, h: float = STEP) -> np.ndarray:
    """res[i, j, :] = (∇̃_{∂i}φ)∂j − (−g̃(φ∂i,φ∂j)ξ − εη(∂j)φ²∂i), numerically."""
    f, coords = s.field, s.chart.coordinates
    g_fn = entrywise([list(r) for r in s.metric.matrix.rows], f, coords)
    phi_fn = entrywise([list(r) for r in s.phi.matrix.rows], f, coords)
    xi = entrywise(list(s.xi), f, coords)(x)
    eta = entrywise(list(s.eta), f, coords)(x)
    g = g_fn(x)
    P = phi_fn(x)
    dP = derivative(phi_fn, x, h)        # dP[a, b, i] = ∂_i φ^a_b
    gam = christoffel_fd(g_fn, x, h)
    # (∇_i φ)^a_b = ∂_i φ^a_b + Γ^a_ic φ^c_b − φ^a_c Γ^c_ib
    nphi = (np.einsum("abi->iba", dP) + np.einsum("aic,cb->iba", gam, P)
            - np.einsum("ac,cib->iba", P, gam))
    gpp = P.T @ g @ P
    P2 = P @ P
    rhs = -np.einsum("ij,a->ija", gpp, xi) - s.epsilon * np.einsum("j,ai->ija", eta, P2)
    return nphi - rhs


def _exact(exprs, vals) -> np.ndarray:
    arr = np.array(exprs, dtype=object)
    return np.vectorize(lambda e: e.evaluate_numeric(vals), otypes=[float])(arr)


def _close(num: np.ndarray, exact: np.ndarray, rtol: float) -> float:
    """Largest error relative to max(|exact entry|, scale of the whole tensor)."""
    scale = max(float(np.max(np.abs(exact))), 1.0)
    err = np.abs(num - exact) / np.maximum(np.abs(exact), scale)
    return float(np.max(err))


@dataclass
class NumericAgreement:
    quantity: str
    samples: int
    worst: float
    rtol: float

    @property
    def ok(self) -> bool:
        return self.samples > 0 and self.worst <= self.rtol


def sample_points(metric: MetricTensor, n: int, seed: int, radius: float = 1.0,
                  max_condition: float = 1e6) -> list[np.ndarray]:
    """Seeded points in [−radius, radius]^m away from poles and near-degenerate metric values."""
    rng = random.Random(seed)
    f, coords = metric.field, metric.chart.coordinates
    g_fn = entrywise([list(r) for r in metric.matrix.rows], f, coords)
    pts: list[np.ndarray] = []
    attempts = 0
    while len(pts) < n and attempts < 50 * max(n, 1):
        attempts += 1
        x = np.array([rng.uniform(-radius, radius) for _ in coords])
        try:
            g = g_fn(x)
        except PoleError:
            continue
        if not np.all(np.isfinite(g)) or np.linalg.cond(g) > max_condition:
            continue
        pts.append(x)
    return pts


def compare_christoffel(metric: MetricTensor, points, rtol: float = RTOL) -> NumericAgreement:
    f, coords = metric.field, metric.chart.coordinates
    g_fn = entrywise([list(r) for r in metric.matrix.rows], f, coords)
    worst = 0.0
    for x in points:
        exact = _exact(metric.christoffel, _values(f, coords, x))
        worst = max(worst, _close(christoffel_fd(g_fn, x), exact, rtol))
    return NumericAgreement("christoffel", len(points), worst, rtol)


def compare_riemann(metric: MetricTensor, points, rtol: float = RTOL) -> NumericAgreement:
    f, coords = metric.field, metric.chart.coordinates
    g_fn = entrywise([list(r) for r in metric.matrix.rows], f, coords)
    worst = 0.0
    comps = metric.curvature.components
    for x in points:
        exact = _exact(comps, _values(f, coords, x))
        worst = max(worst, _close(riemann_fd(g_fn, x), exact, rtol))
    return NumericAgreement("riemann", len(points), worst, rtol)


def para_sasakian_residual(s: AmbientStructure, points, rtol: float = RTOL) -> NumericAgreement:
    """Worst numeric para-Sasakian residual, scaled by the size of φ's derivative terms."""
    worst = 0.0
    for x in points:
        res = para_sasakian_fd(s, x)
        vals = _values(s.field, s.chart.coordinates, x)
        scale = max(float(np.max(np.abs(_exact([list(r) for r in s.metric.matrix.rows], vals)))), 1.0)
        worst = max(worst, float(np.max(np.abs(res))) / scale)
    return NumericAgreement("para_sasakian", len(points), worst, rtol)


def evaluate_float(expr: ScalarExpr, point: dict[str, float]) -> float:
    vals = dict(point)
    for g in expr.field.generators:
        if g.name not in vals:
            vals[g.name] = math.exp(float(g.rate) * vals[g.base])
    return expr.evaluate_numeric(vals)
