"""Coordinate tensor calculus on a single chart.

Conventions
-----------
* ``christoffel[k][i][j]`` is Γ^k_ij of the Levi-Civita connection.
* ``riemann[l][i][j][k]`` is the l-th component of R(∂i, ∂j)∂k with
  R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z, so it is antisymmetric in (i, j).
* ``ricci[j][k]`` = Σ_l riemann[l][l][j][k], i.e. S(Y,Z) = tr(X ↦ R(X,Y)Z).
* A (1,1) tensor is stored as a matrix whose column j is the image of ∂j.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .exact_field import ExactMatrix, FieldError, ScalarExpr, ScalarField, dot

Vector = tuple  # tuple[ScalarExpr, ...]


class Chart:
    """A coordinate chart: ordered coordinate names inside a scalar field."""

    def __init__(self, field: ScalarField, coordinates: Sequence[str]):
        coordinates = tuple(coordinates)
        if len(coordinates) < 2:
            raise FieldError("a chart needs at least two coordinates")
        if len(set(coordinates)) != len(coordinates):
            raise FieldError("coordinate names must be distinct")
        for c in coordinates:
            if c not in field.symbols:
                raise FieldError(f"coordinate {c!r} is not a symbol of the field")
        self.field = field
        self.coordinates = coordinates
        self.dim = len(coordinates)

    def basis(self, i: int) -> Vector:
        f = self.field
        return tuple(f.one if k == i else f.zero for k in range(self.dim))

    def zero_vector(self) -> Vector:
        return (self.field.zero,) * self.dim

    def vector(self, comps) -> Vector:
        comps = tuple(self.field.const(c) for c in comps)
        if len(comps) != self.dim:
            raise FieldError(f"expected {self.dim} components, got {len(comps)}")
        return comps

    def apply_field(self, X: Vector, h: ScalarExpr) -> ScalarExpr:
        """Directional derivative X(h)."""
        acc = self.field.zero
        for c, a in zip(self.coordinates, X):
            if not a.is_zero():
                acc = acc + a * h.diff(c)
        return acc


def add(*vs: Vector) -> Vector:
    return tuple(sum(cs[1:], cs[0]) for cs in zip(*vs))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def is_zero_vector(v: Vector) -> bool:
    return all(a.is_zero() for a in v)


def lie_bracket(chart: Chart, X: Vector, Y: Vector) -> Vector:
    """[X,Y]^k = X(Y^k) − Y(X^k)."""
    return tuple(chart.apply_field(X, Yk) - chart.apply_field(Y, Xk) for Xk, Yk in zip(X, Y))


def _sylvester_index(rows: list[list[Fraction]]) -> int:
    """Number of negative squares of a rational symmetric matrix, by congruence (LDLᵀ)."""
    a = [list(r) for r in rows]
    n = len(a)
    negatives = 0
    k = 0
    while k < n:
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if swap is not None:
                a[k], a[swap] = a[swap], a[k]
                for r in a:
                    r[k], r[swap] = r[swap], r[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    raise FieldError("metric is degenerate at the base point")
                # replace e_k by e_k + e_j: diagonal becomes 2 a_kj
                for r in range(n):
                    a[r][k] += a[r][j]
                for c in range(n):
                    a[k][c] += a[j][c]
        piv = a[k][k]
        if piv < 0:
            negatives += 1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                m = a[i][k] / piv
                for c in range(k, n):
                    a[i][c] -= m * a[k][c]
                a[i][k] = Fraction(0)
        for c in range(k + 1, n):
            a[k][c] = Fraction(0)
        k += 1
    return negatives


class MetricTensor:
    """Nondegenerate symmetric bilinear form on a chart, with lazily cached derived data."""

    def __init__(self, chart: Chart, matrix: ExactMatrix):
        if matrix.shape != (chart.dim, chart.dim):
            raise FieldError("metric shape does not match the chart dimension")
        if not matrix.is_symmetric():
            raise FieldError("metric matrix is not symmetric")
        self.chart = chart
        self.field = chart.field
        self.matrix = matrix
        if self.det.is_zero():
            raise FieldError("metric is degenerate (determinant is the zero expression)")

    @cached_property
    def det(self) -> ScalarExpr:
        return self.matrix.det()

    @cached_property
    def inverse(self) -> ExactMatrix:
        return self.matrix.inverse()

    def __call__(self, X: Vector, Y: Vector) -> ScalarExpr:
        return dot(X, self.matrix @ Y, self.field)

    def lower(self, X: Vector) -> Vector:
        """Covector g(X, ·)."""
        return self.matrix @ X

    def raise_index(self, w: Vector) -> Vector:
        return self.inverse @ w

    @cached_property
    def _dg(self):
        m, coords = self.chart.dim, self.chart.coordinates
        return [[[self.matrix[i, j].diff(coords[k]) for k in range(m)] for j in range(m)]
                for i in range(m)]

    @cached_property
    def christoffel_first(self):
        """Γ_{l,ij} = ½(∂i g_jl + ∂j g_il − ∂l g_ij)."""
        m, dg = self.chart.dim, self._dg
        half = Fraction(1, 2)
        return [[[(dg[j][l][i] + dg[i][l][j] - dg[i][j][l]) * half for j in range(m)]
                 for i in range(m)] for l in range(m)]

    @cached_property
    def christoffel(self):
        m = self.chart.dim
        first = self.christoffel_first
        ginv = self.inverse
        out = [[[None] * m for _ in range(m)] for _ in range(m)]
        for k in range(m):
            for i in range(m):
                for j in range(i, m):
                    v = dot([ginv[k, l] for l in range(m)], [first[l][i][j] for l in range(m)],
                            self.field)
                    out[k][i][j] = out[k][j][i] = v
        return out

    def covariant_derivative(self, X: Vector, Y: Vector) -> Vector:
        """∇_X Y for vector fields on the chart."""
        m, gam = self.chart.dim, self.christoffel
        out = []
        for k in range(m):
            acc = self.chart.apply_field(X, Y[k])
            for i in range(m):
                if X[i].is_zero():
                    continue
                for j in range(m):
                    if Y[j].is_zero() or gam[k][i][j].is_zero():
                        continue
                    acc = acc + gam[k][i][j] * X[i] * Y[j]
            out.append(acc)
        return tuple(out)

    def covariant_derivative_form(self, X: Vector, w: Vector) -> Vector:
        """(∇_X w)_j = X(w_j) − Γ^k_ij X^i w_k for a 1-form w."""
        m, gam = self.chart.dim, self.christoffel
        out = []
        for j in range(m):
            acc = self.chart.apply_field(X, w[j])
            for i in range(m):
                if X[i].is_zero():
                    continue
                for k in range(m):
                    if not gam[k][i][j].is_zero() and not w[k].is_zero():
                        acc = acc - gam[k][i][j] * X[i] * w[k]
            out.append(acc)
        return tuple(out)

    @cached_property
    def curvature(self) -> "CurvatureTensor":
        return riemann_curvature(self)

    def index(self, base_point: Mapping[str, Fraction],
              generator_values: Mapping[str, Fraction] | None = None) -> int:
        """Number of negative eigenvalues of g at ``base_point``.

        Generator values default to exp(rate·coordinate), which is exactly 1
        at a zero coordinate and otherwise a rational approximation (the index
        is locally constant, so the approximation does not change the count).
        """
        values = {k: Fraction(v) for k, v in base_point.items()}
        gens = dict(generator_values or {})
        for g in self.field.generators:
            if g.name not in gens:
                gens[g.name] = _exp_value(g.rate * values[g.base])
        rows = [[self.matrix[i, j].evaluate_at(values, gens) for j in range(self.chart.dim)]
                for i in range(self.chart.dim)]
        return _sylvester_index(rows)


def _exp_value(x: Fraction) -> Fraction:
    import math

    if x == 0:
        return Fraction(1)
    return Fraction(math.exp(x)).limit_denominator(10 ** 12)


def christoffel_symbols(g: MetricTensor):
    return g.christoffel


class CurvatureTensor:
    def __init__(self, metric: MetricTensor, components):
        self.metric = metric
        self.components = components

    @property
    def dim(self):
        return self.metric.chart.dim

    def __getitem__(self, lijk):
        l, i, j, k = lijk
        return self.components[l][i][j][k]

    @cached_property
    def ricci(self):
        m, f = self.dim, self.metric.field
        out = [[None] * m for _ in range(m)]
        for j in range(m):
            for k in range(m):
                acc = f.zero
                for l in range(m):
                    acc = acc + self.components[l][l][j][k]
                out[j][k] = acc
        return out

    def apply(self, X: Vector, Y: Vector, Z: Vector) -> Vector:
        """R(X,Y)Z for arbitrary vector fields (trilinear in the components)."""
        m, f = self.dim, self.metric.field
        out = []
        for l in range(m):
            acc = f.zero
            for i in range(m):
                if X[i].is_zero():
                    continue
                for j in range(m):
                    if Y[j].is_zero():
                        continue
                    for k in range(m):
                        c = self.components[l][i][j][k]
                        if Z[k].is_zero() or c.is_zero():
                            continue
                        acc = acc + c * X[i] * Y[j] * Z[k]
            out.append(acc)
        return tuple(out)

    def ricci_form(self, Y: Vector, Z: Vector) -> ScalarExpr:
        m, f = self.dim, self.metric.field
        acc = f.zero
        for j in range(m):
            for k in range(m):
                if not Y[j].is_zero() and not Z[k].is_zero() and not self.ricci[j][k].is_zero():
                    acc = acc + self.ricci[j][k] * Y[j] * Z[k]
        return acc

    def antisymmetry_residuals(self):
        m = self.dim
        for l in range(m):
            for i in range(m):
                for j in range(i, m):
                    for k in range(m):
                        yield (l, i, j, k), self.components[l][i][j][k] + self.components[l][j][i][k]

    def bianchi_residuals(self):
        m, c = self.dim, self.components
        for l in range(m):
            for i in range(m):
                for j in range(m):
                    for k in range(m):
                        yield (l, i, j, k), c[l][i][j][k] + c[l][j][k][i] + c[l][k][i][j]


def riemann_curvature(g: MetricTensor) -> CurvatureTensor:
    """R^l(∂i,∂j)∂k = ∂iΓ^l_jk − ∂jΓ^l_ik + Γ^l_im Γ^m_jk − Γ^l_jm Γ^m_ik."""
    m, coords, gam, f = g.chart.dim, g.chart.coordinates, g.christoffel, g.field
    dgam = [[[[gam[l][j][k].diff(coords[i]) for i in range(m)] for k in range(m)]
             for j in range(m)] for l in range(m)]
    comps = [[[[None] * m for _ in range(m)] for _ in range(m)] for _ in range(m)]
    for l in range(m):
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    if j < i:
                        comps[l][i][j][k] = -comps[l][j][i][k]
                        continue
                    if i == j:
                        comps[l][i][j][k] = f.zero
                        continue
                    acc = dgam[l][j][k][i] - dgam[l][i][k][j]
                    for n in range(m):
                        a = gam[l][i][n]
                        if not a.is_zero() and not gam[n][j][k].is_zero():
                            acc = acc + a * gam[n][j][k]
                        b = gam[l][j][n]
                        if not b.is_zero() and not gam[n][i][k].is_zero():
                            acc = acc - b * gam[n][i][k]
                    comps[l][i][j][k] = acc
    return CurvatureTensor(g, comps)


class Tensor11:
    """(1,1) tensor; column j of ``matrix`` is the image of ∂j."""

    def __init__(self, chart: Chart, matrix: ExactMatrix):
        if matrix.shape != (chart.dim, chart.dim):
            raise FieldError("(1,1) tensor shape does not match the chart dimension")
        self.chart = chart
        self.matrix = matrix

    def __call__(self, X: Vector) -> Vector:
        return self.matrix @ X

    def squared(self) -> "Tensor11":
        return Tensor11(self.chart, self.matrix @ self.matrix)


def covariant_derivative_along_map(emb, g: MetricTensor, i: int, j: int) -> Vector:
    """∇̃_{f*∂u_i} f*∂u_j as an ambient field in the hypersurface parameters."""
    return emb.nabla(emb.frame_basis(i), emb.tangent_frame[j], g)
