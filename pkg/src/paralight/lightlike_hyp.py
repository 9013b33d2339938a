"""Lightlike hypersurfaces: embedding, radical, screen, transversal and Gauss-Weingarten data.

Tangent vector fields are carried as coefficient tuples over the coordinate
frame f*∂u_1 … f*∂u_{m-1} ("frame coefficients"); ambient fields along the
hypersurface are component tuples in the ambient chart, pulled back to the
parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

from .checks import AxiomReport, identity_record
from .exact_field import ExactMatrix, FieldError, ScalarExpr, ScalarField, dot, exact_nullspace
from .tensor_calc import Chart, MetricTensor, Vector, add, is_zero_vector, scale, sub


class HypersurfaceError(FieldError):
    pass


class NotLightlike(HypersurfaceError):
    pass


class NotHypersurfaceCase(HypersurfaceError):
    pass


class DegenerateScreen(HypersurfaceError):
    pass


class NoTransversal(HypersurfaceError):
    pass


class NotTangent(HypersurfaceError):
    pass


class HypersurfaceEmbedding:
    """Map u ↦ f(u) into the chart; ``mapping[a]`` is ambient coordinate a as a function of u."""

    def __init__(self, chart: Chart, parameters: Sequence[str], mapping: Sequence[ScalarExpr]):
        self.chart = chart
        self.field: ScalarField = chart.field
        self.parameters = tuple(parameters)
        self.mapping = tuple(self.field.const(e) for e in mapping)
        if len(self.parameters) != chart.dim - 1:
            raise HypersurfaceError(
                f"a hypersurface of a {chart.dim}-dimensional chart needs {chart.dim - 1} parameters")
        if len(self.mapping) != chart.dim:
            raise HypersurfaceError("the map needs one expression per ambient coordinate")
        for p in self.parameters:
            if p not in self.field.symbols:
                raise HypersurfaceError(f"parameter {p!r} is not a declared symbol")
        for e in self.mapping:
            stray = set(e.symbols_used()) - set(self.parameters) - {g.name for g in self.field.generators}
            if stray:
                raise HypersurfaceError(f"map uses non-parameter symbols {sorted(stray)}")
        # generators survive the pullback only along coordinates mapped to themselves
        for g in self.field.generators:
            a = chart.coordinates.index(g.base)
            if self.mapping[a] != self.field.symbol(g.base) or g.base not in self.parameters:
                raise HypersurfaceError(
                    f"generator {g.name!r} needs its base {g.base!r} to be a parameter mapped to itself")
        self._subs = {c: e for c, e in zip(chart.coordinates, self.mapping)
                      if not (c in self.parameters and e == self.field.symbol(c))}
        if self.jacobian.rank() != chart.dim - 1:
            raise HypersurfaceError("the Jacobian of the embedding does not have full rank")

    @property
    def dim(self) -> int:
        return len(self.parameters)

    def pullback(self, h: ScalarExpr) -> ScalarExpr:
        return h.substitute(self._subs)

    def pullback_vector(self, v: Sequence[ScalarExpr]) -> Vector:
        return tuple(self.pullback(a) for a in v)

    @cached_property
    def jacobian(self) -> ExactMatrix:
        return ExactMatrix(self.field, [[f.diff(u) for u in self.parameters] for f in self.mapping],
                           self.dim)

    @cached_property
    def tangent_frame(self) -> list[Vector]:
        """Pushforwards f*∂u_i as ambient component tuples."""
        return self.jacobian.columns()

    def frame_basis(self, i: int) -> Vector:
        f = self.field
        return tuple(f.one if k == i else f.zero for k in range(self.dim))

    @cached_property
    def _left_solver(self):
        ech = self.jacobian.echelon()
        return ech.transform

    def push(self, a: Vector) -> Vector:
        """Ambient components of the tangent field with frame coefficients ``a``."""
        return self.jacobian @ a

    def try_to_frame(self, W: Vector) -> Vector | None:
        """Frame coefficients of an ambient field along M, or None if it is not tangent."""
        tw = self._left_solver @ tuple(W)
        if not tw[-1].is_zero():
            return None
        return tuple(tw[:-1])

    def to_frame(self, W: Vector) -> Vector:
        a = self.try_to_frame(W)
        if a is None:
            raise NotTangent("vector field is not tangent to the hypersurface")
        return a

    def derive(self, a: Vector, h: ScalarExpr) -> ScalarExpr:
        """X(h) for the tangent field X with frame coefficients ``a``."""
        acc = self.field.zero
        for u, c in zip(self.parameters, a):
            if not c.is_zero():
                acc = acc + c * h.diff(u)
        return acc

    def bracket(self, a: Vector, b: Vector) -> Vector:
        """Lie bracket of tangent fields, in frame coefficients."""
        return tuple(self.derive(a, bk) - self.derive(b, ak) for ak, bk in zip(a, b))

    @cached_property
    def _gamma_cache(self) -> dict:
        return {}

    def pulled_christoffel(self, g: MetricTensor):
        key = id(g)
        if key not in self._gamma_cache:
            m = self.chart.dim
            self._gamma_cache[key] = (g, [[[self.pullback(g.christoffel[k][i][j]) for j in range(m)]
                                           for i in range(m)] for k in range(m)])
        return self._gamma_cache[key][1]

    def pulled_metric(self, g: MetricTensor) -> ExactMatrix:
        key = ("g", id(g))
        if key not in self._gamma_cache:
            self._gamma_cache[key] = (g, g.matrix.map(self.pullback))
        return self._gamma_cache[key][1]

    def ambient_inner(self, g: MetricTensor, X: Vector, Y: Vector) -> ScalarExpr:
        return dot(X, self.pulled_metric(g) @ Y, self.field)

    def nabla(self, a: Vector, Y: Vector, g: MetricTensor) -> Vector:
        """∇̃_X Y for X tangent (frame coefficients ``a``) and Y an ambient field along M."""
        gam = self.pulled_christoffel(g)
        X = self.push(a)
        m = self.chart.dim
        out = []
        for k in range(m):
            acc = self.derive(a, Y[k])
            for i in range(m):
                if X[i].is_zero():
                    continue
                for j in range(m):
                    if Y[j].is_zero() or gam[k][i][j].is_zero():
                        continue
                    acc = acc + gam[k][i][j] * X[i] * Y[j]
            out.append(acc)
        return tuple(out)


def induced_metric(emb: HypersurfaceEmbedding, g: MetricTensor) -> ExactMatrix:
    F = emb.tangent_frame
    n = emb.dim
    return ExactMatrix(emb.field, [[emb.ambient_inner(g, F[i], F[j]) for j in range(n)]
                                   for i in range(n)], n)


def radical_frame(gram: ExactMatrix) -> tuple[Vector, int]:
    """Radical section E (first nonzero coefficient normalized to 1) and the nullity."""
    rank, basis = exact_nullspace(gram)
    nullity = len(basis)
    if nullity == 0:
        raise NotLightlike("induced metric is nondegenerate; the hypersurface is not lightlike")
    if nullity > 1:
        raise NotHypersurfaceCase(f"radical has dimension {nullity}, expected 1")
    v = basis[0]
    lead = next(c for c in v if not c.is_zero())
    return tuple(c / lead for c in v), nullity


@dataclass
class LightlikeFrame:
    emb: HypersurfaceEmbedding
    metric: MetricTensor
    E: Vector                   # frame coefficients
    screen: list[Vector]        # frame coefficients
    N: Vector                   # ambient components
    screen_source: str = "default"
    E_amb: Vector = dc_field(init=False)

    def __post_init__(self):
        self.E_amb = self.emb.push(self.E)

    @property
    def field(self):
        return self.emb.field

    def g(self, X: Vector, Y: Vector) -> ScalarExpr:
        """Ambient metric on ambient fields along M."""
        return self.emb.ambient_inner(self.metric, X, Y)

    def gt(self, a: Vector, b: Vector) -> ScalarExpr:
        """Induced metric on frame coefficients."""
        return self.g(self.emb.push(a), self.emb.push(b))

    def theta(self, a: Vector) -> ScalarExpr:
        return self.g(self.emb.push(a), self.N)

    def project(self, a: Vector) -> Vector:
        """P: tangent field ↦ its screen part, X − θ(X)E."""
        return sub(a, scale(self.theta(a), self.E))

    def ltr_part(self, W: Vector) -> ScalarExpr:
        """Coefficient of N in the decomposition TM̃ = TM ⊕ ltr TM."""
        return self.g(W, self.E_amb)

    def tangential(self, W: Vector) -> Vector:
        """Tangential part of an ambient field, in frame coefficients."""
        return self.emb.to_frame(sub(W, scale(self.ltr_part(W), self.N)))

    @cached_property
    def screen_gram(self) -> ExactMatrix:
        return ExactMatrix(self.field, [[self.gt(a, b) for b in self.screen] for a in self.screen],
                           len(self.screen))

    def in_screen(self, W: Vector) -> Vector | None:
        """Screen coefficients of an ambient field, or None if it is not in S(TM)."""
        a = self.emb.try_to_frame(W)
        if a is None:
            return None
        cols = ExactMatrix.from_columns(self.field, self.screen)
        return cols.solve(a)


def _nondegenerate(frame_vectors, gt, field) -> bool:
    gram = ExactMatrix(field, [[gt(a, b) for b in frame_vectors] for a in frame_vectors],
                       len(frame_vectors))
    return not gram.det().is_zero()


def default_screen(emb: HypersurfaceEmbedding, g: MetricTensor, xi_frame: Vector | None = None):
    """Greedy screen: ξ first (when tangent), then frame vectors in declared order."""
    f = emb.field

    def gt(a, b):
        return emb.ambient_inner(g, emb.push(a), emb.push(b))

    candidates = ([xi_frame] if xi_frame is not None else []) + [emb.frame_basis(i) for i in range(emb.dim)]
    chosen: list[Vector] = []
    for c in candidates:
        if len(chosen) == emb.dim - 1:
            break
        if _nondegenerate(chosen + [c], gt, f):
            chosen.append(c)
    if len(chosen) != emb.dim - 1:
        raise DegenerateScreen("could not select a nondegenerate screen from the tangent frame")
    return chosen


def complete_lightlike_frame(emb: HypersurfaceEmbedding, g: MetricTensor, E: Vector,
                             screen: Sequence[Vector] | None = None,
                             xi_frame: Vector | None = None) -> LightlikeFrame:
    f = emb.field

    def gt(a, b):
        return emb.ambient_inner(g, emb.push(a), emb.push(b))

    if screen is None:
        screen = default_screen(emb, g, xi_frame)
        source = "default"
    else:
        screen = [tuple(f.const(c) for c in w) for w in screen]
        source = "user"
        if len(screen) != emb.dim - 1:
            raise DegenerateScreen(f"screen needs {emb.dim - 1} vectors, got {len(screen)}")
        if not _nondegenerate(screen, gt, f):
            raise DegenerateScreen("the supplied screen has a degenerate Gram matrix")
    E_amb = emb.push(E)
    gmat = emb.pulled_metric(g)
    rows = [gmat @ emb.push(w) for w in screen] + [gmat @ E_amb]
    rhs = [f.zero] * len(screen) + [f.one]
    N0 = ExactMatrix(f, rows, emb.chart.dim).solve(rhs)
    if N0 is None:
        raise NoTransversal("no ambient field pairs to 1 with the radical section")
    # shift along E (null and orthogonal to TM) to make N null
    c = emb.ambient_inner(g, N0, N0) / 2
    N = sub(N0, scale(c, E_amb))
    return LightlikeFrame(emb, g, tuple(E), list(screen), N, source)


class InducedGeometry:
    """Gauss-Weingarten objects for a fixed lightlike frame."""

    def __init__(self, frame: LightlikeFrame):
        self.frame = frame
        self.emb = frame.emb
        self.metric = frame.metric
        self.field = frame.field

    def nabla_tilde(self, a: Vector, b: Vector) -> Vector:
        return self.emb.nabla(a, self.emb.push(b), self.metric)

    def B(self, a: Vector, b: Vector) -> ScalarExpr:
        return self.frame.g(self.nabla_tilde(a, b), self.frame.E_amb)

    def nabla(self, a: Vector, b: Vector) -> Vector:
        """Induced connection ∇_X Y (frame coefficients)."""
        W = self.nabla_tilde(a, b)
        return self.emb.to_frame(sub(W, scale(self.frame.g(W, self.frame.E_amb), self.frame.N)))

    def nabla_N(self, a: Vector) -> Vector:
        return self.emb.nabla(a, self.frame.N, self.metric)

    def tau(self, a: Vector) -> ScalarExpr:
        return self.frame.g(self.nabla_N(a), self.frame.E_amb)

    def A_N(self, a: Vector) -> Vector:
        return self.A_transversal(a, self.frame.N)

    def A_transversal(self, a: Vector, V: Vector) -> Vector:
        """A_V X = −(tangential part of ∇̃_X V) for an ambient field V along M."""
        W = self.emb.nabla(a, V, self.metric)
        return scale(-1, self.frame.tangential(W))

    def A_star(self, a: Vector) -> Vector:
        return scale(-1, self.frame.project(self.nabla(a, self.frame.E)))

    def C(self, a: Vector, w: Vector) -> ScalarExpr:
        return self.frame.theta(self.nabla(a, w))

    # frame-indexed caches
    @cached_property
    def basis(self) -> list[Vector]:
        return [self.emb.frame_basis(i) for i in range(self.emb.dim)]

    @cached_property
    def B_matrix(self) -> ExactMatrix:
        n = self.emb.dim
        return ExactMatrix(self.field, [[self.B(self.basis[i], self.basis[j]) for j in range(n)]
                                        for i in range(n)], n)

    @cached_property
    def nabla_frame(self):
        return [[self.nabla(a, b) for b in self.basis] for a in self.basis]


def induced_geometry(frame: LightlikeFrame) -> InducedGeometry:
    return InducedGeometry(frame)


def verify_frame(frame: LightlikeFrame) -> AxiomReport:
    """Defining properties of the quasi-orthonormal frame {screen, E, N}."""
    emb, f = frame.emb, frame.field
    rep = AxiomReport("lightlike_frame")
    gram = induced_metric(emb, frame.metric)
    rep.add(identity_record("radical_orthogonality", "eq-null-2",
                            ((f"X=∂{u}", e) for u, e in zip(emb.parameters, gram @ frame.E))))
    rep.add(identity_record("transversal_null", "eq-null-5",
                            [("g(N,N)", frame.g(frame.N, frame.N)),
                             ("g(E,N)-1", frame.g(frame.E_amb, frame.N) - 1)]))
    rep.add(identity_record("transversal_screen_orthogonal", "eq-null-5",
                            ((f"W{k}", frame.g(frame.N, emb.push(w))) for k, w in enumerate(frame.screen))))
    rep.add(identity_record("screen_nondegenerate", "eq-null-4",
                            [("det(screen Gram)=0", f.one if frame.screen_gram.det().is_zero() else f.zero)]))
    rep.add(identity_record(
        "decomposition", "eq-null-9",
        ((f"X=∂{u},{k}", r) for u, a in zip(emb.parameters, (emb.frame_basis(i) for i in range(emb.dim)))
         for k, r in enumerate(sub(add(frame.project(a), scale(frame.theta(a), frame.E)), a)))))
    return rep


def verify_gw_identities(geo: InducedGeometry) -> AxiomReport:
    frame, emb = geo.frame, geo.emb
    rep = AxiomReport("gauss_weingarten")
    basis = geo.basis
    names = [f"∂{u}" for u in emb.parameters]
    n = emb.dim
    gram = induced_metric(emb, geo.metric)
    theta = [frame.theta(a) for a in basis]
    B = geo.B_matrix

    def nonmetricity():
        for i in range(n):
            for j in range(n):
                for k in range(j, n):
                    lhs = (emb.derive(basis[i], gram[j, k])
                           - frame.gt(geo.nabla_frame[i][j], basis[k])
                           - frame.gt(basis[j], geo.nabla_frame[i][k]))
                    rhs = B[i, j] * theta[k] + B[i, k] * theta[j]
                    yield f"X={names[i]},Y={names[j]},Z={names[k]}", lhs - rhs

    rep.add(identity_record("induced_nonmetricity", "eq-null-11", nonmetricity()))
    rep.add(identity_record("B_symmetric", "eq-null-7",
                            ((f"{names[i]},{names[j]}", B[i, j] - B[j, i])
                             for i in range(n) for j in range(i + 1, n))))

    def a_star_b():
        for i in range(n):
            Ai = geo.A_star(basis[i])
            for k, w in enumerate(frame.screen):
                yield f"X={names[i]},W{k}", frame.gt(Ai, w) - geo.B(basis[i], w)

    rep.add(identity_record("screen_shape_vs_B", "eq-null-14", a_star_b()))
    rep.add(identity_record("screen_shape_in_screen", "eq-null-14",
                            ((f"X={names[i]}", frame.theta(geo.A_star(basis[i]))) for i in range(n))))
    rep.add(identity_record("B_radical", "eq-null-14",
                            ((f"X={names[i]}", geo.B(basis[i], frame.E)) for i in range(n))))
    rep.add(identity_record("shape_operator_N", "eq-null-14",
                            ((f"X={names[i]}", frame.theta(geo.A_N(basis[i]))) for i in range(n))))
    rep.add(identity_record("screen_shape_radical", "eq-null-15",
                            ((f"comp{k}", c) for k, c in enumerate(geo.A_star(frame.E)))))

    def gauss():
        for i in range(n):
            for j in range(n):
                lhs = geo.nabla_tilde(basis[i], basis[j])
                rhs = add(emb.push(geo.nabla_frame[i][j]), scale(B[i, j], frame.N))
                for k, r in enumerate(sub(lhs, rhs)):
                    yield f"{names[i]},{names[j]},comp{k}", r

    rep.add(identity_record("gauss_formula", "eq-null-7", gauss()))

    def weingarten():
        for i in range(n):
            lhs = geo.nabla_N(basis[i])
            rhs = add(scale(-1, emb.push(geo.A_N(basis[i]))), scale(geo.tau(basis[i]), frame.N))
            for k, r in enumerate(sub(lhs, rhs)):
                yield f"X={names[i]},comp{k}", r

    rep.add(identity_record("weingarten_formula", "eq-null-8", weingarten()))

    def radical_derivative():
        for i in range(n):
            NE = geo.nabla(basis[i], frame.E)
            rhs = add(scale(-1, geo.A_star(basis[i])), scale(-geo.tau(basis[i]), frame.E))
            for k, r in enumerate(sub(NE, rhs)):
                yield f"X={names[i]},comp{k}", r

    rep.add(identity_record("radical_derivative", "eq-null-13", radical_derivative()))
    return rep


__all__ = [
    "DegenerateScreen",
    "HypersurfaceEmbedding",
    "HypersurfaceError",
    "InducedGeometry",
    "LightlikeFrame",
    "NoTransversal",
    "NotHypersurfaceCase",
    "NotLightlike",
    "NotTangent",
    "complete_lightlike_frame",
    "default_screen",
    "induced_geometry",
    "induced_metric",
    "radical_frame",
    "verify_frame",
    "verify_gw_identities",
    "is_zero_vector",
]
