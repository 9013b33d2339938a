"""(ε)-almost paracontact metric structures and the para-Sasakian tests."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .checks import AxiomReport, CheckRecord, Status, gated_record, identity_record
from .exact_field import ExactMatrix, FieldError, ScalarExpr, dot
from .tensor_calc import Chart, MetricTensor, Tensor11, Vector, add, scale, sub

AP = "almost_paracontact"
PS = "para_sasakian"


class StructureError(FieldError):
    pass


class AmbientStructure:
    """(φ, ξ, η, g̃, ε) on a chart.

    With ``checked=True`` the constructor raises :class:`StructureError` unless
    every almost-paracontact axiom holds.
    """

    def __init__(self, metric: MetricTensor, phi: Tensor11, xi: Sequence[ScalarExpr],
                 eta: Sequence[ScalarExpr], epsilon: int, checked: bool = False):
        chart = metric.chart
        if phi.chart is not chart:
            raise StructureError("φ and g̃ live on different charts")
        if len(xi) != chart.dim or len(eta) != chart.dim:
            raise StructureError("ξ and η need one component per coordinate")
        if epsilon not in (1, -1):
            raise StructureError("ε must be +1 or -1")
        self.metric = metric
        self.phi = phi
        self.xi = chart.vector(xi)
        self.eta = chart.vector(eta)
        self.epsilon = epsilon
        if checked:
            rep = verify_almost_paracontact(self)
            if not rep.passed:
                bad = ", ".join(r.paper_tag for r in rep.failures())
                raise StructureError(f"almost paracontact axioms fail: {bad}")

    @property
    def chart(self) -> Chart:
        return self.metric.chart

    @property
    def field(self):
        return self.metric.field

    @property
    def spacelike(self) -> bool:
        return self.epsilon == 1

    def g(self, X: Vector, Y: Vector) -> ScalarExpr:
        return self.metric(X, Y)

    def eta_of(self, X: Vector) -> ScalarExpr:
        return dot(self.eta, X, self.field)

    def Phi(self, X: Vector, Y: Vector) -> ScalarExpr:
        return self.g(X, self.phi(Y))

    def nabla(self, X: Vector, Y: Vector) -> Vector:
        return self.metric.covariant_derivative(X, Y)

    def nabla_phi(self, X: Vector, Y: Vector) -> Vector:
        """(∇̃_X φ)Y = ∇̃_X(φY) − φ(∇̃_X Y)."""
        return sub(self.nabla(X, self.phi(Y)), self.phi(self.nabla(X, Y)))

    def para_sasakian_rhs(self, X: Vector, Y: Vector) -> Vector:
        eps = self.epsilon
        return sub(scale(-self.g(self.phi(X), self.phi(Y)), self.xi),
                   scale(eps * self.eta_of(Y), self.phi(self.phi(X))))

    @cached_property
    def basis(self) -> list[Vector]:
        return [self.chart.basis(i) for i in range(self.chart.dim)]

    def xi_derivative_covectors(self, i: int) -> tuple[Vector, Vector]:
        """(g̃(∇̃_{∂i}ξ, ·), ε g̃(φ∂i, ·)); equal on a para-Sasakian manifold."""
        e = self.basis[i]
        return (self.metric.lower(self.nabla(e, self.xi)),
                scale(self.epsilon, self.metric.lower(self.phi(e))))


def _names(s: AmbientStructure):
    return [f"∂{c}" for c in s.chart.coordinates]


def verify_almost_paracontact(s: AmbientStructure,
                              base_point: Mapping[str, Fraction] | None = None) -> AxiomReport:
    m, f, eps = s.chart.dim, s.field, s.epsilon
    B, names = s.basis, _names(s)
    rep = AxiomReport("almost_paracontact")

    def phi_sq():
        for j in range(m):
            r = sub(s.phi(s.phi(B[j])), sub(B[j], scale(s.eta[j], s.xi)))
            for k in range(m):
                yield f"X={names[j]},comp {names[k]}", r[k]

    rep.add(identity_record("phi_squared", "eq-phi-eta-xi", phi_sq()))
    rep.add(identity_record("eta_xi", "eq-eta-xi", [("η(ξ)-1", s.eta_of(s.xi) - 1)]))
    rep.add(identity_record("phi_xi", "eq-phi-xi",
                            ((f"comp {names[k]}", c) for k, c in enumerate(s.phi(s.xi)))))
    rep.add(identity_record("eta_phi", "eq-eta-phi",
                            ((f"X={names[j]}", s.eta_of(s.phi(B[j]))) for j in range(m))))

    def metric_1():
        for i in range(m):
            for j in range(i, m):
                yield (f"X={names[i]},Y={names[j]}",
                       s.g(s.phi(B[i]), s.phi(B[j])) - s.metric.matrix[i, j] + eps * s.eta[i] * s.eta[j])

    rep.add(identity_record("metric_compatibility", "eq-metric-1", metric_1()))
    rep.add(identity_record("phi_symmetric", "eq-metric-2",
                            ((f"X={names[i]},Y={names[j]}", s.Phi(B[i], B[j]) - s.Phi(B[j], B[i]))
                             for i in range(m) for j in range(i + 1, m))))
    rep.add(identity_record("metric_xi", "eq-metric-3",
                            ((f"X={names[i]}", s.g(B[i], s.xi) - eps * s.eta[i]) for i in range(m))))
    rep.add(identity_record("xi_norm", "eq-g(xi,xi)", [("g(ξ,ξ)-ε", s.g(s.xi, s.xi) - eps)]))
    rep.add(identity_record("Phi_xi", "para6",
                            ((f"X={names[i]}", s.Phi(B[i], s.xi)) for i in range(m))))
    rep.info["epsilon"] = eps
    rep.info["spacelike"] = s.spacelike
    if base_point is not None:
        rep.info["index"] = s.metric.index(base_point)
    return rep


def _probe_multiplier(s: AmbientStructure) -> ScalarExpr:
    c = s.chart.coordinates
    f = s.field
    return 1 + f.symbol(c[0]) ** 2 + f.symbol(c[1])


def verify_para_sasakian(s: AmbientStructure, ap_report: AxiomReport | None = None) -> AxiomReport:
    rep = AxiomReport("para_sasakian")
    ap_report = ap_report or verify_almost_paracontact(s)
    names = ["para_sasakian", "xi_derivative", "eta_derivative", "para_sasakian_tensoriality"]
    tags = ["para2", "para3", "para4", "para2"]
    if not ap_report.passed:
        for n, t in zip(names, tags):
            rep.add(gated_record(n, t, (AP,), Status.HYPOTHESIS_NOT_SATISFIED))
        return rep
    m, B, labels = s.chart.dim, s.basis, _names(s)

    def para2():
        for i in range(m):
            for j in range(m):
                r = sub(s.nabla_phi(B[i], B[j]), s.para_sasakian_rhs(B[i], B[j]))
                for k in range(m):
                    yield f"X={labels[i]},Y={labels[j]},comp {labels[k]}", r[k]

    rep.add(identity_record("para_sasakian", "para2", para2(), (AP,)))

    def para3():
        for i in range(m):
            lhs, rhs = s.xi_derivative_covectors(i)
            for k in range(m):
                yield f"X={labels[i]},covector comp d{s.chart.coordinates[k]}", lhs[k] - rhs[k]

    rec = rep.add(identity_record("xi_derivative", "para3", para3(), (AP,)))
    if not rec.passed:
        rec.value = "; ".join(_covector_mismatches(s))

    def para4():
        for i in range(m):
            dn = s.metric.covariant_derivative_form(B[i], s.eta)
            for j in range(m):
                yield f"X={labels[i]},Y={labels[j]}", dn[j] - s.g(s.phi(B[i]), B[j])

    rep.add(identity_record("eta_derivative", "para4", para4(), (AP,)))

    # the residual of para2 must be C^∞-linear in both slots for a frame check to be complete
    h = _probe_multiplier(s)

    def probe():
        X, Y = B[0], B[1 % m]
        base = sub(s.nabla_phi(X, Y), s.para_sasakian_rhs(X, Y))
        for hx, hy in ((h, 1), (1, h)):
            Xp, Yp = scale(hx, X), scale(hy, Y)
            r = sub(s.nabla_phi(Xp, Yp), s.para_sasakian_rhs(Xp, Yp))
            for k in range(m):
                yield f"probe comp {labels[k]}", r[k] - h * base[k]

    rep.add(identity_record("para_sasakian_tensoriality", "para2", probe(), (AP,)))
    return rep


def _covector_text(s: AmbientStructure, w: Vector) -> str:
    terms = []
    for c, a in zip(s.chart.coordinates, w):
        if a.is_zero():
            continue
        coeff = str(a)
        if a.is_constant():
            coeff = {"1": "", "-1": "-"}.get(coeff, coeff)
        else:
            coeff = f"({coeff})"
        terms.append(f"{coeff}d{c}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def _covector_mismatches(s: AmbientStructure) -> list[str]:
    """Frame directions where g̃(∇̃_Xξ, ·) and εg̃(φX, ·) differ, rendered as covectors."""
    out = []
    for i, c in enumerate(s.chart.coordinates):
        lhs, rhs = s.xi_derivative_covectors(i)
        if lhs != rhs:
            out.append(f"X=∂{c}: {_covector_text(s, lhs)} vs {_covector_text(s, rhs)}")
    return out


def is_para_sasakian(ps_report: AxiomReport) -> bool:
    return "para_sasakian" in ps_report and ps_report["para_sasakian"].passed


def verify_curvature_identities(s: AmbientStructure, ps_report: AxiomReport | None = None) -> AxiomReport:
    rep = AxiomReport("curvature")
    ps_report = ps_report or verify_para_sasakian(s)
    entries = [("curvature_xi", "para7"), ("curvature_four_xi", "para8"),
               ("eta_curvature", "para9"), ("curvature_xi_first", "para10"),
               ("ricci_xi", "para11")]
    if not is_para_sasakian(ps_report):
        for n, t in entries:
            rep.add(gated_record(n, t, (PS,), Status.HYPOTHESIS_NOT_SATISFIED))
        return rep
    m, B, labels, eps = s.chart.dim, s.basis, _names(s), s.epsilon
    R = s.metric.curvature
    g = s.metric.matrix

    def para7():
        for i in range(m):
            for j in range(i + 1, m):
                r = sub(R.apply(B[i], B[j], s.xi), sub(scale(s.eta[i], B[j]), scale(s.eta[j], B[i])))
                for k in range(m):
                    yield f"X={labels[i]},Y={labels[j]},comp {labels[k]}", r[k]

    def para8():
        for i in range(m):
            for j in range(i + 1, m):
                for k in range(m):
                    lhs = s.g(R.apply(B[i], B[j], B[k]), s.xi)
                    yield (f"X={labels[i]},Y={labels[j]},Z={labels[k]}",
                           lhs + s.eta[i] * g[j, k] - s.eta[j] * g[i, k])

    def para9():
        for i in range(m):
            for j in range(i + 1, m):
                for k in range(m):
                    lhs = s.eta_of(R.apply(B[i], B[j], B[k]))
                    yield (f"X={labels[i]},Y={labels[j]},Z={labels[k]}",
                           lhs + eps * s.eta[i] * g[j, k] - eps * s.eta[j] * g[i, k])

    def para10():
        for i in range(m):
            for j in range(m):
                r = add(R.apply(s.xi, B[i], B[j]), scale(eps * g[i, j], s.xi), scale(-s.eta[j], B[i]))
                for k in range(m):
                    yield f"X={labels[i]},Y={labels[j]},comp {labels[k]}", r[k]

    def para11():
        for j in range(m):
            yield f"Y={labels[j]}", R.ricci_form(B[j], s.xi) + (m - 1) * s.eta[j]

    for (n, t), gen in zip(entries, (para7(), para8(), para9(), para10(), para11())):
        rep.add(identity_record(n, t, gen, (PS,)))
    rep.info["ricci_constant"] = -(m - 1)
    return rep


def structure_from_matrices(chart: Chart, g_rows, phi_images, xi, eta, epsilon: int,
                            checked: bool = False) -> AmbientStructure:
    """Build a structure from row lists; ``phi_images[j]`` is φ(∂j)."""
    f = chart.field
    metric = MetricTensor(chart, ExactMatrix(f, g_rows, chart.dim))
    phi = Tensor11(chart, ExactMatrix.from_columns(f, [chart.vector(c) for c in phi_images]))
    return AmbientStructure(metric, phi, xi, eta, epsilon, checked=checked)
