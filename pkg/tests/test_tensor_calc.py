import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from paralight.exact_field import ExactMatrix, ExpGenerator, FieldError, ScalarField
from paralight.lightlike_hyp import HypersurfaceEmbedding
from paralight.numeric import christoffel_fd, entrywise, riemann_fd, sample_points
from paralight.numeric import _values
from paralight.tensor_calc import (
    Chart,
    MetricTensor,
    Tensor11,
    covariant_derivative_along_map,
    lie_bracket,
)

from conftest import config_for

PROPERTY = settings(max_examples=200, deadline=None, derandomize=True,
                    suppress_health_check=[HealthCheck.too_slow])


def metric(field, coords, rows):
    chart = Chart(field, coords)
    return MetricTensor(chart, ExactMatrix(field, [[field.parse(str(e)) for e in r] for r in rows]))


def warped_plane():
    f = ScalarField(["x", "z"], [ExpGenerator("E2", "z", 2)])
    return f, metric(f, ["x", "z"], [["E2", 0], [0, 1]])


def test_constant_metric_is_flat():
    f = ScalarField(["x", "y"])
    g = metric(f, ["x", "y"], [[-1, 0], [0, 1]])
    assert all(c.is_zero() for plane in g.christoffel for row in plane for c in row)
    assert g.index({"x": 0, "y": 0}) == 1


def test_warped_plane_christoffel():
    f, g = warped_plane()
    gam = g.christoffel
    assert gam[0][0][1] == f.one and gam[0][1][0] == f.one
    assert gam[1][0][0] == -f.parse("E2")
    assert gam[1][1][1].is_zero()


def test_fixture_c_curvature():
    s = config_for("fixture_c").structure
    f, chart = s.field, s.chart
    dx, dz = chart.basis(0), chart.basis(2)
    R = s.metric.curvature
    assert R.apply(dx, dz, dz) == tuple(-c for c in dx)
    assert R.ricci_form(s.xi, s.xi) == -2 * f.one


def test_curvature_symmetries_on_fixture_a():
    R = config_for("fixture_a").structure.metric.curvature
    assert all(r.is_zero() for _, r in R.antisymmetry_residuals())
    assert all(r.is_zero() for _, r in R.bianchi_residuals())


def test_lie_bracket():
    f = ScalarField(["x", "y"])
    chart = Chart(f, ["x", "y"])
    X = (f.zero, f.symbol("x"))
    assert lie_bracket(chart, X, chart.basis(0)) == (f.zero, -f.one)


def test_index_of_fixtures():
    assert config_for("fixture_b").structure.metric.index({k: 0 for k in "xyzts"}) == 2
    assert config_for("fixture_c").structure.metric.index({"x": 0, "y": 0, "z": 0}) == 1


def test_degenerate_metric_rejected():
    f = ScalarField(["x", "y"])
    with pytest.raises(FieldError):
        metric(f, ["x", "y"], [[1, 1], [1, 1]])


def test_along_map_fixture_c():
    cfg = config_for("fixture_c")
    s, h = cfg.structure, cfg.hypersurface
    f = s.field
    emb = HypersurfaceEmbedding(cfg.chart, h.parameters, h.mapping)
    E2 = f.parse("E2")
    # f*∂x = ∂x+∂y along y = x
    assert covariant_derivative_along_map(emb, s.metric, 0, 0) == (f.zero, f.zero, f.zero)
    assert s.metric.covariant_derivative((f.one, f.one, f.zero), (f.one, -f.one, f.zero)) == (
        f.zero, f.zero, -2 * E2)
    E = (f.one, f.one, f.zero)
    assert covariant_derivative_along_map(emb, s.metric, 1, 0) == E
    assert emb.nabla(emb.frame_basis(1), E, s.metric) == E


def test_tensor11_squared():
    s = config_for("fixture_c").structure
    sq = s.phi.squared()
    x = s.chart.basis(0)
    assert sq(x) == s.phi(s.phi(x))


# -- property suites ------------------------------------------------------

_BASES = ("fixture_a", "fixture_b", "fixture_c")


@st.composite
def perturbed_metrics(draw):
    name = draw(st.sampled_from(_BASES))
    s = config_for(name).structure
    f, chart = s.field, s.chart
    m = chart.dim
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    rows = [list(r) for r in s.metric.matrix.rows]
    i, j = draw(st.integers(0, m - 1)), draw(st.integers(0, m - 1))
    p = f.random_polynomial(rng, [chart.coordinates[draw(st.integers(0, m - 1))]], terms=2, max_degree=2)
    rows[i][j] = rows[i][j] + p
    if i != j:
        rows[j][i] = rows[j][i] + p
    try:
        return MetricTensor(chart, ExactMatrix(f, rows))
    except FieldError:
        return s.metric


@pytest.mark.criterion(6)
@PROPERTY
@given(perturbed_metrics())
def test_christoffel_metric_compatible_and_torsion_free(g):
    chart, gam, m = g.chart, g.christoffel, g.chart.dim
    G = g.matrix
    for k in range(m):
        for i in range(m):
            for j in range(m):
                assert gam[k][i][j] == gam[k][j][i]
                nabla_g = G[i, j].diff(chart.coordinates[k])
                for l in range(m):
                    nabla_g = nabla_g - gam[l][k][i] * G[l, j] - gam[l][k][j] * G[i, l]
                assert nabla_g.is_zero()


def _rel_err(num, exact):
    scale = max(float(np.max(np.abs(exact))), 1.0)
    return float(np.max(np.abs(num - exact) / np.maximum(np.abs(exact), scale)))


_FD = ("fixture_a", "fixture_b", "fixture_c", "fixture_d")


@pytest.mark.criterion(6)
@PROPERTY
@given(st.sampled_from(_FD), st.integers(0, 10 ** 6))
def test_finite_difference_agreement(name, seed):
    g = config_for(name).structure.metric
    f, coords = g.field, g.chart.coordinates
    (x,) = sample_points(g, 1, seed)
    vals = _values(f, coords, x)
    g_fn = entrywise([list(r) for r in g.matrix.rows], f, coords)
    exact_gam = entrywise(g.christoffel, f, coords)(x)
    exact_R = np.vectorize(lambda e: e.evaluate_numeric(vals), otypes=[float])(
        np.array(g.curvature.components, dtype=object))
    assert _rel_err(christoffel_fd(g_fn, x), exact_gam) <= 1e-6
    assert _rel_err(riemann_fd(g_fn, x), exact_R) <= 1e-6


def test_exact_index_is_rational():
    f, g = warped_plane()
    assert g.index({"x": Fraction(1, 3), "z": Fraction(1, 2)}) == 0
