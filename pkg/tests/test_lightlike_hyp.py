import pytest

from paralight.lightlike_hyp import (
    DegenerateScreen,
    HypersurfaceEmbedding,
    HypersurfaceError,
    NotLightlike,
    complete_lightlike_frame,
    default_screen,
    induced_geometry,
    induced_metric,
    radical_frame,
    verify_frame,
    verify_gw_identities,
)

from conftest import config_for, geometry_for


def embedding(name):
    cfg = config_for(name)
    h = cfg.hypersurface
    return cfg, HypersurfaceEmbedding(cfg.chart, h.parameters, h.mapping)


def vec(f, *comps):
    return tuple(f.parse(c) for c in comps)


def test_fixture_a_gram_and_radical():
    cfg, emb = embedding("fixture_a")
    f = cfg.field
    gram = induced_metric(emb, cfg.structure.metric)
    expected = [["-1", "0", "0", "-y"], ["0", "0", "0", "0"], ["0", "0", "1", "-y"], ["-y", "0", "-y", "1"]]
    assert [list(r) for r in gram.rows] == [list(vec(f, *r)) for r in expected]
    E, nullity = radical_frame(gram)
    assert nullity == 1
    assert E == vec(f, "0", "1", "0", "0")
    assert emb.push(E) == vec(f, "0", "1", "0", "1", "0")


def test_fixture_c_gram():
    cfg, emb = embedding("fixture_c")
    f = cfg.field
    gram = induced_metric(emb, cfg.structure.metric)
    assert [list(r) for r in gram.rows] == [[f.zero, f.zero], [f.zero, f.one]]
    assert radical_frame(gram) == (vec(f, "1", "0"), 1)


def test_flat_hyperplane_is_not_lightlike():
    cfg, emb = embedding("flat_hyperplane")
    with pytest.raises(NotLightlike):
        radical_frame(induced_metric(emb, cfg.structure.metric))


def test_transversal_sections():
    for name, comps in [("fixture_a", ("0", "-1/2", "0", "1/2", "0")),
                        ("fixture_b", ("0", "0", "-2", "2", "0")),
                        ("fixture_c", ("1/(2*E2)", "-1/(2*E2)", "0"))]:
        _, frame, _, _ = geometry_for(name)
        assert frame.N == vec(frame.field, *comps), name


def test_frame_axioms_hold():
    for name in ("fixture_a", "fixture_b", "fixture_c", "fixture_e"):
        _, frame, _, _ = geometry_for(name)
        rep = verify_frame(frame)
        assert rep.passed, (name, [r.name for r in rep.failures()])


def test_default_screen_puts_xi_first():
    cfg, emb = embedding("fixture_a")
    s = cfg.structure
    xi = emb.to_frame(emb.pullback_vector(s.xi))
    screen = default_screen(emb, s.metric, xi)
    f = cfg.field
    assert [emb.push(w) for w in screen] == [vec(f, "0", "0", "0", "0", "1"),
                                             vec(f, "1", "0", "0", "0", "0"),
                                             vec(f, "0", "0", "1", "0", "0")]


def test_transversal_is_deterministic_and_screen_dependent():
    cfg, emb = embedding("fixture_c")
    g = cfg.structure.metric
    E, _ = radical_frame(induced_metric(emb, g))
    f = cfg.field
    a = complete_lightlike_frame(emb, g, E)
    b = complete_lightlike_frame(emb, g, E)
    assert a.N == b.N
    tilted = complete_lightlike_frame(emb, g, E, [vec(f, "1", "1")])
    assert tilted.N != a.N
    assert verify_frame(tilted).passed


def test_degenerate_screen_rejected():
    cfg, emb = embedding("fixture_c")
    g = cfg.structure.metric
    E, _ = radical_frame(induced_metric(emb, g))
    with pytest.raises(DegenerateScreen):
        complete_lightlike_frame(emb, g, E, [E])


def test_generator_base_must_be_a_fixed_parameter():
    cfg = config_for("fixture_c")
    f = cfg.field
    with pytest.raises(HypersurfaceError):
        HypersurfaceEmbedding(cfg.chart, ["x", "y"], [f.symbol("x"), f.symbol("y"), f.symbol("x")])


def test_fixture_c_shape_data():
    _, frame, geo, ts = geometry_for("fixture_c")
    f = frame.field
    assert geo.tau(ts.xi) == -f.one
    assert geo.tau(frame.E).is_zero()
    assert all(c.is_zero() for c in geo.A_N(ts.xi))
    assert geo.A_N(frame.E) == ts.xi


def test_gauss_weingarten_identities():
    for name in ("fixture_a", "fixture_b", "fixture_c"):
        _, _, geo, _ = geometry_for(name)
        rep = verify_gw_identities(geo)
        assert rep.passed, (name, [r.name for r in rep.failures()])
        assert {"gauss_formula", "weingarten_formula", "B_radical"} <= {r.name for r in rep.records}


def test_second_fundamental_form_fixture_a():
    _, frame, geo, _ = geometry_for("fixture_a")
    B = geo.B_matrix
    assert B.is_symmetric()
    assert all(c.is_zero() for c in B @ frame.E)
    assert induced_geometry(frame).B_matrix == B
