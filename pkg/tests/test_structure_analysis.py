import pytest

from paralight.checks import Status
from paralight.lightlike_hyp import complete_lightlike_frame, induced_geometry
from paralight.paracontact import AP, PS
from paralight.structure_analysis import (
    INV,
    INVARIANT,
    SCREEN_SEMI_INVARIANT,
    SSI,
    HypersurfaceContext,
    PreconditionError,
    check_integrability,
    classification_report,
    classify_hypersurface,
    frobenius,
    phi_decompose,
    satisfied_hypotheses,
    screen_is_phi_invariant,
    screen_splitting,
    verify_induced_structure,
    verify_ps_hypersurface_identities,
)
from paralight.tensor_calc import add, scale, sub

from conftest import config_for, geometry_for

ALL = ("fixture_a", "fixture_b", "fixture_c", "fixture_d", "fixture_e")


def vec(f, *comps):
    return tuple(f.parse(c) for c in comps)


def context(name):
    s, frame, geo, ts = geometry_for(name)
    return HypersurfaceContext(ts, geo, s)


@pytest.mark.parametrize("name,tag", [("fixture_a", INVARIANT), ("fixture_b", SCREEN_SEMI_INVARIANT),
                                      ("fixture_c", INVARIANT), ("fixture_d", INVARIANT),
                                      ("fixture_e", SCREEN_SEMI_INVARIANT)])
def test_classification(name, tag):
    _, _, _, ts = geometry_for(name)
    assert ts.classification == tag
    assert screen_is_phi_invariant(ts) == (tag == INVARIANT)


@pytest.mark.parametrize("name", ALL)
def test_reassembly_and_u(name):
    _, _, _, ts = geometry_for(name)
    rep = classification_report(ts)
    assert rep.passed, [r.name for r in rep.failures()]


def test_fixture_a_invariant_data():
    _, frame, _, ts = geometry_for("fixture_a")
    assert all(c.is_zero() for c in ts.u)
    assert ts.phi_E == scale(-1, frame.E_amb)
    assert ts.phi_N == scale(-1, frame.N)


def test_fixture_b_splitting_vectors():
    _, frame, _, ts = geometry_for("fixture_b")
    f, emb = frame.field, frame.emb
    assert emb.push(ts.V) == vec(f, "-1", "-1", "0", "0", "2*z")
    assert emb.push(ts.U) == vec(f, "2", "-2", "0", "0", "0")
    assert ts.eta_of(ts.U).is_zero()
    assert ts.u_of(ts.U) == f.one
    assert ts.u_of(frame.E).is_zero()


def test_splitting_needs_semi_invariant():
    _, _, _, ts = geometry_for("fixture_c")
    with pytest.raises(PreconditionError):
        screen_splitting(ts)


def test_classification_survives_rescaled_radical():
    s, frame, _, _ = geometry_for("fixture_b")
    E2 = scale(2, frame.E)
    fr = complete_lightlike_frame(frame.emb, s.metric, E2, frame.screen)
    assert fr.N == scale(frame.field.const(1) / 2, frame.N)
    assert classify_hypersurface(fr, s) == SCREEN_SEMI_INVARIANT


@pytest.mark.parametrize("name", ["fixture_b", "fixture_e"])
def test_semi_invariant_induced_structure(name):
    s, _, _, ts = geometry_for(name)
    rep = verify_induced_structure(ts, s.epsilon)
    si = [r for r in rep.records if SSI in r.hypotheses]
    assert len(si) == 8 and all(r.passed for r in si)
    assert all(r.status is Status.HYPOTHESIS_NOT_SATISFIED for r in rep.records if INV in r.hypotheses)


def test_invariant_induced_structure():
    s, _, _, ts = geometry_for("fixture_d")
    rep = verify_induced_structure(ts, s.epsilon)
    assert all(r.passed for r in rep.records if INV in r.hypotheses)


def test_fixture_c_catalogue():
    ctx = context("fixture_c")
    rep = verify_ps_hypersurface_identities(ctx, satisfied_hypotheses(True, True, INVARIANT))
    for name in ("phi_nabla_xi", "B_X_xi", "invariant_B", "phi_A_N", "induced_para_sasakian"):
        assert rep[name].passed, name
    assert rep["nabla_U"].status is Status.HYPOTHESIS_NOT_SATISFIED


def test_catalogue_gated_without_para_sasakian():
    ctx = context("fixture_a")
    rep = verify_ps_hypersurface_identities(ctx, satisfied_hypotheses(True, False, INVARIANT))
    assert all(r.status is Status.HYPOTHESIS_NOT_SATISFIED for r in rep.records)


def test_nabla_U_residual_is_theta_xi():
    # the catalogued ∇U formula misses −θ(X)ξ, which comes from (∇̃_Xφ)N = −θ(X)ξ
    ctx = context("fixture_e")
    ts, geo, frame = ctx.ts, ctx.geo, ctx.frame
    nonzero = 0
    for X in ctx.basis:
        catalogued = add(scale(-1, ts.varphi(geo.A_N(X))), scale(geo.tau(X), ts.U))
        residual = sub(geo.nabla(X, ts.U), catalogued)
        assert residual == scale(-frame.theta(X), ts.xi)
        nonzero += not frame.theta(X).is_zero()
    assert nonzero
    rep = verify_ps_hypersurface_identities(ctx, satisfied_hypotheses(True, True, SCREEN_SEMI_INVARIANT))
    assert rep["nabla_U"].status is Status.FAIL
    assert rep["nabla_U_theta"].passed
    for name in ("nabla_phi_first", "nabla_phi_second", "nabla_u", "B_X_U", "lie_V_g"):
        assert rep[name].passed, name


def test_integrability_semi_invariant():
    rep = check_integrability(context("fixture_e"), satisfied_hypotheses(True, True, SCREEN_SEMI_INVARIANT))
    assert rep["D_xi_condition"].value == "holds"
    assert rep["D_xi_frobenius"].value == "integrable"
    assert rep["D_xi_equivalence"].passed and rep["D_prime_xi_equivalence"].passed


def test_integrability_equivalence_gated():
    rep = check_integrability(context("fixture_a"), satisfied_hypotheses(True, False, INVARIANT))
    assert rep["tangent_equivalence"].status is Status.HYPOTHESIS_NOT_SATISFIED
    assert rep["tangent_frobenius"].value == "integrable"


def test_frobenius_detects_non_involutive_pair():
    _, frame, _, _ = geometry_for("fixture_a")
    emb, f = frame.emb, frame.field
    a = vec(f, "1", "0", "0", "0")
    b = vec(f, "0", "1", "x", "0")
    assert frobenius(emb, [a, b]) == (False, "[F0,F1]")
    assert frobenius(emb, [a, vec(f, "0", "1", "0", "0")]) == (True, None)


def test_hypotheses_table():
    hyp = satisfied_hypotheses(True, False, SCREEN_SEMI_INVARIANT)
    assert hyp == {AP: True, PS: False, INV: False, SSI: True}
