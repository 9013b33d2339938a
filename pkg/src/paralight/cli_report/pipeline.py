"""Verification pipeline: ambient axioms through integrability, in dependency order."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from ..checks import AxiomReport, CheckRecord, Status
from ..exact_field import FieldError
from ..lightlike_hyp import (
    HypersurfaceEmbedding,
    HypersurfaceError,
    LightlikeFrame,
    complete_lightlike_frame,
    induced_geometry,
    induced_metric,
    radical_frame,
    verify_frame,
    verify_gw_identities,
)
from ..numeric import compare_christoffel, compare_riemann, para_sasakian_residual, sample_points
from ..paracontact import (
    AP,
    PS,
    is_para_sasakian,
    verify_almost_paracontact,
    verify_curvature_identities,
    verify_para_sasakian,
)
from ..structure_analysis import (
    INV,
    SCREEN_SEMI_INVARIANT,
    SSI,
    HypersurfaceContext,
    check_integrability,
    classification_report,
    classify_hypersurface,
    phi_decompose,
    satisfied_hypotheses,
    screen_splitting,
    splitting_report,
    verify_ap_hypersurface_identities,
    verify_induced_structure,
    verify_ps_hypersurface_identities,
)
from .config import VerificationConfig

HYPERSURFACE = "hypersurface"


@dataclass
class VerificationReport:
    config_digest: str
    records: list[CheckRecord] = field(default_factory=list)
    classification: str | None = None
    screen_frame: list[list[str]] | None = None
    info: dict[str, object] = field(default_factory=dict)

    def summary(self) -> dict[str, int]:
        counts = {"pass": 0, "fail": 0, "hypothesis_not_satisfied": 0, "skipped": 0}
        for r in self.records:
            counts[r.status.value.replace("-", "_")] += 1
        return counts

    @property
    def exit_status(self) -> int:
        return 1 if any(r.status is Status.FAIL for r in self.records) else 0

    def __getitem__(self, name: str) -> CheckRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(r.name == name for r in self.records)


class _Runner:
    def __init__(self, cfg: VerificationConfig, timing: bool):
        self.cfg = cfg
        self.timing = timing
        self.report = VerificationReport(cfg.digest)

    def stage(self, name: str, fn: Callable[[], AxiomReport]) -> AxiomReport:
        t0 = time.perf_counter()
        rep = fn()
        if name in self.cfg.checks:
            elapsed = (time.perf_counter() - t0) * 1000.0
            share = elapsed / max(len(rep.records), 1)
            for r in rep.records:
                r.millis = round(share, 3) if self.timing else None
                self.report.records.append(r)
        return rep

    def skip(self, name: str, entries: list[tuple[str, str, tuple[str, ...]]]):
        if name in self.cfg.checks:
            for n, t, h in entries:
                self.report.records.append(CheckRecord(n, t, Status.SKIPPED, hypotheses=h))


# stage → record skeletons emitted when a prerequisite failed
_HYPERSURFACE_SKIPS = {
    "gauss_weingarten": [("gauss_weingarten", "eq-null-7", (HYPERSURFACE,))],
    "classification": [("classification", "th-llh-inv-char", (HYPERSURFACE,))],
    "identities": [("hypersurface_identities", "eq-llh-1", (HYPERSURFACE,))],
    "integrability": [("integrability", "th-SI-D-xi-int", (HYPERSURFACE,))],
}


def _screen_strings(frame: LightlikeFrame) -> list[list[str]]:
    return [[str(c) for c in frame.emb.push(w)] for w in frame.screen]


def _build_frame(cfg: VerificationConfig) -> tuple[AxiomReport, LightlikeFrame | None]:
    """Embedding, radical, ξ-tangency and transversal; failures become fail records."""
    s, h = cfg.structure, cfg.hypersurface
    rep = AxiomReport(HYPERSURFACE)
    try:
        emb = HypersurfaceEmbedding(cfg.chart, h.parameters, h.mapping)
        gram = induced_metric(emb, s.metric)
        E, nullity = radical_frame(gram)
    except HypersurfaceError as exc:
        rep.add(CheckRecord("hypersurface_lightlike", "eq-null-3", Status.FAIL,
                            value=f"{type(exc).__name__}: {exc}"))
        return rep, None
    rep.add(CheckRecord("hypersurface_lightlike", "eq-null-3", Status.PASS, value=f"nullity {nullity}"))
    xi_t = emb.try_to_frame(emb.pullback_vector(s.xi))
    if xi_t is None:
        rep.add(CheckRecord("xi_tangent", "sect-main-results", Status.FAIL,
                            value="ξ is not tangent to the hypersurface"))
        return rep, None
    rep.add(CheckRecord("xi_tangent", "sect-main-results", Status.PASS))
    try:
        screen = None
        if h.screen is not None:
            screen = []
            for k, w in enumerate(h.screen):
                a = emb.try_to_frame(emb.pullback_vector(w))
                if a is None:
                    raise HypersurfaceError(f"screen vector {k} is not tangent to the hypersurface")
                screen.append(a)
        frame = complete_lightlike_frame(emb, s.metric, E, screen, xi_t)
    except (HypersurfaceError, FieldError) as exc:
        rep.add(CheckRecord("lightlike_frame", "eq-null-5", Status.FAIL,
                            value=f"{type(exc).__name__}: {exc}"))
        return rep, None
    rep.extend(verify_frame(frame))
    return rep, frame


def run_verification(cfg: VerificationConfig, timing: bool = False) -> VerificationReport:
    run = _Runner(cfg, timing)
    s = cfg.structure
    report = run.report

    ap = run.stage("axioms", lambda: verify_almost_paracontact(s, cfg.base_point))
    report.info["index"] = ap.info.get("index")
    ps = run.stage("para_sasakian", lambda: verify_para_sasakian(s, ap))
    run.stage("curvature", lambda: verify_curvature_identities(s, ps))
    ap_ok, ps_ok = ap.passed, is_para_sasakian(ps)

    if "numeric" in cfg.checks and cfg.samples > 0:
        run.stage("numeric", lambda: _numeric(cfg, ps_ok))

    if cfg.hypersurface is None:
        return report
    frames: list[LightlikeFrame | None] = []

    def hypersurface_stage():
        rep, fr = _build_frame(cfg)
        frames.append(fr if rep.passed else None)
        return rep

    run.stage("hypersurface", hypersurface_stage)
    frame = frames[0]
    if frame is None:
        for name, entries in _HYPERSURFACE_SKIPS.items():
            run.skip(name, entries)
        return report
    report.screen_frame = _screen_strings(frame)
    geo = induced_geometry(frame)
    run.stage("gauss_weingarten", lambda: verify_gw_identities(geo))

    if not ap_ok:
        for name in ("classification", "identities", "integrability"):
            run.skip(name, [(name, _HYPERSURFACE_SKIPS[name][0][1], (AP,))])
        return report
    try:
        ts = phi_decompose(frame, s)
    except HypersurfaceError as exc:
        run.stage("classification", lambda: _single_fail("phi_decomposition", "eq-llh-1", exc))
        for name in ("identities", "integrability"):
            run.skip(name, [(name, _HYPERSURFACE_SKIPS[name][0][1], (AP,))])
        return report
    tag = classify_hypersurface(frame, s, ts)
    report.classification = tag

    def classification_stage():
        rep = classification_report(ts)
        if tag == SCREEN_SEMI_INVARIANT:
            screen_splitting(ts)
            rep.extend(splitting_report(ts))
        rep.extend(verify_induced_structure(ts, s.epsilon))
        return rep

    run.stage("classification", classification_stage)
    hyp = satisfied_hypotheses(ap_ok, ps_ok, tag)
    ctx = HypersurfaceContext(ts, geo, s)

    def identities_stage():
        rep = verify_ap_hypersurface_identities(ctx, hyp)
        rep.extend(verify_ps_hypersurface_identities(ctx, hyp))
        return rep

    run.stage("identities", identities_stage)
    run.stage("integrability", lambda: check_integrability(ctx, hyp))
    report.info["hypotheses"] = {k: hyp[k] for k in (AP, PS, INV, SSI)}
    return report


def _single_fail(name: str, tag: str, exc: Exception) -> AxiomReport:
    rep = AxiomReport(name)
    rep.add(CheckRecord(name, tag, Status.FAIL, value=f"{type(exc).__name__}: {exc}"))
    return rep


def _numeric(cfg: VerificationConfig, ps_ok: bool) -> AxiomReport:
    s = cfg.structure
    rep = AxiomReport("numeric")
    pts = sample_points(s.metric, cfg.samples, cfg.seed)
    for name, agreement in (("numeric_christoffel", compare_christoffel(s.metric, pts)),
                            ("numeric_riemann", compare_riemann(s.metric, pts))):
        rep.add(CheckRecord(name, "numeric-oracle", Status.PASS if agreement.ok else Status.FAIL,
                            value=f"{agreement.samples} points, worst relative error {agreement.worst:.1e}"))
    if ps_ok:
        a = para_sasakian_residual(s, pts)
        rep.add(CheckRecord("numeric_para_sasakian", "para2", Status.PASS if a.ok else Status.FAIL,
                            value=f"{a.samples} points, worst residual {a.worst:.1e}", hypotheses=(PS,)))
    else:
        rep.add(CheckRecord("numeric_para_sasakian", "para2", Status.HYPOTHESIS_NOT_SATISFIED,
                            hypotheses=(PS,)))
    return rep
