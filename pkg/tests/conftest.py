from __future__ import annotations

import functools
from collections import defaultdict

import pytest

from paralight.cli_report import load_config, run_verification
from paralight.cli_report.pipeline import _build_frame
from paralight.fixtures import fixture_path
from paralight.lightlike_hyp import induced_geometry
from paralight.structure_analysis import (
    SCREEN_SEMI_INVARIANT,
    classify_hypersurface,
    phi_decompose,
    screen_splitting,
)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion exercised by the test")


@functools.lru_cache(maxsize=None)
def config_for(name: str):
    return load_config(fixture_path(name))


@functools.lru_cache(maxsize=None)
def report_for(name: str):
    return run_verification(config_for(name))


@functools.lru_cache(maxsize=None)
def geometry_for(name: str):
    """(structure, frame, induced geometry, tangential structure) of a bundled fixture."""
    cfg = config_for(name)
    s = cfg.structure
    _, frame = _build_frame(cfg)
    geo = induced_geometry(frame)
    ts = phi_decompose(frame, s)
    if classify_hypersurface(frame, s, ts) == SCREEN_SEMI_INVARIANT:
        screen_splitting(ts)
    return s, frame, geo, ts


_outcomes: dict[str, list[tuple[str, str]]] = defaultdict(list)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for mark in getattr(report, "criteria", ()):
        _outcomes[mark].append((report.nodeid, report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.criteria = tuple(str(m.args[0]) for m in item.iter_markers("criterion"))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_outcomes, key=lambda c: (len(c), c)):
        results = _outcomes[crit]
        ok = all(o == "passed" for _, o in results)
        failed = [n.split("::")[-1] for n, o in results if o != "passed"]
        line = f"criterion {crit}: {'PASS' if ok else 'FAIL'} ({len(results)} tests"
        line += f"; failing: {', '.join(failed)})" if failed else ")"
        terminalreporter.write_line(line)
