"""Bundled verification configs."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

NAMES = ("fixture_a", "fixture_b", "fixture_c", "fixture_d", "fixture_e",
         "fixture_a_mutated_phi", "flat_hyperplane")


def fixture_path(name: str) -> Path:
    return Path(str(resources.files(__name__).joinpath(f"{name}.json")))


def load_fixture(name: str) -> dict:
    return json.loads(fixture_path(name).read_text(encoding="utf-8"))
