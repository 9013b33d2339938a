"""Config ingestion, pipeline orchestration and reporting."""

from .config import ConfigError, HypersurfaceSpec, VerificationConfig, load_config
from .pipeline import VerificationReport, run_verification
from .report import emit_report, machine_report, render_human, render_machine

__all__ = [
    "ConfigError",
    "HypersurfaceSpec",
    "VerificationConfig",
    "VerificationReport",
    "emit_report",
    "load_config",
    "machine_report",
    "render_human",
    "render_machine",
    "run_verification",
]
