"""Human and machine renderings of a verification report."""

from __future__ import annotations

import json
from fractions import Fraction

from ..checks import CheckRecord
from .pipeline import VerificationReport


def _fraction_text(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _record_dict(r: CheckRecord) -> dict:
    out: dict = {"name": r.name, "paper_tag": r.paper_tag, "status": r.status.value}
    if r.residual is not None:
        out["residual"] = str(r.residual)
    if r.location is not None:
        out["location"] = r.location
    if r.witness is not None:
        out["witness"] = {k: _fraction_text(v) for k, v in r.witness.items()}
    if r.value is not None:
        out["value"] = r.value
    out["millis"] = r.millis
    return out


def machine_report(r: VerificationReport) -> dict:
    out: dict = {"config_digest": r.config_digest,
                 "checks": [_record_dict(c) for c in r.records]}
    if r.classification is not None:
        out["classification"] = r.classification
    if r.screen_frame is not None:
        out["screen_frame"] = r.screen_frame
    out["summary"] = r.summary()
    return out


def render_machine(r: VerificationReport) -> str:
    return json.dumps(machine_report(r), indent=2, ensure_ascii=False) + "\n"


def render_human(r: VerificationReport) -> str:
    rows = [(c.name, c.paper_tag, c.status.value, c.value or (str(c.residual) if c.residual is not None else ""))
            for c in r.records]
    head = ("check", "tag", "status", "detail")
    widths = [max([len(head[k])] + [len(row[k]) for row in rows]) for k in range(3)]
    lines = [f"{head[0]:<{widths[0]}}  {head[1]:<{widths[1]}}  {head[2]:<{widths[2]}}  {head[3]}"]
    lines.append("  ".join("-" * w for w in widths) + "  " + "-" * 6)
    for name, tag, status, detail in rows:
        lines.append(f"{name:<{widths[0]}}  {tag:<{widths[1]}}  {status:<{widths[2]}}  {detail}".rstrip())
    for c in r.records:
        if c.witness:
            pt = ", ".join(f"{k}={_fraction_text(v)}" for k, v in c.witness.items())
            lines.append(f"  {c.name}: residual {c.residual} at {c.location}; nonzero at ({pt})")
    if r.classification:
        lines.append(f"classification: {r.classification}")
    if r.screen_frame:
        lines.append("screen frame: " + "; ".join("(" + ", ".join(v) + ")" for v in r.screen_frame))
    s = r.summary()
    lines.append(f"summary: {s['pass']} pass, {s['fail']} fail, "
                 f"{s['hypothesis_not_satisfied']} hypothesis-not-satisfied, {s['skipped']} skipped")
    return "\n".join(lines) + "\n"


def emit_report(r: VerificationReport, format: str = "machine") -> tuple[str, int]:
    if format == "machine":
        text = render_machine(r)
    elif format == "human":
        text = render_human(r)
    else:
        raise ValueError(f"unknown report format {format!r}")
    return text, r.exit_status
