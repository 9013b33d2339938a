"""Check records and reports shared by every verification stage."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .exact_field import ScalarExpr, find_witness


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    HYPOTHESIS_NOT_SATISFIED = "hypothesis-not-satisfied"
    SKIPPED = "skipped"


@dataclass
class CheckRecord:
    name: str
    paper_tag: str
    status: Status
    residual: ScalarExpr | None = None
    location: str | None = None
    witness: dict[str, Fraction] | None = None
    value: str | None = None
    hypotheses: tuple[str, ...] = ()
    millis: float | None = None

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS


@dataclass
class AxiomReport:
    stage: str
    records: list[CheckRecord] = field(default_factory=list)
    info: dict[str, object] = field(default_factory=dict)

    def add(self, record: CheckRecord) -> CheckRecord:
        self.records.append(record)
        return record

    def extend(self, other: "AxiomReport"):
        self.records.extend(other.records)
        self.info.update(other.info)

    def __getitem__(self, name: str) -> CheckRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(r.name == name for r in self.records)

    @property
    def passed(self) -> bool:
        return all(r.status is Status.PASS for r in self.records)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status is Status.FAIL]

    def status_of(self, name: str) -> Status:
        return self[name].status


def identity_record(name: str, tag: str, residuals: Iterable[tuple[str, ScalarExpr]],
                    hypotheses: tuple[str, ...] = (), seed: int = 0) -> CheckRecord:
    """Pass iff every residual is the zero expression; otherwise keep the first nonzero one."""
    for location, r in residuals:
        if not r.is_zero():
            return CheckRecord(name, tag, Status.FAIL, residual=r, location=location,
                               witness=find_witness(r, seed=seed), hypotheses=hypotheses)
    return CheckRecord(name, tag, Status.PASS, hypotheses=hypotheses)


def gated_record(name: str, tag: str, hypotheses: tuple[str, ...], status: Status,
                 value: str | None = None) -> CheckRecord:
    return CheckRecord(name, tag, status, hypotheses=hypotheses, value=value)
