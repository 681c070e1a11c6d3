from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from app.domain.enums import DerivationKind, RuleTag, StatementStatus, Verdict


class Record(BaseModel):
    model_config = ConfigDict(frozen=True)


class AmplitudeRecord(Record):
    kind: Literal["amplitude"] = "amplitude"
    atom: str
    re: float
    im: float
    truth: float = Field(ge=0.0, le=1.0)


class FrequencyRecord(Record):
    kind: Literal["frequency"] = "frequency"
    atom: str
    count: int = Field(ge=0)
    frequency: float = Field(ge=0.0, le=1.0)
    expected: float = Field(ge=0.0, le=1.0)


class StatisticsHeader(Record):
    kind: Literal["statistics"] = "statistics"
    seed: int
    trials: int = Field(ge=1)
    atoms: list[str]


class OutcomeRecord(Record):
    kind: Literal["outcome"] = "outcome"
    seed: int
    index: int = Field(ge=0)
    atom: str
    collapsed: str
    probability: float = Field(ge=0.0, le=1.0)


class TraceLineRecord(Record):
    number: int = Field(ge=1)
    judgment: str
    rule: RuleTag
    refs: list[int] = Field(default_factory=list)


class TraceRecord(Record):
    kind: Literal["trace"] = "trace"
    derivation: DerivationKind
    lines: list[TraceLineRecord]
    conclusion: str
    verified: bool


class GoedelReport(Record):
    kind: Literal["goedel"] = "goedel"
    assertion: str
    truth_value: float = Field(ge=0.0, le=1.0)
    identification: str
    con_probability: float = Field(ge=0.0, le=1.0)
    verdict: Verdict
    lines: list[str]


class StatementCheckRecord(Record):
    kind: Literal["statement"] = "statement"
    label: str
    line: int
    status: StatementStatus
    judgment: str | None = None
    message: str | None = None


class CheckSummary(Record):
    kind: Literal["summary"] = "summary"
    statements: int
    failures: int
    exit_code: int
