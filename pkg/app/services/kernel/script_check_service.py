from __future__ import annotations

from dataclasses import dataclass

import structlog

from app.core.errors import KernelError, ScriptError, UnknownAtom
from app.domain.degrees import INPUT_TOLERANCE
from app.domain.enums import ExitCode, StatementStatus
from app.domain.propositions import (
    Assertion,
    ClassicalAnd,
    QuantumSuperposition,
    atoms_of,
    render_assertion,
)
from app.domain.records import CheckSummary, StatementCheckRecord
from app.services.meta.meta_calculus import (
    compose_classical,
    compose_quantum,
    decompose_classical,
    decompose_quantum,
    require_metadata,
)
from app.services.parser.script_parser import ComposeCommand, Script, ScriptStatement

logger = structlog.get_logger(__name__)


@dataclass(frozen=True, slots=True)
class ScriptCheckReport:
    statements: list[StatementCheckRecord]
    summary: CheckSummary

    @property
    def exit_code(self) -> ExitCode:
        return ExitCode(self.summary.exit_code)


class ScriptCheckService:
    def __init__(self, *, tolerance: float = INPUT_TOLERANCE) -> None:
        self._tolerance = tolerance

    def check(self, script: Script) -> ScriptCheckReport:
        resolved: dict[str, Assertion] = {}
        records: list[StatementCheckRecord] = []
        for statement in script.statements:
            try:
                assertion = self.evaluate(script, statement, resolved)
            except KernelError as exc:
                status = StatementStatus.SYNTAX_ERROR if exc.exit_code == ExitCode.SYNTAX else StatementStatus.VIOLATION
                logger.info(
                    "check.statement_failed",
                    label=statement.label,
                    line=statement.line,
                    status=status.value,
                    error=type(exc).__name__,
                )
                records.append(
                    StatementCheckRecord(label=statement.label, line=statement.line, status=status, message=str(exc)),
                )
                continue
            resolved[statement.label] = assertion
            records.append(
                StatementCheckRecord(
                    label=statement.label,
                    line=statement.line,
                    status=StatementStatus.OK,
                    judgment=render_assertion(assertion),
                ),
            )

        statuses = {record.status for record in records}
        if StatementStatus.SYNTAX_ERROR in statuses:
            exit_code = ExitCode.SYNTAX
        elif StatementStatus.VIOLATION in statuses:
            exit_code = ExitCode.SEMANTIC
        else:
            exit_code = ExitCode.OK
        failures = sum(record.status is not StatementStatus.OK for record in records)
        logger.info("check.completed", statements=len(records), failures=failures, exit_code=int(exit_code))
        summary = CheckSummary(statements=len(records), failures=failures, exit_code=int(exit_code))
        return ScriptCheckReport(statements=records, summary=summary)

    def resolve(self, script: Script) -> dict[str, Assertion]:
        resolved: dict[str, Assertion] = {}
        for statement in script.statements:
            resolved[statement.label] = self.evaluate(script, statement, resolved)
        return resolved

    def evaluate(
        self,
        script: Script,
        statement: ScriptStatement,
        resolved: dict[str, Assertion],
    ) -> Assertion:
        parsed = statement.parse(self._tolerance)
        if isinstance(parsed, ComposeCommand):
            assertion = self._compose(script, statement, parsed, resolved)
        else:
            assertion = parsed
        self._require_basis(script, assertion)
        self._round_trip(assertion)
        return assertion

    def _compose(
        self,
        script: Script,
        statement: ScriptStatement,
        command: ComposeCommand,
        resolved: dict[str, Assertion],
    ) -> Assertion:
        for label in command.labels:
            if script.statement(label).line >= statement.line:
                msg = f"line {statement.line}: compose refers to later statement {label!r}"
                raise ScriptError(msg)
        parts: list[Assertion] = []
        for label in command.labels:
            if label not in resolved:
                msg = f"line {statement.line}: statement {label!r} did not check"
                raise KernelError(msg)
            parts.append(resolved[label])
        if len(parts) == 2 and all(part.classical for part in parts):
            return compose_classical(parts[0], parts[1])
        return compose_quantum(parts, self._tolerance)

    @staticmethod
    def _require_basis(script: Script, assertion: Assertion) -> None:
        for atom in atoms_of(assertion.subject):
            if atom not in script.basis:
                msg = f"Atom {atom!r} is not in the basis ({' '.join(script.basis)})"
                raise UnknownAtom(msg)

    def _round_trip(self, assertion: Assertion) -> None:
        subject = assertion.subject
        if isinstance(subject, QuantumSuperposition):
            require_metadata(subject.degrees, self._tolerance)
            recomposed = compose_quantum(decompose_quantum(assertion), self._tolerance)
        elif isinstance(subject, ClassicalAnd) and assertion.is_classical_limit:
            recomposed = compose_classical(*decompose_classical(assertion))
        else:
            return
        if recomposed.subject != subject:
            msg = f"Round trip changed {render_assertion(assertion)} into {render_assertion(recomposed)}"
            raise KernelError(msg)

