from __future__ import annotations

import pytest

from app.core.errors import ParseError, ScriptError, UnknownAtom
from app.domain.enums import ExitCode, StatementStatus
from app.services.kernel.script_check_service import ScriptCheckService
from app.services.parser.script_parser import load_script


def _check(text: str) -> tuple[ExitCode, list[tuple[str, StatementStatus, str | None]]]:
    report = ScriptCheckService().check(load_script(text))
    rows = [(record.label, record.status, record.judgment or record.message) for record in report.statements]
    return report.exit_code, rows


def test_valid_superposition_script_passes() -> None:
    exit_code, rows = _check("basis: p0 p1\na: |-[0.6] p0\nb: |-[0.8i] p1\nc: |- (p0 [0.6, 0.8i]& p1)\n")

    assert exit_code is ExitCode.OK
    assert [status for _, status, _ in rows] == [StatementStatus.OK] * 3
    assert rows[2][2] == "|- (p0 [0.6, 0.8i]& p1)"


def test_unnormalized_superposition_is_a_violation() -> None:
    exit_code, rows = _check("basis: p0 p1\na: |-[1] p0\nb: |-[1] p1\nc: |- (p0 [1, 1]& p1)\n")

    assert exit_code is ExitCode.SEMANTIC
    assert rows[2][1] is StatementStatus.VIOLATION
    assert "|1|^2 + |1|^2 = 2" in str(rows[2][2])


def test_composing_unnormalized_parts_is_a_violation() -> None:
    exit_code, rows = _check("basis: p0 p1\na: |-[1] p0\nb: |-[1] p1\nc: compose a b\n")

    assert exit_code is ExitCode.SEMANTIC
    assert rows[2][1] is StatementStatus.VIOLATION


def test_malformed_degree_is_a_syntax_error_and_checking_continues() -> None:
    exit_code, rows = _check("basis: p0 p1\na: |-[0.6.1] p0\nb: |- (p0 [1, 1]& p1)\n")

    assert exit_code is ExitCode.SYNTAX
    assert rows[0][1] is StatementStatus.SYNTAX_ERROR
    assert "byte offset 22" in str(rows[0][2])
    assert rows[1][1] is StatementStatus.VIOLATION


def test_compose_statements() -> None:
    exit_code, rows = _check(
        "basis: A B p0 p1\n"
        "a: |- A\n"
        "b: |- B\n"
        "ab: compose a b\n"
        "q0: |-[0.6] p0\n"
        "q1: |-[0.8i] p1\n"
        "q: compose q0 q1\n"
    )

    assert exit_code is ExitCode.OK
    judgments = {label: judgment for label, _, judgment in rows}
    assert judgments["ab"] == "|- (A & B)"
    assert judgments["q"] == "|- (p0 [0.6, 0.8i]& p1)"


def test_atoms_must_be_declared() -> None:
    exit_code, rows = _check("basis: p0\na: |- (p0 & p9)\n")

    assert exit_code is ExitCode.SEMANTIC
    assert "p9" in str(rows[0][2])


def test_compose_label_errors() -> None:
    exit_code, rows = _check("basis: p0 p1\na: |- (p0 [1, 1]& p1)\nb: compose a missing\nc: compose a a\n")

    assert exit_code is ExitCode.SYNTAX
    assert [status for _, status, _ in rows] == [
        StatementStatus.VIOLATION,
        StatementStatus.SYNTAX_ERROR,
        StatementStatus.VIOLATION,
    ]


def test_compose_cannot_look_ahead() -> None:
    exit_code, rows = _check("basis: A B\nc: compose a b\na: |- A\nb: |- B\n")

    assert exit_code is ExitCode.SYNTAX
    assert rows[0][1] is StatementStatus.SYNTAX_ERROR


def test_summary_counts_failures() -> None:
    report = ScriptCheckService().check(load_script("basis: p0\na: |- p0\nb: |- p9\n"))

    assert (report.summary.statements, report.summary.failures, report.summary.exit_code) == (2, 1, 2)


def test_resolve_raises_first_failure() -> None:
    service = ScriptCheckService()

    with pytest.raises(UnknownAtom):
        service.resolve(load_script("basis: p0\na: |- p9\n"))
    with pytest.raises(ParseError):
        service.resolve(load_script("basis: p0\na: |- (p0\n"))
    with pytest.raises(ScriptError):
        service.resolve(load_script("basis: p0\na: compose x y\n"))
