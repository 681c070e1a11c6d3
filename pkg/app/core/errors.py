from __future__ import annotations

from collections.abc import Iterable

from app.domain.enums import ExitCode


class KernelError(ValueError):
    exit_code: ExitCode = ExitCode.SEMANTIC


class ParseError(KernelError):
    exit_code = ExitCode.SYNTAX

    def __init__(self, message: str, offset: int, expected: Iterable[str] = ()) -> None:
        self.reason = message
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f"{message} at byte offset {offset}"
        if self.expected:
            detail = f"{detail}; expected one of: {', '.join(sorted(self.expected))}"
        super().__init__(detail)


class ScriptError(KernelError):
    exit_code = ExitCode.SYNTAX


class UsageError(KernelError):
    exit_code = ExitCode.SYNTAX


class MalformedProposition(KernelError):
    pass


class DegreeOutOfRange(KernelError):
    pass


class NormalizationViolation(KernelError):
    pass


class NotClassical(KernelError):
    pass


class NotConjunction(KernelError):
    pass


class NotSuperposition(KernelError):
    pass


class ArityError(KernelError):
    pass


class UnknownAtom(KernelError):
    pass


class DuplicateOperand(KernelError):
    pass


class NotProbabilized(KernelError):
    pass


class UnvaluedAtom(KernelError):
    pass


class TraceRejected(KernelError):
    pass
