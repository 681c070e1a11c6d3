from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import structlog

from app.core.errors import NotSuperposition, ScriptError
from app.domain.propositions import Assertion, Atom, QuantumSuperposition, render_assertion
from app.domain.records import GoedelReport
from app.services.decoherence.measurement_service import (
    MeasurementOutcome,
    MeasurementStatistics,
    RandomStream,
    measure,
    measure_statistics,
)
from app.services.kernel.script_check_service import ScriptCheckReport, ScriptCheckService
from app.services.parser.script_parser import Script, load_script
from app.services.semantics.amplitudes import Basis, QubitState, interpret
from app.services.truth.derivations import (
    DerivationTrace,
    TraceIssue,
    TraceVerifier,
    derive_classical_defeq,
    derive_quantum_defeq,
)
from app.services.truth.goedel import goedel_report

logger = structlog.get_logger(__name__)


@dataclass(frozen=True, slots=True)
class VerifiedTrace:
    trace: DerivationTrace
    issues: list[TraceIssue]

    @property
    def verified(self) -> bool:
        return not self.issues


class KernelService:
    def __init__(
        self,
        *,
        checker: ScriptCheckService,
        verifier: TraceVerifier,
        input_tolerance: float,
    ) -> None:
        self._checker = checker
        self._verifier = verifier
        self._input_tolerance = input_tolerance

    def check(self, source: str | bytes) -> ScriptCheckReport:
        return self._checker.check(load_script(source))

    def interpret(
        self,
        source: str | bytes,
        *,
        label: str | None = None,
        basis_order: Sequence[str] | None = None,
    ) -> QubitState:
        script = load_script(source)
        assertion = self._select(script, label)
        state = interpret(assertion.subject, Basis(script.basis), self._input_tolerance)
        if basis_order:
            state = state.in_basis(basis_order)
        logger.info("interpret.completed", subject=render_assertion(assertion), atoms=list(state.basis.atoms))
        return state

    def measure_once(
        self,
        source: str | bytes,
        *,
        seed: int,
        label: str | None = None,
        basis_order: Sequence[str] | None = None,
    ) -> MeasurementOutcome:
        state = self.interpret(source, label=label, basis_order=basis_order)
        return measure(state, RandomStream(seed))

    def measure(
        self,
        source: str | bytes,
        *,
        trials: int,
        seed: int,
        label: str | None = None,
        basis_order: Sequence[str] | None = None,
    ) -> MeasurementStatistics:
        state = self.interpret(source, label=label, basis_order=basis_order)
        return measure_statistics(state, trials, seed)

    def derive_classical(self, a: str, b: str) -> VerifiedTrace:
        return self._verified(derive_classical_defeq(a, b))

    def derive_quantum(self, degrees: Sequence[complex]) -> VerifiedTrace:
        return self._verified(derive_quantum_defeq(*degrees, tolerance=self._input_tolerance))

    def goedel(self, degree: complex) -> GoedelReport:
        return goedel_report(degree, self._input_tolerance)

    def _verified(self, trace: DerivationTrace) -> VerifiedTrace:
        return VerifiedTrace(trace=trace, issues=self._verifier.verify(trace))

    def _select(self, script: Script, label: str | None) -> Assertion:
        resolved = self._checker.resolve(script)
        if label is not None:
            script.statement(label)
            assertion = resolved[label]
            if not isinstance(assertion.subject, Atom | QuantumSuperposition):
                msg = f"Statement {label!r} asserts {render_assertion(assertion)}, which has no state"
                raise NotSuperposition(msg)
            return assertion
        for candidate in reversed(resolved.values()):
            if isinstance(candidate.subject, Atom | QuantumSuperposition):
                return candidate
        msg = "Script has no statement asserting an atom or a superposition"
        raise ScriptError(msg)
