from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import structlog

from app.core.errors import (
    ArityError,
    NormalizationViolation,
    NotClassical,
    NotConjunction,
    NotSuperposition,
)
from app.domain.degrees import INPUT_TOLERANCE, modulus_squared, render_degree, render_value
from app.domain.propositions import (
    Assertion,
    ClassicalAnd,
    CompoundAssertion,
    QuantumSuperposition,
    render_assertion,
)

logger = structlog.get_logger(__name__)


@dataclass(frozen=True, slots=True)
class MetaDataConstraint:
    degrees: tuple[complex, ...]
    tolerance: float = INPUT_TOLERANCE

    @property
    def total(self) -> float:
        return math.fsum(modulus_squared(degree) for degree in self.degrees)

    @property
    def satisfied(self) -> bool:
        return abs(self.total - 1.0) <= self.tolerance

    def describe(self) -> str:
        terms = " + ".join(f"|{render_degree(degree)}|^2" for degree in self.degrees)
        return f"{terms} = {render_value(self.total)}"


def check_metadata(degrees: Sequence[complex], tolerance: float = INPUT_TOLERANCE) -> bool:
    return MetaDataConstraint(tuple(degrees), tolerance).satisfied


def require_metadata(degrees: Sequence[complex], tolerance: float = INPUT_TOLERANCE) -> None:
    constraint = MetaDataConstraint(tuple(degrees), tolerance)
    if not constraint.satisfied:
        logger.info("meta.normalization_violated", total=constraint.total, parts=len(degrees))
        msg = (
            "Meta-data constraint violated: the squared moduli of the degrees "
            f"must sum to 1, got {constraint.describe()}"
        )
        raise NormalizationViolation(msg)


def compose_classical(a: Assertion, b: Assertion) -> Assertion:
    for part in (a, b):
        if not part.is_classical_limit:
            msg = f"Classical conjunction needs classical assertions, got {render_assertion(part)}"
            raise NotClassical(msg)
    return Assertion.asserted(ClassicalAnd(a.subject, b.subject))


def decompose_classical(c: Assertion) -> tuple[Assertion, Assertion]:
    if not c.is_classical_limit:
        msg = f"Expected a classical assertion, got {render_assertion(c)}"
        raise NotClassical(msg)
    if not isinstance(c.subject, ClassicalAnd):
        msg = f"Expected an assertion of a conjunction, got {render_assertion(c)}"
        raise NotConjunction(msg)
    return Assertion.asserted(c.subject.left), Assertion.asserted(c.subject.right)


def compose_quantum(parts: Sequence[Assertion], tolerance: float = INPUT_TOLERANCE) -> Assertion:
    if len(parts) < 2:
        msg = f"Quantum superposition needs at least 2 assertions, got {len(parts)}"
        raise ArityError(msg)
    require_metadata([part.degree for part in parts], tolerance)
    return Assertion.asserted(
        QuantumSuperposition(tuple((part.degree, part.subject) for part in parts)),
        tolerance,
    )


def decompose_quantum(c: Assertion) -> list[Assertion]:
    if not isinstance(c.subject, QuantumSuperposition):
        msg = f"Expected an assertion of a superposition, got {render_assertion(c)}"
        raise NotSuperposition(msg)
    if not c.is_classical_limit:
        msg = f"A superposition is asserted with certitude, got {render_assertion(c)}"
        raise NotClassical(msg)
    return [Assertion.graded(degree, operand, c.tolerance) for degree, operand in c.subject.parts]


def render_definitional_equation(compound: Assertion, parts: Sequence[Assertion]) -> str:
    return f"{render_assertion(compound)} iff {CompoundAssertion(tuple(parts))}"


def classical_equation(a: Assertion, b: Assertion) -> str:
    compound = compose_classical(a, b)
    return render_definitional_equation(compound, decompose_classical(compound))


def quantum_equation(parts: Sequence[Assertion], tolerance: float = INPUT_TOLERANCE) -> str:
    compound = compose_quantum(parts, tolerance)
    return render_definitional_equation(compound, decompose_quantum(compound))
