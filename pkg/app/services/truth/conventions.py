from __future__ import annotations

import cmath
import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.errors import NotClassical, NotConjunction, NotProbabilized, UnknownAtom
from app.domain.degrees import STATE_TOLERANCE, modulus_squared, render_degree, render_value
from app.domain.propositions import (
    Assertion,
    Atom,
    ClassicalAnd,
    CompoundAssertion,
    Name,
    Probably,
    Proposition,
    QuantumSuperposition,
    quote,
    render_proposition,
)
from app.services.semantics.amplitudes import TruthValue


def _contains_superposition(p: Proposition) -> bool:
    if isinstance(p, QuantumSuperposition):
        return True
    children: tuple[Proposition, ...] = ()
    if isinstance(p, ClassicalAnd):
        children = (p.left, p.right)
    elif isinstance(p, Probably):
        children = (p.inner,)
    return any(_contains_superposition(child) for child in children)


def convention_t(p: Proposition) -> tuple[Name, Proposition]:
    if _contains_superposition(p):
        msg = f"Convention T applies to non-graded propositions, got {render_proposition(p)}"
        raise NotClassical(msg)
    return quote(p), p


def render_convention_t(p: Proposition) -> str:
    name, proposition = convention_t(p)
    return f"{name} is true iff {render_proposition(proposition)}"


def t_schema_expand(n: Name) -> CompoundAssertion:
    if not isinstance(n.named, ClassicalAnd):
        msg = f"T-Schema expands conjunctions, got {n}"
        raise NotConjunction(msg)
    return CompoundAssertion(
        (Assertion.asserted(n.named.left), Assertion.asserted(n.named.right)),
    )


def render_truth_claims(claims: CompoundAssertion) -> str:
    return " and ".join(f"{quote(part.subject)} is true" for part in claims.parts)


class ProbabilityContext(BaseModel):
    model_config = ConfigDict(frozen=True)

    atoms: frozenset[str]
    probabilized: tuple[str, ...]
    probability: dict[str, float]
    tolerance: float = Field(default=STATE_TOLERANCE, gt=0)

    @model_validator(mode="after")
    def validate_assignment(self) -> ProbabilityContext:
        if len(set(self.probabilized)) != len(self.probabilized):
            msg = "Probabilized atoms must be distinct"
            raise ValueError(msg)
        missing = set(self.probabilized) - self.atoms
        if missing:
            msg = f"Probabilized atoms {sorted(missing)} are not in the atom set"
            raise ValueError(msg)
        if set(self.probability) != set(self.probabilized):
            msg = "Probability must be assigned to exactly the probabilized atoms"
            raise ValueError(msg)
        if any(not 0.0 <= value <= 1.0 for value in self.probability.values()):
            msg = "Probabilities must lie in [0, 1]"
            raise ValueError(msg)
        total = math.fsum(self.probability.values())
        if abs(total - 1.0) > self.tolerance:
            msg = f"Probabilities must sum to 1, got {render_value(total)}"
            raise ValueError(msg)
        return self

    def probability_of(self, atom: str) -> float:
        if atom not in self.atoms:
            msg = f"Atom {atom!r} is not in the context"
            raise UnknownAtom(msg)
        if atom not in self.probability:
            msg = f"Atom {atom!r} carries no probability assignment"
            raise NotProbabilized(msg)
        return self.probability[atom]


def probably(ctx: ProbabilityContext, atom: str) -> tuple[Probably, TruthValue]:
    return Probably(Atom(atom)), TruthValue(ctx.probability_of(atom))


def convention_pt(ctx: ProbabilityContext, atom: str, phase: float = 0.0) -> Assertion:
    magnitude = math.sqrt(ctx.probability_of(atom))
    degree = complex(magnitude, 0.0) if phase == 0.0 else cmath.rect(magnitude, phase)
    return Assertion.graded(degree, Atom(atom))


def render_convention_pt(assertion: Assertion) -> str:
    atom = render_proposition(assertion.subject)
    degree = render_degree(assertion.degree)
    value = render_value(modulus_squared(assertion.degree))
    return (
        f"|-[{degree}] {quote(assertion.subject)} iff P({atom})"
        f" with v(P({atom})) = p({atom}) = |{degree}|^2 = {value}"
    )


def render_probably_true(atom: str) -> str:
    return f"'{atom}' is probably true iff P({atom})"


def valuation_from_context(ctx: ProbabilityContext) -> dict[Proposition, TruthValue]:
    return {Probably(Atom(atom)): TruthValue(ctx.probability[atom]) for atom in ctx.probabilized}
