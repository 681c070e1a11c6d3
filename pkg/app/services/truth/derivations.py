from __future__ import annotations

import re
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import structlog

from app.core.errors import KernelError, NotConjunction, NotSuperposition
from app.domain.degrees import INPUT_TOLERANCE
from app.domain.enums import DerivationKind, RuleTag
from app.domain.propositions import (
    Assertion,
    Atom,
    ClassicalAnd,
    Probably,
    Proposition,
    QuantumSuperposition,
    quote,
    render_assertion,
    render_proposition,
)
from app.domain.records import TraceLineRecord, TraceRecord
from app.services.meta.meta_calculus import (
    classical_equation,
    compose_quantum,
    quantum_equation,
    require_metadata,
)
from app.services.parser.formula_parser import parse_assertion, parse_proposition
from app.services.truth.conventions import (
    render_convention_pt,
    render_convention_t,
    render_truth_claims,
    t_schema_expand,
)

logger = structlog.get_logger(__name__)

_TRUTH_FORM_RE = re.compile(r"(?P<name>.+) is true iff (?P<body>.+)\Z")
_ASSERTED_T_RE = re.compile(r"\|- '(?P<quoted>.+)' iff (?P<body>.+)\Z")
_DEFINITION_RE = re.compile(r"(?P<defined>.+) := (?P<definiens>.+)\Z")


@dataclass(frozen=True, slots=True)
class TraceLine:
    judgment: str
    rule: RuleTag
    refs: tuple[int, ...] = ()
    # Proposition or assertion text the rule starts from, if any.
    argument: str | None = None


@dataclass(slots=True)
class DerivationTrace:
    kind: DerivationKind
    lines: list[TraceLine] = field(default_factory=list)
    tolerance: float = INPUT_TOLERANCE

    def add(
        self,
        judgment: str,
        rule: RuleTag,
        refs: Sequence[int] = (),
        argument: str | None = None,
    ) -> int:
        self.lines.append(TraceLine(judgment, rule, tuple(refs), argument))
        return len(self.lines)

    @property
    def conclusion(self) -> str:
        return self.lines[-1].judgment

    def judgment(self, number: int) -> str:
        return self.lines[number - 1].judgment

    def render(self) -> str:
        return "".join(f"{render_trace_line(number, line)}\n" for number, line in enumerate(self.lines, start=1))

    def to_record(self, verified: bool) -> TraceRecord:
        return TraceRecord(
            derivation=self.kind,
            lines=[
                TraceLineRecord(number=number, judgment=line.judgment, rule=line.rule, refs=list(line.refs))
                for number, line in enumerate(self.lines, start=1)
            ],
            conclusion=self.conclusion,
            verified=verified,
        )


def render_trace_line(number: int, line: TraceLine) -> str:
    return format_trace_line(number, line.judgment, line.rule, line.refs)


def format_trace_line(number: int, judgment: str, rule: RuleTag, refs: Sequence[int]) -> str:
    source = f" from {','.join(str(ref) for ref in refs)}" if refs else ""
    return f"{number}. {judgment}   [{rule}{source}]"


@dataclass(frozen=True, slots=True)
class RuleInput:
    argument: str | None
    premises: Sequence[str]
    tolerance: float = INPUT_TOLERANCE


# Rules. Each one maps its input to the judgment it licenses and rejects
# premises it does not use.


def _rule_convention_t(given: RuleInput) -> str:
    _count(given.premises, 0)
    return render_convention_t(_proposition(given.argument))


def _rule_t_schema(given: RuleInput) -> str:
    conjunction = _conjunction(given.argument)
    _require_premises(given.premises, [render_convention_t(conjunction.left), render_convention_t(conjunction.right)])
    return f"{quote(conjunction)} is true iff {render_truth_claims(t_schema_expand(quote(conjunction)))}"


def _rule_assertion_form(given: RuleInput) -> str:
    (premise,) = _count(given.premises, 1)
    match = _TRUTH_FORM_RE.match(premise)
    if match is None or " is true" in match.group("body"):
        msg = f"Premise is not a Convention T instance: {premise}"
        raise KernelError(msg)
    return f"|- {match.group('name')} iff {match.group('body')}"


def _rule_convention_t_assert(given: RuleInput) -> str:
    p = _proposition(given.argument)
    if len(given.premises) == 1:
        # Asserting a defined compound: the premise must define exactly it.
        match = _DEFINITION_RE.match(given.premises[0])
        if match is None or match.group("definiens") != render_proposition(p):
            msg = f"Premise does not define {render_proposition(p)}: {given.premises[0]}"
            raise KernelError(msg)
    else:
        conjunction = _conjunction(given.argument)
        _require_premises(given.premises, [_asserted_t(conjunction.left), _asserted_t(conjunction.right)])
    return _asserted_t(p)


def _rule_t_schema_assert(given: RuleInput) -> str:
    conjunction = _conjunction(given.argument)
    truth_schema = _rule_t_schema(
        RuleInput(given.argument, [render_convention_t(conjunction.left), render_convention_t(conjunction.right)]),
    )
    _require_premises(given.premises, [truth_schema, _asserted_t(conjunction)])
    claims = t_schema_expand(quote(conjunction))
    return f"|- {quote(conjunction)} iff " + " and ".join(f"|- {quote(part.subject)}" for part in claims.parts)


def _rule_discharge_quotes(given: RuleInput) -> str:
    (premise,) = _count(given.premises, 1)
    left, sep, right = premise.partition(" iff ")
    if not sep or "'" not in left or "'" not in right:
        msg = f"Quotation marks must appear on both sides of: {premise}"
        raise KernelError(msg)
    return premise.replace("'", "")


def _rule_convention_pt(given: RuleInput) -> str:
    _count(given.premises, 0)
    if given.argument is None:
        msg = "Convention PT needs a graded assertion argument"
        raise KernelError(msg)
    assertion = parse_assertion(given.argument, given.tolerance)
    if assertion.classical or not isinstance(assertion.subject, Atom):
        msg = f"Convention PT grades atoms, got {given.argument}"
        raise KernelError(msg)
    return render_convention_pt(assertion)


def _rule_definition(given: RuleInput) -> str:
    superposition = _superposition(given.argument)
    expected = [
        render_convention_pt(Assertion.graded(degree, operand, given.tolerance))
        for degree, operand in superposition.parts
    ]
    _require_premises(given.premises, expected)
    return f"{render_proposition(superposition)} := {render_proposition(_probably_conjunction(superposition))}"


def _rule_substitution(given: RuleInput) -> str:
    definition, target = _count(given.premises, 2)
    match = _DEFINITION_RE.match(definition)
    if match is None or match.group("definiens") not in target:
        msg = f"Cannot substitute {definition!r} into {target!r}"
        raise KernelError(msg)
    return target.replace(match.group("definiens"), match.group("defined"))


def _rule_t_schema_superposition(given: RuleInput) -> str:
    (premise,) = _count(given.premises, 1)
    match = _ASSERTED_T_RE.match(premise)
    if match is None or match.group("quoted") != match.group("body"):
        msg = f"Premise is not a Convention T instance on a compound: {premise}"
        raise KernelError(msg)
    superposition = _superposition(match.group("body"))
    parts = [Assertion.graded(degree, operand, given.tolerance) for degree, operand in superposition.parts]
    return quantum_equation(parts, given.tolerance)


RULES: dict[RuleTag, Callable[[RuleInput], str]] = {
    RuleTag.CONVENTION_T: _rule_convention_t,
    RuleTag.T_SCHEMA: _rule_t_schema,
    RuleTag.ASSERTION_FORM: _rule_assertion_form,
    RuleTag.CONVENTION_T_ASSERT: _rule_convention_t_assert,
    RuleTag.T_SCHEMA_ASSERT: _rule_t_schema_assert,
    RuleTag.DISCHARGE_QUOTES: _rule_discharge_quotes,
    RuleTag.CONVENTION_PT: _rule_convention_pt,
    RuleTag.DEFINITION: _rule_definition,
    RuleTag.SUBSTITUTION: _rule_substitution,
    RuleTag.T_SCHEMA_SUPERPOSITION: _rule_t_schema_superposition,
}


def _asserted_t(p: Proposition) -> str:
    return f"|- {quote(p)} iff {render_proposition(p)}"


def _proposition(argument: str | None) -> Proposition:
    if argument is None:
        msg = "Rule needs a proposition argument"
        raise KernelError(msg)
    return parse_proposition(argument)


def _conjunction(argument: str | None) -> ClassicalAnd:
    p = _proposition(argument)
    if not isinstance(p, ClassicalAnd):
        msg = f"Rule applies to conjunctions, got {argument}"
        raise NotConjunction(msg)
    return p


def _superposition(argument: str | None) -> QuantumSuperposition:
    p = _proposition(argument)
    if not isinstance(p, QuantumSuperposition):
        msg = f"Rule applies to superpositions, got {argument}"
        raise NotSuperposition(msg)
    return p


def _probably_conjunction(superposition: QuantumSuperposition) -> Proposition:
    wrapped: list[Proposition] = [Probably(operand) for operand in superposition.operands]
    result = wrapped[0]
    for item in wrapped[1:]:
        result = ClassicalAnd(result, item)
    return result


def _count(premises: Sequence[str], expected: int) -> Sequence[str]:
    if len(premises) != expected:
        msg = f"Rule takes {expected} premise(s), got {len(premises)}"
        raise KernelError(msg)
    return premises


def _require_premises(premises: Sequence[str], expected: Sequence[str]) -> None:
    if list(premises) != list(expected):
        msg = f"Premises {list(premises)!r} do not match {list(expected)!r}"
        raise KernelError(msg)


def _apply(trace: DerivationTrace, rule: RuleTag, refs: Sequence[int] = (), argument: str | None = None) -> int:
    premises = [trace.judgment(ref) for ref in refs]
    judgment = RULES[rule](RuleInput(argument, premises, trace.tolerance))
    return trace.add(judgment, rule, refs, argument)


def derive_classical_defeq(a: str, b: str) -> DerivationTrace:
    left, right = Atom(a), Atom(b)
    conjunction = ClassicalAnd(left, right)
    compound = render_proposition(conjunction)

    trace = DerivationTrace(DerivationKind.CLASSICAL)
    t_left = _apply(trace, RuleTag.CONVENTION_T, argument=a)
    t_right = _apply(trace, RuleTag.CONVENTION_T, argument=b)
    schema = _apply(trace, RuleTag.T_SCHEMA, (t_left, t_right), compound)
    asserted_left = _apply(trace, RuleTag.ASSERTION_FORM, (t_left,))
    asserted_right = _apply(trace, RuleTag.ASSERTION_FORM, (t_right,))
    t_compound = _apply(trace, RuleTag.CONVENTION_T_ASSERT, (asserted_left, asserted_right), compound)
    schema_asserted = _apply(trace, RuleTag.T_SCHEMA_ASSERT, (schema, t_compound), compound)
    _apply(trace, RuleTag.DISCHARGE_QUOTES, (schema_asserted,))

    expected = classical_equation(Assertion.asserted(left), Assertion.asserted(right))
    if trace.conclusion != expected:
        msg = f"Derivation ended at {trace.conclusion!r}, expected {expected!r}"
        raise KernelError(msg)
    return trace


def derive_quantum_defeq(*degrees: complex, tolerance: float = INPUT_TOLERANCE) -> DerivationTrace:
    # Atoms are p0, p1, ...; two degrees give the binary chain.
    require_metadata(degrees, tolerance)
    parts = [Assertion.graded(degree, Atom(f"p{index}"), tolerance) for index, degree in enumerate(degrees)]
    superposition = compose_quantum(parts, tolerance).subject
    if not isinstance(superposition, QuantumSuperposition):
        msg = f"Composition produced {render_proposition(superposition)}"
        raise NotSuperposition(msg)

    trace = DerivationTrace(DerivationKind.QUANTUM, tolerance=tolerance)
    pt_lines = [_apply(trace, RuleTag.CONVENTION_PT, argument=render_assertion(part)) for part in parts]
    definition = _apply(trace, RuleTag.DEFINITION, pt_lines, render_proposition(superposition))
    t_probably = _apply(
        trace,
        RuleTag.CONVENTION_T_ASSERT,
        (definition,),
        render_proposition(_probably_conjunction(superposition)),
    )
    substituted = _apply(trace, RuleTag.SUBSTITUTION, (definition, t_probably))
    _apply(trace, RuleTag.T_SCHEMA_SUPERPOSITION, (substituted,))
    return trace


@dataclass(frozen=True, slots=True)
class TraceIssue:
    line: int
    message: str


class TraceVerifier:
    def verify(self, trace: DerivationTrace) -> list[TraceIssue]:
        issues: list[TraceIssue] = []
        for number, line in enumerate(trace.lines, start=1):
            issue = self._check_line(trace, number, line)
            if issue is not None:
                issues.append(issue)
        if issues:
            logger.warning("derive.trace_rejected", kind=trace.kind.value, issues=len(issues))
        else:
            logger.info("derive.trace_verified", kind=trace.kind.value, lines=len(trace.lines))
        return issues

    def accepts(self, trace: DerivationTrace) -> bool:
        return not self.verify(trace)

    def _check_line(self, trace: DerivationTrace, number: int, line: TraceLine) -> TraceIssue | None:
        if any(not 1 <= ref < number for ref in line.refs):
            return TraceIssue(number, f"premises {list(line.refs)} must refer to earlier lines")
        rule = RULES.get(line.rule)
        if rule is None:
            return TraceIssue(number, f"unknown rule {line.rule!r}")
        premises = [trace.judgment(ref) for ref in line.refs]
        try:
            expected = rule(RuleInput(line.argument, premises, trace.tolerance))
        except (KernelError, ValueError) as exc:
            return TraceIssue(number, str(exc))
        if expected != line.judgment:
            return TraceIssue(number, f"rule yields {expected!r}, line states {line.judgment!r}")
        return None
