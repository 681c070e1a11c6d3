from __future__ import annotations

import re
from dataclasses import dataclass, field

from app.core.errors import DegreeOutOfRange, MalformedProposition
from app.domain.degrees import (
    INPUT_TOLERANCE,
    ONE,
    as_degree,
    ensure_in_range,
    render_degree,
)

_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __post_init__(self) -> None:
        if not _IDENTIFIER.match(self.name):
            msg = f"Atom name must be an ASCII identifier, got {self.name!r}"
            raise MalformedProposition(msg)

    def __str__(self) -> str:
        return render_proposition(self)


@dataclass(frozen=True, slots=True)
class ClassicalAnd:
    left: Proposition
    right: Proposition

    def __str__(self) -> str:
        return render_proposition(self)


@dataclass(frozen=True, slots=True)
class QuantumSuperposition:
    parts: tuple[tuple[complex, Proposition], ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            msg = f"Superposition needs at least 2 parts, got {len(self.parts)}"
            raise MalformedProposition(msg)
        normalized = tuple((as_degree(degree), operand) for degree, operand in self.parts)
        object.__setattr__(self, "parts", normalized)

    @property
    def degrees(self) -> tuple[complex, ...]:
        return tuple(degree for degree, _ in self.parts)

    @property
    def operands(self) -> tuple[Proposition, ...]:
        return tuple(operand for _, operand in self.parts)

    def __str__(self) -> str:
        return render_proposition(self)


@dataclass(frozen=True, slots=True)
class Probably:
    inner: Proposition

    def __post_init__(self) -> None:
        if not is_boolean_base(self.inner):
            msg = f"P(...) applies to atoms or conjunctions of atoms, got {render_proposition(self.inner)}"
            raise MalformedProposition(msg)

    def __str__(self) -> str:
        return render_proposition(self)


@dataclass(frozen=True, slots=True)
class LukaNeg:
    inner: Proposition

    def __post_init__(self) -> None:
        _require_p_formula(self.inner, "~")

    def __str__(self) -> str:
        return render_proposition(self)


@dataclass(frozen=True, slots=True)
class LukaStrongAnd:
    left: Proposition
    right: Proposition

    def __post_init__(self) -> None:
        _require_p_formula(self.left, "*")
        _require_p_formula(self.right, "*")

    def __str__(self) -> str:
        return render_proposition(self)


@dataclass(frozen=True, slots=True)
class LukaImplies:
    left: Proposition
    right: Proposition

    def __post_init__(self) -> None:
        _require_p_formula(self.left, "->")
        _require_p_formula(self.right, "->")

    def __str__(self) -> str:
        return render_proposition(self)


Proposition = (
    Atom | ClassicalAnd | QuantumSuperposition | Probably | LukaNeg | LukaStrongAnd | LukaImplies
)


def is_boolean_base(p: Proposition) -> bool:
    if isinstance(p, Atom):
        return True
    if isinstance(p, ClassicalAnd):
        return is_boolean_base(p.left) and is_boolean_base(p.right)
    return False


def is_p_formula(p: Proposition) -> bool:
    return isinstance(p, Probably | LukaNeg | LukaStrongAnd | LukaImplies)


def _require_p_formula(p: Proposition, connective: str) -> None:
    if not is_p_formula(p):
        msg = f"'{connective}' applies to P-formulas only, got {render_proposition(p)}"
        raise MalformedProposition(msg)


def atoms_of(p: Proposition) -> tuple[str, ...]:
    seen: dict[str, None] = {}

    def walk(node: Proposition) -> None:
        match node:
            case Atom(name=name):
                seen.setdefault(name, None)
            case ClassicalAnd(left=left, right=right) | LukaStrongAnd(left=left, right=right):
                walk(left)
                walk(right)
            case LukaImplies(left=left, right=right):
                walk(left)
                walk(right)
            case QuantumSuperposition():
                for operand in node.operands:
                    walk(operand)
            case Probably(inner=inner) | LukaNeg(inner=inner):
                walk(inner)

    walk(p)
    return tuple(seen)


def render_proposition(p: Proposition) -> str:
    match p:
        case Atom(name=name):
            return name
        case ClassicalAnd(left=left, right=right):
            return f"({render_proposition(left)} & {render_proposition(right)})"
        case QuantumSuperposition(parts=parts):
            degrees = ", ".join(render_degree(degree) for degree, _ in parts)
            first = render_proposition(parts[0][1])
            rest = ", ".join(render_proposition(operand) for _, operand in parts[1:])
            return f"({first} [{degrees}]& {rest})"
        case Probably(inner=inner):
            body = render_proposition(inner)
            if isinstance(inner, ClassicalAnd):
                body = body[1:-1]
            return f"P({body})"
        case LukaNeg(inner=inner):
            return f"~{render_proposition(inner)}"
        case LukaStrongAnd(left=left, right=right):
            return f"({render_proposition(left)} * {render_proposition(right)})"
        case LukaImplies(left=left, right=right):
            return f"({render_proposition(left)} -> {render_proposition(right)})"
    msg = f"Unsupported proposition node {p!r}"
    raise TypeError(msg)


@dataclass(frozen=True, slots=True)
class Name:
    named: Proposition

    def __str__(self) -> str:
        return f"'{render_proposition(self.named)}'"


def quote(p: Proposition) -> Name:
    return Name(p)


@dataclass(frozen=True, slots=True)
class Assertion:
    degree: complex
    subject: Proposition
    classical: bool = False
    tolerance: float = field(default=INPUT_TOLERANCE, compare=False)

    def __post_init__(self) -> None:
        degree = ensure_in_range(self.degree, self.tolerance)
        if self.classical and degree != ONE:
            msg = f"Classical assertions have degree 1, got {render_degree(degree)}"
            raise DegreeOutOfRange(msg)
        object.__setattr__(self, "degree", degree)

    @classmethod
    def asserted(cls, subject: Proposition, tolerance: float = INPUT_TOLERANCE) -> Assertion:
        return cls(ONE, subject, classical=True, tolerance=tolerance)

    @classmethod
    def graded(cls, degree: complex, subject: Proposition, tolerance: float = INPUT_TOLERANCE) -> Assertion:
        return cls(degree, subject, classical=False, tolerance=tolerance)

    @property
    def is_classical_limit(self) -> bool:
        # A degree of exactly 1 reduces a graded assertion to a classical one.
        return self.classical or self.degree == ONE

    def __str__(self) -> str:
        return render_assertion(self)


def render_assertion(a: Assertion) -> str:
    if a.classical:
        return f"|- {render_proposition(a.subject)}"
    return f"|-[{render_degree(a.degree)}] {render_proposition(a.subject)}"


@dataclass(frozen=True, slots=True)
class CompoundAssertion:
    parts: tuple[Assertion, ...]

    def __post_init__(self) -> None:
        if not self.parts:
            msg = "Compound assertion needs at least one part"
            raise MalformedProposition(msg)

    def __str__(self) -> str:
        return " and ".join(render_assertion(part) for part in self.parts)
