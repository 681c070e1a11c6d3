from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from app.core.errors import (
    DuplicateOperand,
    MalformedProposition,
    NormalizationViolation,
    NotSuperposition,
    UnknownAtom,
    UsageError,
)
from app.domain.degrees import (
    INPUT_TOLERANCE,
    STATE_TOLERANCE,
    as_degree,
    modulus_squared,
    render_value,
)
from app.domain.propositions import (
    Assertion,
    Atom,
    Proposition,
    QuantumSuperposition,
    render_proposition,
)
from app.domain.records import AmplitudeRecord
from app.services.meta.meta_calculus import require_metadata


@dataclass(frozen=True, slots=True)
class TruthValue:
    value: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.value <= 1.0:
            msg = f"Truth value {self.value!r} outside [0, 1]"
            raise ValueError(msg)

    @classmethod
    def of(cls, value: float, tolerance: float = STATE_TOLERANCE) -> TruthValue:
        # Rounding may overshoot the unit interval by at most the tolerance.
        if -tolerance <= value < 0.0:
            value = 0.0
        elif 1.0 < value <= 1.0 + tolerance:
            value = 1.0
        return cls(value)

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True, slots=True)
class Basis:
    atoms: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.atoms)) != len(self.atoms):
            msg = f"Basis atoms must be distinct: {' '.join(self.atoms)}"
            raise DuplicateOperand(msg)

    def __len__(self) -> int:
        return len(self.atoms)

    def __contains__(self, name: object) -> bool:
        return name in self.atoms

    def index_of(self, name: str) -> int:
        try:
            return self.atoms.index(name)
        except ValueError:
            msg = f"Atom {name!r} is not in the basis ({' '.join(self.atoms)})"
            raise UnknownAtom(msg) from None

    def reorder(self, order: Sequence[str]) -> Basis:
        if sorted(order) != sorted(self.atoms):
            msg = f"Basis order {' '.join(order)!r} is not a permutation of {' '.join(self.atoms)!r}"
            raise UsageError(msg)
        return Basis(tuple(order))


@dataclass(frozen=True, slots=True)
class QubitState:
    basis: Basis
    amplitudes: tuple[complex, ...]
    tolerance: float = field(default=STATE_TOLERANCE, compare=False)

    def __post_init__(self) -> None:
        if len(self.amplitudes) != len(self.basis):
            msg = f"{len(self.amplitudes)} amplitudes for a basis of {len(self.basis)} atoms"
            raise ValueError(msg)
        amplitudes = tuple(as_degree(amplitude) for amplitude in self.amplitudes)
        norm = math.fsum(modulus_squared(amplitude) for amplitude in amplitudes)
        if abs(norm - 1.0) > self.tolerance:
            msg = f"State norm {render_value(norm)} differs from 1 by more than {self.tolerance:g}"
            raise NormalizationViolation(msg)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def vector(self) -> npt.NDArray[np.complex128]:
        vector = np.array(self.amplitudes, dtype=np.complex128)
        vector.flags.writeable = False
        return vector

    def amplitude(self, name: str) -> complex:
        return self.amplitudes[self.basis.index_of(name)]

    def in_basis(self, order: Sequence[str]) -> QubitState:
        basis = self.basis.reorder(order)
        reordered = tuple(self.amplitude(name) for name in basis.atoms)
        return QubitState(basis, reordered, self.tolerance)


def interpret_atom(name: str, basis: Basis) -> QubitState:
    index = basis.index_of(name)
    amplitudes = tuple(complex(1.0 if i == index else 0.0, 0.0) for i in range(len(basis)))
    return QubitState(basis, amplitudes)


def interpret_superposition(
    p: Proposition,
    basis: Basis,
    tolerance: float = INPUT_TOLERANCE,
) -> QubitState:
    if not isinstance(p, QuantumSuperposition):
        msg = f"Expected a superposition, got {render_proposition(p)}"
        raise NotSuperposition(msg)

    amplitudes = [complex(0.0, 0.0)] * len(basis)
    seen: set[str] = set()
    for degree, operand in p.parts:
        if not isinstance(operand, Atom):
            msg = f"Superposition operands must be atoms, got {render_proposition(operand)}"
            raise MalformedProposition(msg)
        if operand.name in seen:
            msg = f"Atom {operand.name!r} appears twice in {render_proposition(p)}"
            raise DuplicateOperand(msg)
        seen.add(operand.name)
        amplitudes[basis.index_of(operand.name)] = degree

    require_metadata(p.degrees, tolerance)
    return QubitState(basis, tuple(amplitudes), tolerance=max(tolerance, STATE_TOLERANCE))


def interpret(p: Proposition, basis: Basis, tolerance: float = INPUT_TOLERANCE) -> QubitState:
    if isinstance(p, Atom):
        return interpret_atom(p.name, basis)
    return interpret_superposition(p, basis, tolerance)


def truth_value(a: Assertion) -> TruthValue:
    if a.classical:
        return TruthValue(1.0)
    return TruthValue.of(modulus_squared(a.degree), tolerance=a.tolerance)


def truth_profile(s: QubitState) -> tuple[TruthValue, ...]:
    return tuple(TruthValue.of(modulus_squared(amplitude), s.tolerance) for amplitude in s.amplitudes)


def state_records(s: QubitState) -> list[AmplitudeRecord]:
    return [
        AmplitudeRecord(atom=atom, re=amplitude.real, im=amplitude.imag, truth=truth.value)
        for atom, amplitude, truth in zip(s.basis.atoms, s.amplitudes, truth_profile(s), strict=True)
    ]
