from __future__ import annotations

import math

import numpy as np
import pytest

from app.core.errors import (
    DuplicateOperand,
    MalformedProposition,
    NormalizationViolation,
    NotSuperposition,
    UnknownAtom,
    UsageError,
)
from app.domain.propositions import Assertion, Atom
from app.services.parser.formula_parser import parse_proposition
from app.services.semantics.amplitudes import (
    Basis,
    QubitState,
    TruthValue,
    interpret,
    interpret_superposition,
    state_records,
    truth_profile,
    truth_value,
)

BASIS = Basis(("p0", "p1"))


def test_superposition_is_interpreted_as_qubit_state() -> None:
    state = interpret(parse_proposition("(p0 [0.6, 0.8i]& p1)"), BASIS)

    assert state.amplitudes == (complex(0.6, 0.0), complex(0.0, 0.8))
    assert [truth.value for truth in truth_profile(state)] == pytest.approx([0.36, 0.64], abs=1e-12)


def test_operand_order_follows_the_basis() -> None:
    state = interpret(parse_proposition("(p1 [0.8i, 0.6]& p0)"), BASIS)

    assert state.amplitude("p0") == complex(0.6, 0.0)
    assert state.amplitude("p1") == complex(0.0, 0.8)


def test_atom_is_a_basis_state() -> None:
    state = interpret(Atom("p1"), BASIS)

    assert state.amplitudes == (0j, complex(1.0, 0.0))
    assert [truth.value for truth in truth_profile(state)] == [0.0, 1.0]


def test_vector_is_read_only() -> None:
    vector = interpret(Atom("p0"), BASIS).vector

    assert vector.dtype == np.complex128
    with pytest.raises(ValueError):
        vector[0] = 0.0


def test_interpret_errors() -> None:
    with pytest.raises(UnknownAtom):
        interpret(parse_proposition("(p0 [0.6, 0.8]& p2)"), BASIS)
    with pytest.raises(DuplicateOperand):
        interpret(parse_proposition("(p0 [0.6, 0.8]& p0)"), BASIS)
    with pytest.raises(NormalizationViolation):
        interpret(parse_proposition("(p0 [1, 1]& p1)"), BASIS)
    with pytest.raises(NotSuperposition):
        interpret_superposition(Atom("p0"), BASIS)
    with pytest.raises(MalformedProposition):
        interpret(parse_proposition("((p0 & p1) [0.6, 0.8]& p2)"), Basis(("p0", "p1", "p2")))


def test_basis_rejects_duplicates() -> None:
    with pytest.raises(DuplicateOperand):
        Basis(("p0", "p0"))


def test_in_basis_permutes_amplitudes() -> None:
    state = interpret(parse_proposition("(p0 [0.6, 0.8i]& p1)"), BASIS)

    reordered = state.in_basis(["p1", "p0"])

    assert reordered.basis.atoms == ("p1", "p0")
    assert reordered.amplitudes == (complex(0.0, 0.8), complex(0.6, 0.0))
    with pytest.raises(UsageError):
        state.in_basis(["p0", "p2"])


def test_state_constructor_rejects_unnormalized_amplitudes() -> None:
    with pytest.raises(NormalizationViolation):
        QubitState(BASIS, (complex(0.6, 0.0), complex(0.6, 0.0)))


def test_truth_value_bounds() -> None:
    with pytest.raises(ValueError):
        TruthValue(1.1)
    assert TruthValue.of(1.0 + 1e-12).value == 1.0
    assert TruthValue.of(-1e-12).value == 0.0


def test_truth_value_of_assertions() -> None:
    assert truth_value(Assertion.asserted(Atom("A"))).value == 1.0
    assert truth_value(Assertion.graded(0.6, Atom("A"))).value == pytest.approx(0.36, abs=1e-15)
    assert truth_value(Assertion.graded(0.8j, Atom("A"))).value == pytest.approx(0.64, abs=1e-15)


def test_state_records() -> None:
    records = state_records(interpret(parse_proposition("(p0 [0.6, 0.8i]& p1)"), BASIS))

    assert [(record.atom, record.re, record.im) for record in records] == [("p0", 0.6, 0.0), ("p1", 0.0, 0.8)]
    assert records[1].truth == pytest.approx(0.64)


def test_profiles_sum_to_one_and_violations_are_rejected() -> None:
    rng = np.random.default_rng(3)
    for _ in range(1000):
        size = int(rng.integers(2, 5))
        basis = Basis(tuple(f"p{index}" for index in range(size)))
        raw = rng.normal(size=size) + 1j * rng.normal(size=size)
        degrees = raw / np.sqrt(np.sum(np.abs(raw) ** 2))
        text = f"(p0 [{', '.join(_literal(complex(d)) for d in degrees)}]& {', '.join(basis.atoms[1:])})"
        superposition = parse_proposition(text)

        state = interpret(superposition, basis)

        assert math.fsum(truth.value for truth in truth_profile(state)) == pytest.approx(1.0, abs=1e-9)

        inflated = degrees * math.sqrt(1.0 + 1e-5)
        text = f"(p0 [{', '.join(_literal(complex(d)) for d in inflated)}]& {', '.join(basis.atoms[1:])})"
        with pytest.raises(NormalizationViolation):
            interpret(parse_proposition(text), basis)


def _literal(degree: complex) -> str:
    sign = "-" if degree.imag < 0 else "+"
    return f"{degree.real!r}{sign}{abs(degree.imag)!r}i"
