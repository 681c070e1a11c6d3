from __future__ import annotations

import numpy as np
import pytest

from app.core.errors import ArityError, NormalizationViolation, NotClassical, NotConjunction, NotSuperposition
from app.domain.propositions import Assertion, Atom, ClassicalAnd, QuantumSuperposition
from app.services.meta.meta_calculus import (
    MetaDataConstraint,
    check_metadata,
    classical_equation,
    compose_classical,
    compose_quantum,
    decompose_classical,
    decompose_quantum,
    quantum_equation,
)
from app.services.semantics.amplitudes import truth_value


def _graded(degree: complex, name: str) -> Assertion:
    return Assertion.graded(degree, Atom(name))


def test_compose_classical_builds_asserted_conjunction() -> None:
    result = compose_classical(Assertion.asserted(Atom("A")), Assertion.asserted(Atom("B")))

    assert result == Assertion.asserted(ClassicalAnd(Atom("A"), Atom("B")))
    assert decompose_classical(result) == (Assertion.asserted(Atom("A")), Assertion.asserted(Atom("B")))


def test_compose_classical_rejects_graded_parts() -> None:
    with pytest.raises(NotClassical):
        compose_classical(_graded(0.6, "A"), Assertion.asserted(Atom("B")))


def test_decompose_classical_errors() -> None:
    with pytest.raises(NotConjunction):
        decompose_classical(Assertion.asserted(Atom("A")))
    with pytest.raises(NotClassical):
        decompose_classical(Assertion.graded(0.6, ClassicalAnd(Atom("A"), Atom("B"))))


def test_classical_equation_rendering() -> None:
    equation = classical_equation(Assertion.asserted(Atom("A")), Assertion.asserted(Atom("B")))

    assert equation == "|- (A & B) iff |- A and |- B"


def test_compose_quantum_keeps_degrees() -> None:
    result = compose_quantum([_graded(0.6, "p0"), _graded(0.8j, "p1")])

    assert result.classical
    assert str(result) == "|- (p0 [0.6, 0.8i]& p1)"
    assert decompose_quantum(result) == [_graded(0.6, "p0"), _graded(0.8j, "p1")]


def test_quantum_equation_rendering() -> None:
    equation = quantum_equation([_graded(0.6, "p0"), _graded(0.8j, "p1")])

    assert equation == "|- (p0 [0.6, 0.8i]& p1) iff |-[0.6] p0 and |-[0.8i] p1"


def test_compose_quantum_needs_two_parts() -> None:
    with pytest.raises(ArityError):
        compose_quantum([_graded(1.0, "p0")])


def test_compose_quantum_rejects_unnormalized_degrees() -> None:
    with pytest.raises(NormalizationViolation) as exc_info:
        compose_quantum([_graded(1.0, "p0"), _graded(1.0, "p1")])

    assert "|1|^2 + |1|^2 = 2" in str(exc_info.value)


def test_decompose_quantum_errors() -> None:
    with pytest.raises(NotSuperposition):
        decompose_quantum(Assertion.asserted(Atom("p0")))
    superposition = QuantumSuperposition(((0.6, Atom("p0")), (0.8j, Atom("p1"))))
    with pytest.raises(NotClassical):
        decompose_quantum(Assertion.graded(0.5, superposition))


def test_metadata_tolerance_boundary() -> None:
    assert check_metadata([complex(0.6, 0.0), complex(0.0, 0.8)])
    assert check_metadata([complex(np.sqrt(0.5 + 4e-7), 0.0), complex(np.sqrt(0.5), 0.0)])
    assert not check_metadata([complex(np.sqrt(0.5 + 1e-5), 0.0), complex(np.sqrt(0.5), 0.0)])
    assert MetaDataConstraint((1.0, 1.0)).describe() == "|1|^2 + |1|^2 = 2"


def test_quantum_round_trip_is_bit_exact_on_random_corpus() -> None:
    rng = np.random.default_rng(20240611)
    for _ in range(1000):
        size = int(rng.integers(2, 5))
        raw = rng.normal(size=size) + 1j * rng.normal(size=size)
        degrees = [complex(value) for value in raw / np.sqrt(np.sum(np.abs(raw) ** 2))]
        parts = [_graded(degree, f"p{index}") for index, degree in enumerate(degrees)]

        recovered = decompose_quantum(compose_quantum(parts))

        assert [part.degree for part in recovered] == degrees
        assert recovered == parts


def test_classical_round_trip_on_random_atom_pairs() -> None:
    rng = np.random.default_rng(7)
    for _ in range(1000):
        left, right = (f"a{int(value)}" for value in rng.integers(0, 10_000, size=2))
        a, b = Assertion.asserted(Atom(left)), Assertion.asserted(Atom(right))

        assert decompose_classical(compose_classical(a, b)) == (a, b)


def test_degree_one_graded_pipeline_matches_classical_pipeline() -> None:
    rng = np.random.default_rng(11)
    for _ in range(50):
        left, right = (f"q{int(value)}" for value in rng.integers(0, 1000, size=2))
        graded_parts = (_graded(1.0, left), _graded(1.0, right))
        classical_parts = (Assertion.asserted(Atom(left)), Assertion.asserted(Atom(right)))

        graded = compose_classical(*graded_parts)
        classical = compose_classical(*classical_parts)

        assert graded == classical
        assert decompose_classical(graded) == decompose_classical(classical)
        assert [truth_value(part).value for part in graded_parts] == [1.0, 1.0]
        assert truth_value(classical).value == 1.0
