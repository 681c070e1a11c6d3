from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Any

import pytest

from app.core.errors import MalformedProposition, UnvaluedAtom
from app.domain.propositions import Atom, LukaImplies, LukaNeg, LukaStrongAnd, Probably, Proposition
from app.services.semantics.amplitudes import TruthValue
from app.services.truth.lukasiewicz import luka_eval, luka_implies, luka_neg, luka_strong_and

# Formulas as nested tuples: ("atom", i), ("neg", f), ("and", f, g), ("imp", f, g).
Formula = tuple[Any, ...]

ATOMS = (Probably(Atom("a")), Probably(Atom("b")))
GRID = (0.0, 0.25, 0.5, 0.75, 1.0)


def _formulas(connectives: int) -> list[Formula]:
    """All formulas over two atoms with exactly ``connectives`` connectives."""
    if connectives == 0:
        return [("atom", 0), ("atom", 1)]
    result: list[Formula] = [("neg", inner) for inner in _formulas(connectives - 1)]
    for left_size in range(connectives):
        for left in _formulas(left_size):
            for right in _formulas(connectives - 1 - left_size):
                result.append(("and", left, right))
                result.append(("imp", left, right))
    return result


def _build(formula: Formula) -> Proposition:
    match formula:
        case ("atom", index):
            return ATOMS[index]
        case ("neg", inner):
            return LukaNeg(_build(inner))
        case ("and", left, right):
            return LukaStrongAnd(_build(left), _build(right))
        case ("imp", left, right):
            return LukaImplies(_build(left), _build(right))
    raise AssertionError(formula)


def _oracle(formula: Formula, values: tuple[Fraction, Fraction]) -> Fraction:
    match formula:
        case ("atom", index):
            return values[index]
        case ("neg", inner):
            return 1 - _oracle(inner, values)
        case ("and", left, right):
            return max(Fraction(0), _oracle(left, values) + _oracle(right, values) - 1)
        case ("imp", left, right):
            return min(Fraction(1), 1 - _oracle(left, values) + _oracle(right, values))
    raise AssertionError(formula)


def _boolean(formula: Formula, values: tuple[bool, bool]) -> bool:
    match formula:
        case ("atom", index):
            return values[index]
        case ("neg", inner):
            return not _boolean(inner, values)
        case ("and", left, right):
            return _boolean(left, values) and _boolean(right, values)
        case ("imp", left, right):
            return (not _boolean(left, values)) or _boolean(right, values)
    raise AssertionError(formula)


CORPUS = [formula for size in range(4) for formula in _formulas(size)]


def test_connectives() -> None:
    assert luka_neg(0.25) == 0.75
    assert luka_strong_and(0.75, 0.5) == 0.25
    assert luka_strong_and(0.25, 0.5) == 0.0
    assert luka_implies(0.75, 0.25) == 0.5
    assert luka_implies(0.25, 0.75) == 1.0


def test_corpus_size() -> None:
    assert len(CORPUS) == 2 + 10 + 90 + 1010


def test_luka_eval_matches_brute_force_oracle() -> None:
    for x, y in itertools.product(GRID, repeat=2):
        valuation = {ATOMS[0]: TruthValue(x), ATOMS[1]: TruthValue(y)}
        exact = (Fraction(x), Fraction(y))
        for formula in CORPUS:
            assert luka_eval(_build(formula), valuation).value == float(_oracle(formula, exact))


def test_luka_eval_on_crisp_values_is_classical() -> None:
    for x, y in itertools.product((False, True), repeat=2):
        valuation = {ATOMS[0]: float(x), ATOMS[1]: float(y)}
        for formula in CORPUS:
            assert luka_eval(_build(formula), valuation).value == float(_boolean(formula, (x, y)))


def test_missing_valuation_is_reported() -> None:
    with pytest.raises(UnvaluedAtom):
        luka_eval(LukaNeg(Probably(Atom("c"))), {ATOMS[0]: 0.5})


def test_non_p_formula_is_rejected() -> None:
    with pytest.raises(MalformedProposition):
        luka_eval(Atom("a"), {})
