from __future__ import annotations

from collections.abc import Mapping

from app.core.errors import MalformedProposition, UnvaluedAtom
from app.domain.propositions import (
    LukaImplies,
    LukaNeg,
    LukaStrongAnd,
    Probably,
    Proposition,
    render_proposition,
)
from app.services.semantics.amplitudes import TruthValue

Valuation = Mapping[Proposition, TruthValue | float]


def luka_neg(x: float) -> float:
    return 1.0 - x


def luka_strong_and(x: float, y: float) -> float:
    return max(0.0, x + y - 1.0)


def luka_implies(x: float, y: float) -> float:
    return min(1.0, 1.0 - x + y)


def luka_eval(p: Proposition, valuation: Valuation) -> TruthValue:
    return TruthValue.of(_evaluate(p, valuation))


def _evaluate(p: Proposition, valuation: Valuation) -> float:
    match p:
        case Probably():
            if p not in valuation:
                msg = f"No truth value for {render_proposition(p)}"
                raise UnvaluedAtom(msg)
            return float(valuation[p])
        case LukaNeg(inner=inner):
            return luka_neg(_evaluate(inner, valuation))
        case LukaStrongAnd(left=left, right=right):
            return luka_strong_and(_evaluate(left, valuation), _evaluate(right, valuation))
        case LukaImplies(left=left, right=right):
            return luka_implies(_evaluate(left, valuation), _evaluate(right, valuation))
    msg = f"Łukasiewicz evaluation needs a P-formula, got {render_proposition(p)}"
    raise MalformedProposition(msg)
