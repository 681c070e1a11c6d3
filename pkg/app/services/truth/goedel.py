from __future__ import annotations

from app.domain.degrees import INPUT_TOLERANCE, ensure_in_range, modulus_squared, render_value
from app.domain.enums import Verdict
from app.domain.propositions import Assertion, Atom, Probably, render_assertion
from app.domain.records import GoedelReport
from app.services.semantics.amplitudes import TruthValue, truth_value
from app.services.truth.conventions import render_probably_true

# Reserved atoms; the sentence itself is opaque here.
GOEDEL_ATOM = "G_F"
CONSISTENCY_ATOM = "Con_F"


def goedel_report(degree: complex, tolerance: float = INPUT_TOLERANCE) -> GoedelReport:
    degree = ensure_in_range(degree, tolerance)
    assertion = Assertion.graded(degree, Atom(GOEDEL_ATOM), tolerance)
    value = truth_value(assertion).value
    # G_F and Con_F are identified, so they share the probability.
    con_probability = TruthValue.of(modulus_squared(degree), tolerance).value

    if value == 1.0:
        verdict = Verdict.CLASSICALLY_CERTAIN
    elif value == 0.0:
        verdict = Verdict.NOT_ASSERTED
    else:
        verdict = Verdict.PROBABILISTICALLY_INCOMPLETE

    goedel, consistency = Probably(Atom(GOEDEL_ATOM)), Probably(Atom(CONSISTENCY_ATOM))
    identification = f"{GOEDEL_ATOM} = {CONSISTENCY_ATOM}"
    lines = [
        render_assertion(assertion),
        render_probably_true(GOEDEL_ATOM),
        f"v({goedel}) = p({GOEDEL_ATOM}) = {render_value(value)}",
        identification,
        f"{goedel} = {consistency}",
        f"p({CONSISTENCY_ATOM}) = {render_value(con_probability)}",
        f"verdict: {verdict}",
    ]
    return GoedelReport(
        assertion=render_assertion(assertion),
        truth_value=value,
        identification=identification,
        con_probability=con_probability,
        verdict=verdict,
        lines=lines,
    )
