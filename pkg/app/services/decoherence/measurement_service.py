from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import numpy.typing as npt
import structlog

from app.core.errors import UsageError
from app.domain.propositions import Assertion, Atom
from app.domain.records import FrequencyRecord, OutcomeRecord, StatisticsHeader
from app.services.semantics.amplitudes import QubitState, TruthValue, truth_profile

logger = structlog.get_logger(__name__)

MAX_SEED = 2**64


class RandomStream:
    def __init__(self, seed: int, counter: int = 0) -> None:
        if not 0 <= seed < MAX_SEED:
            msg = f"Seed must be a 64-bit unsigned integer, got {seed}"
            raise UsageError(msg)
        if counter < 0:
            msg = f"Stream counter must be nonnegative, got {counter}"
            raise UsageError(msg)
        self._seed = seed
        self._counter = 0
        self._generator = np.random.Generator(np.random.Philox(key=seed))
        if counter:
            self.draw_many(counter)

    @property
    def seed(self) -> int:
        return self._seed

    @property
    def counter(self) -> int:
        return self._counter

    def draw(self) -> float:
        self._counter += 1
        return float(self._generator.random())

    def draw_many(self, count: int) -> npt.NDArray[np.float64]:
        self._counter += count
        return self._generator.random(count)


@dataclass(frozen=True, slots=True)
class MeasurementOutcome:
    index: int
    atom: str
    collapsed: Assertion
    probability: TruthValue


def _cumulative(s: QubitState) -> tuple[npt.NDArray[np.float64], int]:
    vector = s.vector
    probabilities = np.clip(vector.real * vector.real + vector.imag * vector.imag, 0.0, 1.0)
    last_positive = int(np.flatnonzero(probabilities > 0.0)[-1])
    return np.cumsum(probabilities), last_positive


def _select(cdf: npt.NDArray[np.float64], last_positive: int, draws: npt.NDArray[np.float64]) -> npt.NDArray[np.intp]:
    # First index whose cumulative mass strictly exceeds the draw.
    indices = np.searchsorted(cdf, draws, side="right")
    return np.minimum(indices, last_positive)


def measure(s: QubitState, rng: RandomStream) -> MeasurementOutcome:
    cdf, last_positive = _cumulative(s)
    index = int(_select(cdf, last_positive, np.array([rng.draw()]))[0])
    atom = s.basis.atoms[index]
    return MeasurementOutcome(
        index=index,
        atom=atom,
        collapsed=Assertion.asserted(Atom(atom)),
        probability=truth_profile(s)[index],
    )


@dataclass(frozen=True, slots=True)
class MeasurementStatistics:
    seed: int
    trials: int
    atoms: tuple[str, ...]
    counts: tuple[int, ...]
    expected: tuple[TruthValue, ...]

    @property
    def frequencies(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(count, self.trials) for count in self.counts)

    def header(self) -> StatisticsHeader:
        return StatisticsHeader(seed=self.seed, trials=self.trials, atoms=list(self.atoms))

    def records(self) -> list[FrequencyRecord]:
        return [
            FrequencyRecord(atom=atom, count=count, frequency=float(frequency), expected=expected.value)
            for atom, count, frequency, expected in zip(
                self.atoms, self.counts, self.frequencies, self.expected, strict=True
            )
        ]


def measure_statistics(s: QubitState, trials: int, seed: int) -> MeasurementStatistics:
    if trials < 1:
        msg = f"Trials must be at least 1, got {trials}"
        raise UsageError(msg)

    cdf, last_positive = _cumulative(s)
    draws = RandomStream(seed).draw_many(trials)
    tally = np.bincount(_select(cdf, last_positive, draws), minlength=len(s.basis))
    counts = tuple(int(count) for count in tally)

    logger.info(
        "measure.statistics_completed",
        seed=seed,
        trials=trials,
        atoms=list(s.basis.atoms),
        counts=list(counts),
    )
    return MeasurementStatistics(
        seed=seed,
        trials=trials,
        atoms=s.basis.atoms,
        counts=counts,
        expected=truth_profile(s),
    )


def outcome_record(outcome: MeasurementOutcome, seed: int) -> OutcomeRecord:
    return OutcomeRecord(
        seed=seed,
        index=outcome.index,
        atom=outcome.atom,
        collapsed=str(outcome.collapsed),
        probability=outcome.probability.value,
    )
