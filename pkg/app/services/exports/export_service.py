from __future__ import annotations

from collections.abc import Iterable

import orjson

from app.domain.degrees import render_degree, render_value
from app.domain.records import (
    AmplitudeRecord,
    CheckSummary,
    FrequencyRecord,
    GoedelReport,
    OutcomeRecord,
    Record,
    StatementCheckRecord,
    StatisticsHeader,
    TraceRecord,
)
from app.services.truth.derivations import format_trace_line


class ExportService:
    def __init__(self, *, json_output: bool) -> None:
        self._json_output = json_output

    def render(self, records: Iterable[Record]) -> str:
        lines: list[str] = []
        for record in records:
            if self._json_output:
                lines.append(self.dumps(record).decode("utf-8"))
            else:
                lines.extend(render_human(record))
        return "".join(f"{line}\n" for line in lines)

    @staticmethod
    def dumps(record: Record) -> bytes:
        return orjson.dumps(record.model_dump(mode="json"), option=orjson.OPT_SORT_KEYS)


def render_human(record: Record) -> list[str]:
    match record:
        case AmplitudeRecord():
            return [f"{record.atom}\t{render_degree(complex(record.re, record.im))}\t{render_value(record.truth)}"]
        case StatisticsHeader():
            return [
                f"# seed={record.seed} trials={record.trials} atoms={' '.join(record.atoms)}",
                "atom\tcount\tfrequency\texpected",
            ]
        case FrequencyRecord():
            return [
                f"{record.atom}\t{record.count}\t{render_value(record.frequency)}\t{render_value(record.expected)}",
            ]
        case OutcomeRecord():
            return [
                f"# seed={record.seed}",
                f"{record.atom}\t{record.index}\t{render_value(record.probability)}\t{record.collapsed}",
            ]
        case TraceRecord():
            return [
                format_trace_line(line.number, line.judgment, line.rule, line.refs) for line in record.lines
            ]
        case GoedelReport():
            return list(record.lines)
        case StatementCheckRecord():
            detail = record.judgment if record.message is None else record.message
            return [f"{record.label}\tline {record.line}\t{record.status}\t{detail}"]
        case CheckSummary():
            return [f"# {record.statements} statements, {record.failures} failed, exit {record.exit_code}"]
    msg = f"No human rendering for {type(record).__name__}"
    raise TypeError(msg)
