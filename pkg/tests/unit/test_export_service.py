from __future__ import annotations

import orjson

from app.domain.records import AmplitudeRecord, CheckSummary, FrequencyRecord, StatisticsHeader
from app.services.exports.export_service import ExportService


def test_json_output_is_one_sorted_record_per_line() -> None:
    service = ExportService(json_output=True)

    text = service.render(
        [
            AmplitudeRecord(atom="p0", re=0.6, im=0.0, truth=0.36),
            CheckSummary(statements=1, failures=0, exit_code=0),
        ],
    )

    lines = text.splitlines()
    assert lines[0] == '{"atom":"p0","im":0.0,"kind":"amplitude","re":0.6,"truth":0.36}'
    assert orjson.loads(lines[1])["kind"] == "summary"
    assert text.endswith("\n")


def test_human_output_is_tab_separated() -> None:
    service = ExportService(json_output=False)

    text = service.render(
        [
            StatisticsHeader(seed=42, trials=10, atoms=["p0", "p1"]),
            FrequencyRecord(atom="p0", count=3, frequency=0.3, expected=0.30000000000000004),
            AmplitudeRecord(atom="p1", re=0.0, im=0.8, truth=0.6400000000000001),
        ],
    )

    assert text == (
        "# seed=42 trials=10 atoms=p0 p1\n"
        "atom\tcount\tfrequency\texpected\n"
        "p0\t3\t0.3\t0.3\n"
        "p1\t0.8i\t0.64\n"
    )
