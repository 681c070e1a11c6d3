from __future__ import annotations

import re
from dataclasses import dataclass

from app.core.errors import ParseError, ScriptError
from app.domain.degrees import INPUT_TOLERANCE
from app.domain.propositions import Assertion
from app.services.parser.formula_parser import parse_assertion

_BASIS_RE = re.compile(r"\s*basis\s*:(?P<atoms>.*)\Z")
_LABEL_RE = re.compile(r"\s*(?P<label>[A-Za-z_][A-Za-z0-9_]*)\s*:\s*")
_ATOM_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_COMPOSE_RE = re.compile(r"compose\b(?P<labels>.*)\Z")


@dataclass(frozen=True, slots=True)
class ComposeCommand:
    labels: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class ScriptStatement:
    label: str
    line: int
    offset: int
    body: str

    def parse(self, tolerance: float = INPUT_TOLERANCE) -> Assertion | ComposeCommand:
        compose = _COMPOSE_RE.match(self.body)
        if compose:
            labels = tuple(compose.group("labels").split())
            if not labels:
                msg = f"line {self.line}: compose needs statement labels"
                raise ParseError(msg, self.offset + len(self.body.encode("utf-8")), {"label"})
            return ComposeCommand(labels)
        try:
            return parse_assertion(self.body, tolerance)
        except ParseError as exc:
            msg = f"line {self.line}: {exc.reason}"
            raise ParseError(msg, self.offset + exc.offset, exc.expected) from exc


@dataclass(frozen=True, slots=True)
class Script:
    basis: tuple[str, ...]
    statements: tuple[ScriptStatement, ...]

    def statement(self, label: str) -> ScriptStatement:
        for item in self.statements:
            if item.label == label:
                return item
        msg = f"No statement labelled {label!r}"
        raise ScriptError(msg)


def load_script(source: str | bytes) -> Script:
    # Bodies stay unparsed so that a batch check can report every failing line.
    text = decode_script(source) if isinstance(source, bytes) else source
    basis: tuple[str, ...] | None = None
    statements: list[ScriptStatement] = []
    labels: set[str] = set()
    line_offset = 0

    for line_no, raw_line in enumerate(text.splitlines(keepends=True), start=1):
        start_offset = line_offset
        line_offset += len(raw_line.encode("utf-8"))
        content = raw_line.rstrip("\r\n").split("#", 1)[0]
        if not content.strip():
            continue

        basis_match = _BASIS_RE.match(content)
        if basis_match:
            if basis is not None:
                msg = f"line {line_no}: basis declared twice"
                raise ScriptError(msg)
            if statements:
                msg = f"line {line_no}: basis must be declared before any statement"
                raise ScriptError(msg)
            basis = _parse_basis(basis_match.group("atoms"), line_no)
            continue

        if basis is None:
            msg = f"line {line_no}: first statement must be 'basis: <atoms>'"
            raise ScriptError(msg)

        label_match = _LABEL_RE.match(content)
        if label_match:
            label = label_match.group("label")
            body_start = label_match.end()
        else:
            label = f"s{len(statements) + 1}"
            body_start = len(content) - len(content.lstrip())
        if label in labels:
            msg = f"line {line_no}: duplicate label {label!r}"
            raise ScriptError(msg)
        labels.add(label)

        body = content[body_start:].rstrip()
        offset = start_offset + len(content[:body_start].encode("utf-8"))
        statements.append(ScriptStatement(label=label, line=line_no, offset=offset, body=body))

    if basis is None:
        msg = "Script has no 'basis:' declaration"
        raise ScriptError(msg)
    return Script(basis=basis, statements=tuple(statements))


def _parse_basis(raw: str, line_no: int) -> tuple[str, ...]:
    atoms = tuple(raw.split())
    if not atoms:
        msg = f"line {line_no}: basis declares no atoms"
        raise ScriptError(msg)
    for atom in atoms:
        if not _ATOM_RE.match(atom):
            msg = f"line {line_no}: basis atom {atom!r} is not an identifier"
            raise ScriptError(msg)
    if len(set(atoms)) != len(atoms):
        msg = f"line {line_no}: basis atoms must be distinct"
        raise ScriptError(msg)
    return atoms


def decode_script(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        msg = f"Script is not valid UTF-8 ({exc.reason})"
        raise ParseError(msg, exc.start, {"UTF-8 text"}) from exc
