from __future__ import annotations

import math
import re
from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum

from app.core.errors import MalformedProposition, ParseError
from app.domain.degrees import INPUT_TOLERANCE
from app.domain.propositions import (
    Assertion,
    Atom,
    ClassicalAnd,
    LukaImplies,
    LukaNeg,
    LukaStrongAnd,
    Probably,
    Proposition,
    QuantumSuperposition,
)

_REAL = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"[+-]?{_REAL}(?:[+-]{_REAL}i|i)?")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_WS_RE = re.compile(r"\s+")

_PROPOSITION_START = frozenset({"atom", "'('", "'~'", "'P('"})


class TokenKind(StrEnum):
    TURNSTILE = "'|-'"
    ARROW = "'->'"
    LBRACK = "'['"
    RBRACK = "']'"
    LPAREN = "'('"
    RPAREN = "')'"
    AMP = "'&'"
    STAR = "'*'"
    TILDE = "'~'"
    COMMA = "','"
    COMPLEX = "complex literal"
    IDENT = "atom"
    EOF = "end of input"


_FIXED_TOKENS: tuple[tuple[str, TokenKind], ...] = (
    ("|-", TokenKind.TURNSTILE),
    ("->", TokenKind.ARROW),
    ("[", TokenKind.LBRACK),
    ("]", TokenKind.RBRACK),
    ("(", TokenKind.LPAREN),
    (")", TokenKind.RPAREN),
    ("&", TokenKind.AMP),
    ("*", TokenKind.STAR),
    ("~", TokenKind.TILDE),
    (",", TokenKind.COMMA),
)


@dataclass(frozen=True, slots=True)
class Token:
    kind: TokenKind
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    byte_pos = 0

    def advance(length: int) -> None:
        nonlocal pos, byte_pos
        byte_pos += len(text[pos : pos + length].encode("utf-8"))
        pos += length

    while pos < len(text):
        ws = _WS_RE.match(text, pos)
        if ws:
            advance(ws.end() - pos)
            continue
        for literal, kind in _FIXED_TOKENS:
            if text.startswith(literal, pos):
                tokens.append(Token(kind, literal, byte_pos))
                advance(len(literal))
                break
        else:
            number = _COMPLEX_RE.match(text, pos)
            ident = _IDENT_RE.match(text, pos)
            if number:
                tokens.append(Token(TokenKind.COMPLEX, number.group(0), byte_pos))
                advance(number.end() - pos)
            elif ident:
                tokens.append(Token(TokenKind.IDENT, ident.group(0), byte_pos))
                advance(ident.end() - pos)
            else:
                msg = f"Unexpected character {text[pos]!r}"
                raise ParseError(msg, byte_pos, {kind.value for _, kind in _FIXED_TOKENS} | {"atom"})
    tokens.append(Token(TokenKind.EOF, "", byte_pos))
    return tokens


def complex_from_literal(token: Token) -> complex:
    literal = token.text
    value = complex(literal[:-1] + "j") if literal.endswith("i") else complex(float(literal), 0.0)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        msg = f"Degree literal {literal!r} is not finite"
        raise ParseError(msg, token.offset, {TokenKind.COMPLEX.value})
    return value


class FormulaParser:
    def __init__(self, text: str, tolerance: float = INPUT_TOLERANCE) -> None:
        self._tokens = tokenize(text)
        self._index = 0
        self._tolerance = tolerance

    def parse_proposition(self) -> Proposition:
        result = self._implication()
        self._expect(TokenKind.EOF)
        return result

    def parse_assertion(self) -> Assertion:
        self._expect(TokenKind.TURNSTILE)
        if self._peek().kind is TokenKind.LBRACK:
            self._advance()
            degree = self._complex()
            self._expect(TokenKind.RBRACK)
            subject = self._implication()
            self._expect(TokenKind.EOF)
            return Assertion.graded(degree, subject, self._tolerance)
        subject = self._implication()
        self._expect(TokenKind.EOF)
        return Assertion.asserted(subject, self._tolerance)

    def parse_degree(self) -> complex:
        degree = self._complex()
        self._expect(TokenKind.EOF)
        return degree

    def _implication(self) -> Proposition:
        left = self._strong()
        if self._peek().kind is TokenKind.ARROW:
            arrow = self._advance()
            right = self._implication()
            return self._build(arrow, lambda: LukaImplies(left, right))
        return left

    def _strong(self) -> Proposition:
        left = self._conjunction()
        while self._peek().kind is TokenKind.STAR:
            star = self._advance()
            right = self._conjunction()
            left = self._build(star, lambda: LukaStrongAnd(left, right))
        return left

    def _conjunction(self) -> Proposition:
        left = self._unary()
        while True:
            token = self._peek()
            if token.kind is TokenKind.AMP:
                self._advance()
                right = self._unary()
                left = ClassicalAnd(left, right)
            elif token.kind is TokenKind.LBRACK:
                left = self._superposition(left)
            else:
                return left

    def _superposition(self, first: Proposition) -> Proposition:
        opening = self._expect(TokenKind.LBRACK)
        degrees = [self._complex()]
        while self._peek().kind is TokenKind.COMMA:
            self._advance()
            degrees.append(self._complex())
        if len(degrees) < 2:
            msg = "Superposition needs at least 2 degrees"
            raise ParseError(msg, self._peek().offset, {TokenKind.COMMA.value})
        self._expect(TokenKind.RBRACK)
        self._expect(TokenKind.AMP)
        operands = [first, self._unary()]
        while len(operands) < len(degrees):
            self._expect(TokenKind.COMMA)
            operands.append(self._unary())
        parts = tuple(zip(degrees, operands, strict=True))
        return self._build(opening, lambda: QuantumSuperposition(parts))

    def _unary(self) -> Proposition:
        token = self._peek()
        if token.kind is TokenKind.TILDE:
            self._advance()
            inner = self._unary()
            return self._build(token, lambda: LukaNeg(inner))
        if token.kind is TokenKind.IDENT:
            self._advance()
            if token.text == "P" and self._peek().kind is TokenKind.LPAREN:
                self._advance()
                inner = self._implication()
                self._expect(TokenKind.RPAREN)
                return self._build(token, lambda: Probably(inner))
            return Atom(token.text)
        if token.kind is TokenKind.LPAREN:
            self._advance()
            inner = self._implication()
            self._expect(TokenKind.RPAREN)
            return inner
        msg = f"Unexpected {token.kind.value}"
        raise ParseError(msg, token.offset, _PROPOSITION_START)

    def _complex(self) -> complex:
        token = self._expect(TokenKind.COMPLEX)
        return complex_from_literal(token)

    def _build(self, token: Token, factory: Callable[[], Proposition]) -> Proposition:
        try:
            return factory()
        except MalformedProposition as exc:
            raise ParseError(str(exc), token.offset) from exc

    def _peek(self) -> Token:
        return self._tokens[self._index]

    def _advance(self) -> Token:
        token = self._tokens[self._index]
        if token.kind is not TokenKind.EOF:
            self._index += 1
        return token

    def _expect(self, kind: TokenKind) -> Token:
        token = self._peek()
        if token.kind is not kind:
            msg = f"Unexpected {token.kind.value}"
            if token.text:
                msg = f"{msg} {token.text!r}"
            raise ParseError(msg, token.offset, {kind.value})
        return self._advance()


def parse_proposition(text: str) -> Proposition:
    return FormulaParser(text).parse_proposition()


def parse_assertion(text: str, tolerance: float = INPUT_TOLERANCE) -> Assertion:
    return FormulaParser(text, tolerance).parse_assertion()


def parse_degree(text: str) -> complex:
    return FormulaParser(text).parse_degree()
