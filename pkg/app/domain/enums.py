from enum import IntEnum, StrEnum


class ExitCode(IntEnum):
    OK = 0
    SYNTAX = 1
    SEMANTIC = 2


class RuleTag(StrEnum):
    CONVENTION_T = "convention-T"
    T_SCHEMA = "T-schema"
    ASSERTION_FORM = "assertion-form"
    CONVENTION_T_ASSERT = "convention-T-assert"
    T_SCHEMA_ASSERT = "T-schema-assert"
    DISCHARGE_QUOTES = "discharge-quotes"
    CONVENTION_PT = "convention-PT"
    DEFINITION = "definition"
    SUBSTITUTION = "substitution"
    T_SCHEMA_SUPERPOSITION = "T-schema-superposition"


class DerivationKind(StrEnum):
    CLASSICAL = "classical"
    QUANTUM = "quantum"


class Verdict(StrEnum):
    CLASSICALLY_CERTAIN = "classically certain"
    PROBABILISTICALLY_INCOMPLETE = "probabilistically incomplete"
    NOT_ASSERTED = "not asserted"


class StatementStatus(StrEnum):
    OK = "ok"
    SYNTAX_ERROR = "syntax_error"
    VIOLATION = "violation"
