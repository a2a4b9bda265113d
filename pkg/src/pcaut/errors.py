"""Exception hierarchy. Every error carries a machine-readable ``code``."""

from __future__ import annotations


class PcautError(Exception):
    code = "ERROR"

    def __init__(self, message: str = "", **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict:
        out = {"error": self.code, "message": self.message}
        out.update({k: v for k, v in self.details.items() if v is not None})
        return out


class NotPGroup(PcautError):
    code = "NOT_P_GROUP"


class NotNormal(PcautError):
    code = "NOT_NORMAL"


class NotAbelian(PcautError):
    code = "NOT_ABELIAN"


class NotCentral(PcautError):
    code = "NOT_CENTRAL"


class IncompatibleIdentification(PcautError):
    code = "INCOMPATIBLE_IDENTIFICATION"


class NotASubgroup(PcautError):
    code = "NOT_A_SUBGROUP"


class InvalidGroupTable(PcautError):
    code = "INVALID_GROUP_TABLE"


class SizeCapExceeded(PcautError):
    code = "SIZE_CAP_EXCEEDED"


class InconsistentPresentation(PcautError):
    code = "INCONSISTENT_PRESENTATION"


class ParameterViolation(PcautError):
    code = "PARAMETER_VIOLATION"


class EvenPrime(ParameterViolation):
    code = "EVEN_PRIME"


class PresentationParseError(PcautError):
    """Base for DSL errors; carries 1-based ``line`` and ``column``."""

    code = "PARSE_ERROR"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(loc + message, line=line, column=column)
        self.line = line
        self.column = column


class PresentationSyntaxError(PresentationParseError):
    code = "SYNTAX_ERROR"


class UnknownGenerator(PresentationParseError):
    code = "UNKNOWN_GENERATOR"


class ExponentOutOfRange(PresentationParseError):
    code = "EXPONENT_OUT_OF_RANGE"


class DuplicateRelation(PresentationParseError):
    code = "DUPLICATE_RELATION"


class SearchBudgetExceeded(PcautError):
    code = "SEARCH_BUDGET_EXCEEDED"


class WrongClass(PcautError):
    code = "WRONG_CLASS"


class NotCaminaType(PcautError):
    code = "NOT_CAMINA_TYPE"


class PrecondFailed(PcautError):
    code = "PRECONDITION_FAILED"


class NotNilpotent(PcautError):
    code = "NOT_NILPOTENT"


class MixedPrimes(PcautError):
    code = "MIXED_PRIMES"


class NotStronglySkew(PcautError):
    code = "NOT_STRONGLY_SKEW"


class OddDimension(PcautError):
    code = "ODD_DIMENSION"


class ConditionsNotMet(PcautError):
    code = "CONDITIONS_NOT_MET"


class InputNotFound(PcautError):
    code = "FILE_NOT_FOUND"


class UsageError(PcautError):
    code = "USAGE_ERROR"
