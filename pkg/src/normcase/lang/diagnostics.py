"""Source locations and diagnostics shared by the lexer, parser and validator."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


@dataclass(frozen=True)
class Span:
    """Half-open source region, 1-based lines and columns."""

    line: int
    col: int
    end_line: int
    end_col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"

    def merge(self, other: "Span") -> "Span":
        lo = min((self.line, self.col), (other.line, other.col))
        hi = max((self.end_line, self.end_col), (other.end_line, other.end_col))
        return Span(lo[0], lo[1], hi[0], hi[1])


# Default span for synthesized nodes (hand-built ASTs in tests, merged clauses).
NO_SPAN = Span(1, 1, 1, 1)


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    message: str
    span: Span

    def __str__(self) -> str:
        return f"{self.span}: {self.severity.value}: {self.message}"

    def to_json(self) -> dict:
        return {"severity": self.severity.value, "message": self.message,
                "line": self.span.line, "col": self.span.col}


def error(message: str, span: Span) -> Diagnostic:
    return Diagnostic(Severity.ERROR, message, span)


def warning(message: str, span: Span) -> Diagnostic:
    return Diagnostic(Severity.WARNING, message, span)
