"""Parsing, checking and printing of norm specifications."""

from __future__ import annotations

from dataclasses import dataclass

from .ast import (
    ARITHMETIC,
    COMPARISONS,
    BinOp,
    BinOpKind,
    BoolLit,
    Declaration,
    DeclKind,
    DomainKind,
    Expr,
    HoldsExpr,
    InstanceTemplate,
    IntLit,
    Literal,
    NotExpr,
    Openness,
    Placeholder,
    PlaceholderRef,
    Ref,
    Specification,
    Statement,
    StatementKind,
    StrLit,
    TemplateArg,
    UnresolvedName,
)
from .diagnostics import Diagnostic, Severity, Span
from .flatten import flatten
from .lexer import Token, TokenKind, tokenize
from .parser import ParseResult, parse
from .printer import print_declaration, print_expr, print_spec, print_statement
from .validator import validate


@dataclass
class LoadResult:
    """A specification taken all the way through parse, check and flatten."""

    spec: Specification
    diagnostics: list[Diagnostic]

    @property
    def ok(self) -> bool:
        return not any(d.severity is Severity.ERROR for d in self.diagnostics)


def load_spec(source: str) -> LoadResult:
    parsed = parse(source)
    diagnostics = list(parsed.diagnostics)
    if diagnostics:
        return LoadResult(parsed.spec, diagnostics)
    diagnostics.extend(validate(parsed.spec))
    if any(d.severity is Severity.ERROR for d in diagnostics):
        return LoadResult(parsed.spec, diagnostics)
    flat, flat_diagnostics = flatten(parsed.spec)
    diagnostics.extend(flat_diagnostics)
    if any(d.severity is Severity.ERROR for d in diagnostics):
        return LoadResult(flat, diagnostics)
    diagnostics.extend(validate(flat))
    return LoadResult(flat, diagnostics)


__all__ = [
    "ARITHMETIC",
    "COMPARISONS",
    "BinOp",
    "BinOpKind",
    "BoolLit",
    "Declaration",
    "DeclKind",
    "Diagnostic",
    "DomainKind",
    "Expr",
    "HoldsExpr",
    "InstanceTemplate",
    "IntLit",
    "Literal",
    "LoadResult",
    "NotExpr",
    "Openness",
    "ParseResult",
    "Placeholder",
    "PlaceholderRef",
    "Ref",
    "Severity",
    "Span",
    "Specification",
    "Statement",
    "StatementKind",
    "StrLit",
    "TemplateArg",
    "Token",
    "TokenKind",
    "UnresolvedName",
    "flatten",
    "load_spec",
    "parse",
    "print_declaration",
    "print_expr",
    "print_spec",
    "print_statement",
    "tokenize",
    "validate",
]
