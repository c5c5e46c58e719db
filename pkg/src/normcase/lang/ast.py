"""AST for the norm specification language.

Nodes carry their source span for diagnostics, but spans never participate in
equality: two parses of the same text compare equal even when whitespace moved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from .diagnostics import NO_SPAN, Span


class DeclKind(Enum):
    FACT = "Fact"
    VAR = "Var"
    BOOL = "Bool"
    ACT = "Act"
    PHYSICAL_ACT = "Physical Act"
    DUTY = "Duty"


class Openness(Enum):
    OPEN = "Open"
    CLOSED = "Closed"


class DomainKind(Enum):
    INT = "Int"
    STRING = "String"
    NONE = "NoArg"


class Placeholder(Enum):
    """Act parameter slots usable in templates and expressions."""

    ACTOR = "Actor"
    RECIPIENT = "Recipient"


# A template argument: a ground literal, a bound parameter, or a name that did
# not resolve to the declaration's parameters (flagged by the validator).
@dataclass(frozen=True)
class UnresolvedName:
    name: str
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


TemplateArg = Union[int, str, Placeholder, UnresolvedName]
Literal = Union[int, str, bool]


@dataclass(frozen=True)
class InstanceTemplate:
    type_name: str
    args: tuple[TemplateArg, ...] = ()
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------

class BinOpKind(Enum):
    AND = "&&"
    OR = "||"
    LT = "<"
    LE = "<="
    EQ = "=="
    NE = "!="
    GE = ">="
    GT = ">"
    ADD = "+"
    SUB = "-"
    MUL = "*"


COMPARISONS = frozenset(
    {BinOpKind.LT, BinOpKind.LE, BinOpKind.EQ, BinOpKind.NE, BinOpKind.GE, BinOpKind.GT}
)
ARITHMETIC = frozenset({BinOpKind.ADD, BinOpKind.SUB, BinOpKind.MUL})


@dataclass(frozen=True)
class IntLit:
    value: int
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True)
class StrLit:
    value: str
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True)
class BoolLit:
    value: bool
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True)
class Ref:
    """Reference to a declared type, bare (`income`) or applied (`tag("x")`)."""

    name: str
    args: tuple[TemplateArg, ...] = ()
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True)
class PlaceholderRef:
    placeholder: Placeholder
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True)
class HoldsExpr:
    template: InstanceTemplate
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True)
class NotExpr:
    operand: "Expr"
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: BinOpKind
    left: "Expr"
    right: "Expr"
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


Expr = Union[IntLit, StrLit, BoolLit, Ref, PlaceholderRef, HoldsExpr, NotExpr, BinOp]


# ---------------------------------------------------------------------------
# Declarations and statements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Declaration:
    kind: DeclKind
    name: str
    openness: Openness
    domain: DomainKind = DomainKind.NONE
    actor_param: Optional[str] = None
    recipient_param: Optional[str] = None
    holder_param: Optional[str] = None
    claimant_param: Optional[str] = None
    syncs_with: Optional[str] = None
    extends: Optional[str] = None
    holds_when: Optional[Expr] = None
    conditioned_by: Optional[Expr] = None
    violated_when: Optional[Expr] = None
    creates: tuple[InstanceTemplate, ...] = ()
    terminates: tuple[InstanceTemplate, ...] = ()
    terminated_by: tuple[str, ...] = ()
    span: Span = field(default=NO_SPAN, compare=False, repr=False)

    @property
    def is_act(self) -> bool:
        return self.kind in (DeclKind.ACT, DeclKind.PHYSICAL_ACT)

    @property
    def is_fact_like(self) -> bool:
        return self.kind in (DeclKind.FACT, DeclKind.VAR, DeclKind.BOOL)

    @property
    def is_derived(self) -> bool:
        return self.kind is DeclKind.FACT and self.holds_when is not None


class StatementKind(Enum):
    CREATE = "+"
    TERMINATE = "-"
    ASSIGN = "="


@dataclass(frozen=True)
class Statement:
    kind: StatementKind
    type_name: str
    arg: Optional[Literal] = None
    span: Span = field(default=NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True)
class Specification:
    declarations: tuple[Declaration, ...] = ()
    statements: tuple[Statement, ...] = ()

    def declaration(self, name: str) -> Optional[Declaration]:
        return self._by_name().get(name)

    def _by_name(self) -> dict[str, Declaration]:
        # Tiny specs at desk scale; rebuild rather than cache on a frozen node.
        return {d.name: d for d in self.declarations}

    @property
    def physical_acts(self) -> tuple[Declaration, ...]:
        return tuple(d for d in self.declarations if d.kind is DeclKind.PHYSICAL_ACT)

    @property
    def duties(self) -> tuple[Declaration, ...]:
        return tuple(d for d in self.declarations if d.kind is DeclKind.DUTY)


def default_openness(kind: DeclKind) -> Openness:
    """Open for the user-input types (Var, Bool), closed for everything else."""
    if kind in (DeclKind.VAR, DeclKind.BOOL):
        return Openness.OPEN
    return Openness.CLOSED
