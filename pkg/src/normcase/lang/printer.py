"""Canonical text rendering for specifications.

`parse(print_spec(spec))` yields an AST equal to `spec` (spans aside), which
is what the formatter and the round-trip tests lean on.
"""

from __future__ import annotations

from .ast import (
    BinOp,
    BinOpKind,
    BoolLit,
    COMPARISONS,
    Declaration,
    DeclKind,
    DomainKind,
    Expr,
    HoldsExpr,
    InstanceTemplate,
    IntLit,
    NotExpr,
    Placeholder,
    PlaceholderRef,
    Ref,
    Specification,
    Statement,
    StatementKind,
    StrLit,
    TemplateArg,
    UnresolvedName,
    default_openness,
)

_KIND_WORDS = {
    DeclKind.FACT: "Fact",
    DeclKind.VAR: "Var",
    DeclKind.BOOL: "Bool",
    DeclKind.ACT: "Act",
    DeclKind.PHYSICAL_ACT: "Physical Act",
    DeclKind.DUTY: "Duty",
}

_UNQUOTE = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t"}

# Precedence levels mirror the grammar: || < && < Not < comparisons < +- < *.
_PREC = {
    BinOpKind.OR: 1,
    BinOpKind.AND: 2,
    BinOpKind.LT: 4, BinOpKind.LE: 4, BinOpKind.EQ: 4,
    BinOpKind.NE: 4, BinOpKind.GE: 4, BinOpKind.GT: 4,
    BinOpKind.ADD: 5, BinOpKind.SUB: 5,
    BinOpKind.MUL: 6,
}
_ATOM = 99


def quote(text: str) -> str:
    return '"' + "".join(_UNQUOTE.get(ch, ch) for ch in text) + '"'


def _prec(expr: Expr) -> int:
    if isinstance(expr, BinOp):
        return _PREC[expr.op]
    if isinstance(expr, NotExpr):
        return 3
    return _ATOM


def print_arg(arg: TemplateArg) -> str:
    if arg is Placeholder.ACTOR:
        return "Actor"
    if arg is Placeholder.RECIPIENT:
        return "Recipient"
    if isinstance(arg, UnresolvedName):
        return arg.name
    if isinstance(arg, str):
        return quote(arg)
    return str(arg)


def print_template(template: InstanceTemplate) -> str:
    if not template.args:
        return template.type_name
    inner = ", ".join(print_arg(a) for a in template.args)
    return f"{template.type_name}({inner})"


def print_expr(expr: Expr, context: int = 0) -> str:
    text = _render(expr)
    if _prec(expr) < context:
        return f"({text})"
    return text


def _render(expr: Expr) -> str:
    if isinstance(expr, IntLit):
        return str(expr.value)
    if isinstance(expr, StrLit):
        return quote(expr.value)
    if isinstance(expr, BoolLit):
        return "True" if expr.value else "False"
    if isinstance(expr, PlaceholderRef):
        return "Actor" if expr.placeholder is Placeholder.ACTOR else "Recipient"
    if isinstance(expr, HoldsExpr):
        return f"Holds({print_template(expr.template)})"
    if isinstance(expr, Ref):
        if not expr.args:
            return expr.name
        inner = ", ".join(print_arg(a) for a in expr.args)
        return f"{expr.name}({inner})"
    if isinstance(expr, NotExpr):
        return f"Not {print_expr(expr.operand, 3)}"
    if isinstance(expr, BinOp):
        own = _PREC[expr.op]
        if expr.op in COMPARISONS:
            # Comparisons do not chain, so a comparison operand needs parens.
            left = print_expr(expr.left, own + 1)
            right = print_expr(expr.right, own + 1)
        else:
            left = print_expr(expr.left, own)
            right = print_expr(expr.right, own + 1)
        return f"{left} {expr.op.value} {right}"
    raise TypeError(f"unprintable expression node: {expr!r}")


def print_declaration(decl: Declaration) -> str:
    parts: list[str] = []
    if decl.openness is not default_openness(decl.kind):
        parts.append(decl.openness.value)
    parts.append(_KIND_WORDS[decl.kind])
    parts.append(decl.name)
    if decl.domain is DomainKind.INT:
        parts.append("Identified by Int")
    elif decl.domain is DomainKind.STRING:
        parts.append("Identified by String")
    for word, param in (
        ("Actor", decl.actor_param),
        ("Recipient", decl.recipient_param),
        ("Holder", decl.holder_param),
        ("Claimant", decl.claimant_param),
    ):
        if param is not None:
            parts.append(f"{word} {param}")
    if decl.syncs_with is not None:
        parts.append(f"Syncs with {decl.syncs_with}")
    if decl.extends is not None:
        parts.append(f"Extends {decl.extends}")
    for word, expr in (
        ("Holds when", decl.holds_when),
        ("Conditioned by", decl.conditioned_by),
        ("Violated when", decl.violated_when),
    ):
        if expr is not None:
            parts.append(f"{word} {print_expr(expr)}")
    if decl.creates:
        parts.append("Creates " + ", ".join(print_template(t) for t in decl.creates))
    if decl.terminates:
        parts.append("Terminates " + ", ".join(print_template(t) for t in decl.terminates))
    if decl.terminated_by:
        parts.append("Terminated by " + ", ".join(decl.terminated_by))
    return " ".join(parts) + "."


def print_statement(stmt: Statement) -> str:
    if stmt.kind is StatementKind.ASSIGN:
        if isinstance(stmt.arg, bool):
            lit = "True" if stmt.arg else "False"
        elif isinstance(stmt.arg, str):
            lit = quote(stmt.arg)
        else:
            lit = str(stmt.arg)
        return f"={stmt.type_name}({lit})."
    head = "+" if stmt.kind is StatementKind.CREATE else "-"
    if stmt.arg is None:
        return f"{head}{stmt.type_name}."
    lit = quote(stmt.arg) if isinstance(stmt.arg, str) else str(stmt.arg)
    return f"{head}{stmt.type_name}({lit})."


def print_spec(spec: Specification) -> str:
    lines = [print_declaration(d) for d in spec.declarations]
    if spec.declarations and spec.statements:
        lines.append("")
    lines.extend(print_statement(s) for s in spec.statements)
    return "\n".join(lines) + ("\n" if lines else "")
