"""Recursive-descent parser producing a Specification AST.

Each `.`-terminated form is parsed independently; a syntax error skips to the
next form so one pass reports every broken declaration.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from .ast import (
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
    default_openness,
)
from .diagnostics import Diagnostic, Span, error
from .lexer import Token, TokenKind, tokenize

_DECL_KEYWORDS = ("Fact", "Var", "Bool", "Act", "Physical", "Duty", "Event")

_REL_OPS = {
    "<": BinOpKind.LT,
    "<=": BinOpKind.LE,
    "==": BinOpKind.EQ,
    "!=": BinOpKind.NE,
    ">=": BinOpKind.GE,
    ">": BinOpKind.GT,
}


@dataclass
class ParseResult:
    spec: Specification
    diagnostics: list[Diagnostic]

    @property
    def ok(self) -> bool:
        return not self.diagnostics


class _FormError(Exception):
    """Raised to abandon the current form and resynchronize at the next '.'."""


class _Parser:
    def __init__(self, tokens: list[Token], source_end: Span):
        self.tokens = tokens
        self.i = 0
        self.source_end = source_end
        self.diagnostics: list[Diagnostic] = []

    # -- token plumbing -----------------------------------------------------

    def peek(self) -> Optional[Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    def here(self) -> Span:
        tok = self.peek()
        return tok.span if tok else self.source_end

    def fail(self, message: str, span: Optional[Span] = None) -> _FormError:
        self.diagnostics.append(error(message, span or self.here()))
        return _FormError()

    def expect_punct(self, symbol: str) -> Token:
        tok = self.peek()
        if tok is None or not tok.is_punct(symbol):
            got = tok.text if tok else "end of input"
            raise self.fail(f"expected '{symbol}', found {got!r}")
        return self.advance()

    def expect_kw(self, word: str) -> Token:
        tok = self.peek()
        if tok is None or not tok.is_kw(word):
            got = tok.text if tok else "end of input"
            raise self.fail(f"expected '{word}', found {got!r}")
        return self.advance()

    def expect_name(self, what: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind is not TokenKind.IDENT:
            got = tok.text if tok else "end of input"
            raise self.fail(f"expected {what}, found {got!r}")
        return self.advance()

    def synchronize(self) -> None:
        while not self.at_end():
            if self.advance().is_punct("."):
                return

    # -- top level ----------------------------------------------------------

    def parse_spec(self) -> Specification:
        declarations: list[Declaration] = []
        statements: list[Statement] = []
        while not self.at_end():
            tok = self.peek()
            try:
                if tok.is_punct("+", "-", "="):
                    statements.append(self.parse_statement())
                elif tok.is_kw("Open", "Closed", *_DECL_KEYWORDS):
                    declarations.append(self.parse_declaration())
                else:
                    raise self.fail(
                        f"expected a declaration or statement, found {tok.text!r}"
                    )
            except _FormError:
                self.synchronize()
        return Specification(tuple(declarations), tuple(statements))

    def parse_statement(self) -> Statement:
        lead = self.advance()
        if lead.text == "=":
            name = self.expect_name("a type name")
            self.expect_punct("(")
            lit = self.parse_literal(allow_bool=True)
            self.expect_punct(")")
            end = self.expect_punct(".")
            return Statement(StatementKind.ASSIGN, name.text, lit,
                             span=lead.span.merge(end.span))
        kind = StatementKind.CREATE if lead.text == "+" else StatementKind.TERMINATE
        name = self.expect_name("a type name")
        arg = None
        if self.peek() is not None and self.peek().is_punct("("):
            self.advance()
            arg = self.parse_literal(allow_bool=False)
            self.expect_punct(")")
        end = self.expect_punct(".")
        return Statement(kind, name.text, arg, span=lead.span.merge(end.span))

    def parse_literal(self, allow_bool: bool):
        tok = self.peek()
        if tok is None:
            raise self.fail("expected a literal")
        if tok.kind is TokenKind.INT:
            return self.advance().value
        if tok.kind is TokenKind.STRING:
            return self.advance().value
        if allow_bool and tok.is_kw("True", "False"):
            return self.advance().text == "True"
        raise self.fail(f"expected a literal, found {tok.text!r}")

    # -- declarations -------------------------------------------------------

    def parse_declaration(self) -> Declaration:
        start = self.here()
        openness: Optional[Openness] = None
        tok = self.peek()
        if tok.is_kw("Open", "Closed"):
            openness = Openness.OPEN if tok.text == "Open" else Openness.CLOSED
            self.advance()
            tok = self.peek()
            if tok is None:
                raise self.fail("expected a declaration kind")

        kind = self.parse_kind(tok)
        name = self.expect_name("a declaration name")

        domain = DomainKind.NONE
        if self.peek() is not None and self.peek().is_kw("Identified by"):
            self.advance()
            dom_tok = self.peek()
            if dom_tok is None or not dom_tok.is_kw("Int", "String"):
                raise self.fail("expected 'Int' or 'String' after 'Identified by'")
            self.advance()
            domain = DomainKind.INT if dom_tok.text == "Int" else DomainKind.STRING

        decl = Declaration(
            kind=kind,
            name=name.text,
            openness=openness if openness is not None else default_openness(kind),
            domain=domain,
        )
        decl = self.parse_clauses(decl)
        end = self.expect_punct(".")
        decl = replace(decl, span=start.merge(end.span))

        if kind is DeclKind.DUTY and (decl.holder_param is None or decl.claimant_param is None):
            # The form itself is well shaped, so no resynchronization is needed.
            self.diagnostics.append(error(
                f"Duty '{decl.name}' requires Holder and Claimant clauses", decl.span
            ))
        return _resolve_params(decl)

    def parse_kind(self, tok: Token) -> DeclKind:
        if tok.is_kw("Event"):
            raise self.fail("standalone Event declarations are not supported")
        if tok.is_kw("Physical"):
            self.advance()
            self.expect_kw("Act")
            return DeclKind.PHYSICAL_ACT
        for word, kind in (
            ("Fact", DeclKind.FACT),
            ("Var", DeclKind.VAR),
            ("Bool", DeclKind.BOOL),
            ("Act", DeclKind.ACT),
            ("Duty", DeclKind.DUTY),
        ):
            if tok.is_kw(word):
                self.advance()
                return kind
        raise self.fail(f"expected a declaration kind, found {tok.text!r}")

    def parse_clauses(self, decl: Declaration) -> Declaration:
        while True:
            tok = self.peek()
            if tok is None or tok.kind is not TokenKind.KEYWORD:
                return decl
            word = tok.text
            if word in ("Actor", "Recipient", "Holder", "Claimant"):
                self.advance()
                param = self.expect_name(f"a parameter name after '{word}'")
                decl = self.set_param(decl, word, param)
            elif word == "Syncs with":
                self.advance()
                target = self.expect_name("an act name after 'Syncs with'")
                decl = self.set_once(decl, "syncs_with", target.text, "Syncs with", tok.span)
            elif word == "Extends":
                self.advance()
                target = self.expect_name("a base name after 'Extends'")
                decl = self.set_once(decl, "extends", target.text, "Extends", tok.span)
            elif word in ("Holds when", "Conditioned by", "Violated when"):
                self.advance()
                expr = self.parse_expr()
                field = {
                    "Holds when": "holds_when",
                    "Conditioned by": "conditioned_by",
                    "Violated when": "violated_when",
                }[word]
                prev = getattr(decl, field)
                combined = expr if prev is None else BinOp(
                    BinOpKind.AND, prev, expr, span=expr.span
                )
                decl = replace(decl, **{field: combined})
            elif word == "Creates":
                self.advance()
                decl = replace(decl, creates=decl.creates + self.parse_template_list())
            elif word == "Terminates":
                self.advance()
                decl = replace(decl, terminates=decl.terminates + self.parse_template_list())
            elif word == "Terminated by":
                self.advance()
                decl = replace(decl, terminated_by=decl.terminated_by + self.parse_name_list())
            else:
                return decl

    def set_param(self, decl: Declaration, word: str, param: Token) -> Declaration:
        field = {
            "Actor": "actor_param",
            "Recipient": "recipient_param",
            "Holder": "holder_param",
            "Claimant": "claimant_param",
        }[word]
        return self.set_once(decl, field, param.text, word, param.span)

    def set_once(self, decl: Declaration, field: str, value, clause: str, span: Span) -> Declaration:
        if getattr(decl, field) is not None:
            raise self.fail(f"duplicate '{clause}' clause on '{decl.name}'", span)
        return replace(decl, **{field: value})

    def parse_template_list(self) -> tuple[InstanceTemplate, ...]:
        templates = [self.parse_template()]
        while self.peek() is not None and self.peek().is_punct(","):
            self.advance()
            templates.append(self.parse_template())
        return tuple(templates)

    def parse_template(self) -> InstanceTemplate:
        name = self.expect_name("a type name")
        args: list[TemplateArg] = []
        end_span = name.span
        if self.peek() is not None and self.peek().is_punct("("):
            self.advance()
            args.append(self.parse_template_arg())
            while self.peek() is not None and self.peek().is_punct(","):
                self.advance()
                args.append(self.parse_template_arg())
            end_span = self.expect_punct(")").span
        return InstanceTemplate(name.text, tuple(args), span=name.span.merge(end_span))

    def parse_template_arg(self) -> TemplateArg:
        tok = self.peek()
        if tok is None:
            raise self.fail("expected a template argument")
        if tok.kind is TokenKind.INT or tok.kind is TokenKind.STRING:
            return self.advance().value
        if tok.is_kw("Actor"):
            self.advance()
            return Placeholder.ACTOR
        if tok.is_kw("Recipient"):
            self.advance()
            return Placeholder.RECIPIENT
        if tok.kind is TokenKind.IDENT:
            self.advance()
            return UnresolvedName(tok.text, span=tok.span)
        raise self.fail(
            f"expected a literal or parameter name, found {tok.text!r}"
        )

    def parse_name_list(self) -> tuple[str, ...]:
        names = [self.expect_name("an act name").text]
        while self.peek() is not None and self.peek().is_punct(","):
            self.advance()
            names.append(self.expect_name("an act name").text)
        return tuple(names)

    # -- expressions ---------------------------------------------------------

    def parse_expr(self) -> Expr:
        return self.parse_or()

    def parse_or(self) -> Expr:
        left = self.parse_and()
        while self.peek() is not None and self.peek().is_punct("||"):
            self.advance()
            right = self.parse_and()
            left = BinOp(BinOpKind.OR, left, right, span=left.span.merge(right.span))
        return left

    def parse_and(self) -> Expr:
        left = self.parse_unary()
        while self.peek() is not None and self.peek().is_punct("&&"):
            self.advance()
            right = self.parse_unary()
            left = BinOp(BinOpKind.AND, left, right, span=left.span.merge(right.span))
        return left

    def parse_unary(self) -> Expr:
        tok = self.peek()
        if tok is not None and tok.is_kw("Not"):
            self.advance()
            operand = self.parse_unary()
            return NotExpr(operand, span=tok.span.merge(operand.span))
        return self.parse_comparison()

    def parse_comparison(self) -> Expr:
        left = self.parse_additive()
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.PUNCT and tok.text in _REL_OPS:
            op = _REL_OPS[self.advance().text]
            right = self.parse_additive()
            return BinOp(op, left, right, span=left.span.merge(right.span))
        return left

    def parse_additive(self) -> Expr:
        left = self.parse_multiplicative()
        while self.peek() is not None and self.peek().is_punct("+", "-"):
            op = BinOpKind.ADD if self.advance().text == "+" else BinOpKind.SUB
            right = self.parse_multiplicative()
            left = BinOp(op, left, right, span=left.span.merge(right.span))
        return left

    def parse_multiplicative(self) -> Expr:
        left = self.parse_atom()
        while self.peek() is not None and self.peek().is_punct("*"):
            self.advance()
            right = self.parse_atom()
            left = BinOp(BinOpKind.MUL, left, right, span=left.span.merge(right.span))
        return left

    def parse_atom(self) -> Expr:
        tok = self.peek()
        if tok is None:
            raise self.fail("expected an expression")
        if tok.kind is TokenKind.INT:
            self.advance()
            return IntLit(tok.value, span=tok.span)
        if tok.kind is TokenKind.STRING:
            self.advance()
            return StrLit(tok.value, span=tok.span)
        if tok.is_kw("True", "False"):
            self.advance()
            return BoolLit(tok.text == "True", span=tok.span)
        if tok.is_kw("Actor"):
            self.advance()
            return PlaceholderRef(Placeholder.ACTOR, span=tok.span)
        if tok.is_kw("Recipient"):
            self.advance()
            return PlaceholderRef(Placeholder.RECIPIENT, span=tok.span)
        if tok.is_kw("Holds"):
            self.advance()
            self.expect_punct("(")
            template = self.parse_template()
            end = self.expect_punct(")")
            return HoldsExpr(template, span=tok.span.merge(end.span))
        if tok.is_punct("("):
            self.advance()
            inner = self.parse_expr()
            self.expect_punct(")")
            return inner
        if tok.kind is TokenKind.IDENT:
            self.advance()
            args: tuple[TemplateArg, ...] = ()
            end_span = tok.span
            if self.peek() is not None and self.peek().is_punct("("):
                self.advance()
                arg_list = [self.parse_template_arg()]
                while self.peek() is not None and self.peek().is_punct(","):
                    self.advance()
                    arg_list.append(self.parse_template_arg())
                end_span = self.expect_punct(")").span
                args = tuple(arg_list)
            return Ref(tok.text, args, span=tok.span.merge(end_span))
        raise self.fail(f"expected an expression, found {tok.text!r}")


# ---------------------------------------------------------------------------
# Parameter-name resolution
# ---------------------------------------------------------------------------

def _resolve_params(decl: Declaration) -> Declaration:
    """Rewrite references to the declaration's own parameter names into
    Actor/Recipient placeholders (Holder maps to Actor, Claimant to Recipient)."""
    actor_name = decl.actor_param or decl.holder_param
    recipient_name = decl.recipient_param or decl.claimant_param
    if actor_name is None and recipient_name is None:
        return decl

    def the(arg: TemplateArg) -> TemplateArg:
        if isinstance(arg, UnresolvedName):
            if arg.name == actor_name:
                return Placeholder.ACTOR
            if arg.name == recipient_name:
                return Placeholder.RECIPIENT
        return arg

    def tmpl(t: InstanceTemplate) -> InstanceTemplate:
        return replace(t, args=tuple(the(a) for a in t.args))

    def walk(e: Expr) -> Expr:
        if isinstance(e, Ref):
            if not e.args:
                if e.name == actor_name:
                    return PlaceholderRef(Placeholder.ACTOR, span=e.span)
                if e.name == recipient_name:
                    return PlaceholderRef(Placeholder.RECIPIENT, span=e.span)
                return e
            return replace(e, args=tuple(the(a) for a in e.args))
        if isinstance(e, HoldsExpr):
            return replace(e, template=tmpl(e.template))
        if isinstance(e, NotExpr):
            return replace(e, operand=walk(e.operand))
        if isinstance(e, BinOp):
            return replace(e, left=walk(e.left), right=walk(e.right))
        return e

    updates = {}
    for field in ("holds_when", "conditioned_by", "violated_when"):
        expr = getattr(decl, field)
        if expr is not None:
            updates[field] = walk(expr)
    updates["creates"] = tuple(tmpl(t) for t in decl.creates)
    updates["terminates"] = tuple(tmpl(t) for t in decl.terminates)
    return replace(decl, **updates)


def parse(source: str) -> ParseResult:
    tokens, lex_diagnostics = tokenize(source)
    lines = source.count("\n") + 1
    last_col = len(source) - (source.rfind("\n") + 1) + 1
    parser = _Parser(tokens, Span(lines, last_col, lines, last_col))
    spec = parser.parse_spec()
    return ParseResult(spec, lex_diagnostics + parser.diagnostics)
