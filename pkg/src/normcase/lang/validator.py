"""Static checks over a parsed specification.

The parser only enforces shape; everything that needs the full declaration
table lives here: name resolution, arity and domain agreement, and which
clauses make sense on which kind of declaration.
"""

from __future__ import annotations

from typing import Optional

from .ast import (
    ARITHMETIC,
    BinOp,
    BinOpKind,
    BoolLit,
    COMPARISONS,
    Declaration,
    DeclKind,
    DomainKind,
    Expr,
    IntLit,
    HoldsExpr,
    InstanceTemplate,
    NotExpr,
    Openness,
    Placeholder,
    PlaceholderRef,
    Ref,
    Specification,
    Statement,
    StatementKind,
    StrLit,
    UnresolvedName,
    default_openness,
)
from .diagnostics import Diagnostic, Span, error

_KIND_LABEL = {
    DeclKind.FACT: "a Fact",
    DeclKind.VAR: "a Var",
    DeclKind.BOOL: "a Bool",
    DeclKind.ACT: "an Act",
    DeclKind.PHYSICAL_ACT: "a Physical Act",
    DeclKind.DUTY: "a Duty",
}

# Clause fields and the declaration kinds they are legal on.
_CLAUSE_KINDS = {
    "actor_param": ("Actor", {DeclKind.ACT, DeclKind.PHYSICAL_ACT}),
    "recipient_param": ("Recipient", {DeclKind.ACT, DeclKind.PHYSICAL_ACT}),
    "holder_param": ("Holder", {DeclKind.DUTY}),
    "claimant_param": ("Claimant", {DeclKind.DUTY}),
    "syncs_with": ("Syncs with", {DeclKind.PHYSICAL_ACT}),
    "holds_when": ("Holds when", {DeclKind.FACT, DeclKind.ACT, DeclKind.PHYSICAL_ACT}),
    "conditioned_by": ("Conditioned by", {DeclKind.ACT, DeclKind.PHYSICAL_ACT}),
    "violated_when": ("Violated when", {DeclKind.DUTY}),
    "creates": ("Creates", {DeclKind.ACT}),
    "terminates": ("Terminates", {DeclKind.ACT}),
    "terminated_by": ("Terminated by", {DeclKind.DUTY}),
}


class _Checker:
    def __init__(self, spec: Specification):
        self.spec = spec
        self.decls: dict[str, Declaration] = {}
        self.diagnostics: list[Diagnostic] = []

    def err(self, message: str, span: Span) -> None:
        self.diagnostics.append(error(message, span))

    def run(self) -> list[Diagnostic]:
        for decl in self.spec.declarations:
            if decl.name in self.decls:
                self.err(f"'{decl.name}' is declared more than once", decl.span)
            else:
                self.decls[decl.name] = decl
        for decl in self.spec.declarations:
            self.check_declaration(decl)
        self.check_derivation_cycles()
        for stmt in self.spec.statements:
            self.check_statement(stmt)
        return self.diagnostics

    # -- declarations -------------------------------------------------------

    def check_declaration(self, decl: Declaration) -> None:
        if not decl.is_fact_like and decl.openness is not default_openness(decl.kind):
            word = decl.openness.value
            self.err(f"'{word}' applies only to facts, vars and bools", decl.span)

        if decl.domain is not DomainKind.NONE and decl.kind not in (
            DeclKind.FACT, DeclKind.VAR
        ):
            self.err(
                f"'Identified by' is not allowed on {_KIND_LABEL[decl.kind]}", decl.span
            )
        if decl.kind is DeclKind.VAR and decl.domain is DomainKind.NONE:
            self.err(f"Var '{decl.name}' needs 'Identified by Int' or 'Identified by String'",
                     decl.span)
        if decl.is_derived and decl.domain is not DomainKind.NONE:
            self.err(f"derived Fact '{decl.name}' cannot take an identifier", decl.span)

        for field, (word, kinds) in _CLAUSE_KINDS.items():
            value = getattr(decl, field)
            present = value is not None if not isinstance(value, tuple) else bool(value)
            if present and decl.kind not in kinds:
                self.err(f"'{word}' is not allowed on {_KIND_LABEL[decl.kind]}", decl.span)

        if decl.actor_param is not None and decl.actor_param == decl.recipient_param:
            self.err(f"Actor and Recipient of '{decl.name}' share a parameter name",
                     decl.span)
        if decl.holder_param is not None and decl.holder_param == decl.claimant_param:
            self.err(f"Holder and Claimant of '{decl.name}' share a parameter name",
                     decl.span)

        if decl.syncs_with is not None:
            target = self.decls.get(decl.syncs_with)
            if target is None:
                self.err(f"'Syncs with' names unknown act '{decl.syncs_with}'", decl.span)
            elif target.kind is not DeclKind.ACT:
                self.err(
                    f"'Syncs with' must name an institutional Act, "
                    f"but '{decl.syncs_with}' is {_KIND_LABEL[target.kind]}",
                    decl.span,
                )

        if decl.extends is not None:
            base = self.decls.get(decl.extends)
            if base is None:
                self.err(f"'Extends' names unknown declaration '{decl.extends}'", decl.span)
            elif base.kind is not decl.kind:
                self.err(
                    f"'{decl.name}' ({_KIND_LABEL[decl.kind]}) cannot extend "
                    f"'{base.name}' ({_KIND_LABEL[base.kind]})",
                    decl.span,
                )

        for name in decl.terminated_by:
            target = self.decls.get(name)
            if target is None:
                self.err(f"'Terminated by' names unknown act '{name}'", decl.span)
            elif not target.is_act:
                self.err(
                    f"'Terminated by' must name acts, but '{name}' is "
                    f"{_KIND_LABEL[target.kind]}",
                    decl.span,
                )

        placeholders_ok = decl.kind in (DeclKind.ACT, DeclKind.PHYSICAL_ACT, DeclKind.DUTY)
        for expr in (decl.holds_when, decl.conditioned_by, decl.violated_when):
            if expr is not None:
                before = len(self.diagnostics)
                self.check_expr(expr, placeholders_ok)
                if len(self.diagnostics) == before:
                    self.check_condition_type(expr)
        for template in decl.creates:
            self.check_consequence(decl, template, "Creates")
        for template in decl.terminates:
            self.check_consequence(decl, template, "Terminates")

    def check_consequence(self, decl: Declaration, template: InstanceTemplate,
                          word: str) -> None:
        target = self.decls.get(template.type_name)
        if target is None:
            self.err(f"'{word}' names unknown declaration '{template.type_name}'",
                     template.span)
            return
        if target.kind is DeclKind.DUTY:
            if template.args:
                self.err(
                    f"duty '{target.name}' takes no arguments here; Holder and "
                    f"Claimant come from the act's Actor and Recipient",
                    template.span,
                )
            return
        if target.kind is not DeclKind.FACT:
            self.err(
                f"'{word}' can only name facts and duties, but "
                f"'{target.name}' is {_KIND_LABEL[target.kind]}",
                template.span,
            )
            return
        if target.is_derived:
            self.err(f"'{word}' cannot target derived Fact '{target.name}'",
                     template.span)
            return
        self.check_args(target, template.args, template.span, placeholders_ok=True)

    # -- expressions --------------------------------------------------------

    def check_expr(self, expr: Expr, placeholders_ok: bool) -> None:
        if isinstance(expr, PlaceholderRef):
            if not placeholders_ok:
                self.err(f"'{expr.placeholder.value}' is not available here", expr.span)
        elif isinstance(expr, Ref):
            self.check_ref(expr, placeholders_ok)
        elif isinstance(expr, HoldsExpr):
            self.check_holds(expr, placeholders_ok)
        elif isinstance(expr, NotExpr):
            self.check_expr(expr.operand, placeholders_ok)
        elif isinstance(expr, BinOp):
            self.check_expr(expr.left, placeholders_ok)
            self.check_expr(expr.right, placeholders_ok)

    def check_ref(self, ref: Ref, placeholders_ok: bool) -> None:
        target = self.decls.get(ref.name)
        if target is None:
            self.err(f"unknown name '{ref.name}'", ref.span)
            return
        if not target.is_fact_like:
            self.err(
                f"expressions can only reference facts, vars and bools, but "
                f"'{ref.name}' is {_KIND_LABEL[target.kind]}",
                ref.span,
            )
            return
        if not ref.args:
            if target.kind is DeclKind.FACT and target.domain is not DomainKind.NONE:
                self.err(
                    f"'{ref.name}' is identified by {target.domain.value} "
                    f"and needs an argument",
                    ref.span,
                )
            return
        if target.kind is not DeclKind.FACT or target.domain is DomainKind.NONE:
            self.err(f"'{ref.name}' takes no arguments", ref.span)
            return
        self.check_args(target, ref.args, ref.span, placeholders_ok)

    def check_holds(self, holds: HoldsExpr, placeholders_ok: bool) -> None:
        target = self.decls.get(holds.template.type_name)
        if target is None:
            self.err(f"unknown name '{holds.template.type_name}'", holds.span)
            return
        if not target.is_fact_like:
            self.err(
                f"Holds applies to facts, vars and bools, but "
                f"'{target.name}' is {_KIND_LABEL[target.kind]}",
                holds.span,
            )
            return
        self.check_args(target, holds.template.args, holds.span, placeholders_ok)

    def check_args(self, target: Declaration, args: tuple, span: Span,
                   placeholders_ok: bool) -> None:
        expected = 0 if target.domain is DomainKind.NONE else 1
        if len(args) != expected:
            self.err(
                f"'{target.name}' takes {expected} argument(s), got {len(args)}", span
            )
            return
        for arg in args:
            if isinstance(arg, UnresolvedName):
                self.err(f"unknown name '{arg.name}'", arg.span)
            elif isinstance(arg, Placeholder):
                if not placeholders_ok:
                    self.err(f"'{arg.value}' is not available here", span)
                elif target.domain is DomainKind.INT:
                    self.err(
                        f"'{arg.value}' binds a string, but '{target.name}' "
                        f"is identified by Int",
                        span,
                    )
            elif isinstance(arg, int) and target.domain is not DomainKind.INT:
                self.err(f"'{target.name}' is identified by String, got an Int", span)
            elif isinstance(arg, str) and target.domain is not DomainKind.STRING:
                self.err(f"'{target.name}' is identified by Int, got a String", span)

    # -- derivation cycles --------------------------------------------------

    def check_derivation_cycles(self) -> None:
        """A derived fact whose rule reaches itself would evaluate forever."""
        derived = {n for n, d in self.decls.items() if d.is_derived}

        def references(expr: Expr) -> set[str]:
            if isinstance(expr, Ref) and expr.name in derived:
                return {expr.name}
            if isinstance(expr, HoldsExpr) and expr.template.type_name in derived:
                return {expr.template.type_name}
            if isinstance(expr, NotExpr):
                return references(expr.operand)
            if isinstance(expr, BinOp):
                return references(expr.left) | references(expr.right)
            return set()

        edges = {n: references(self.decls[n].holds_when) for n in derived}
        settled: set[str] = set()
        for start in sorted(derived):
            if start in settled:
                continue
            path: list[str] = []
            on_path: set[str] = set()

            def visit(name: str) -> bool:
                if name in on_path:
                    loop = path[path.index(name):] + [name]
                    self.err(
                        "derived facts form a cycle: " + " -> ".join(loop),
                        self.decls[name].span,
                    )
                    return True
                if name in settled:
                    return False
                path.append(name)
                on_path.add(name)
                found = any(visit(n) for n in sorted(edges[name]))
                path.pop()
                on_path.discard(name)
                settled.add(name)
                return found

            visit(start)

    # -- expression typing --------------------------------------------------
    #
    # Runs only after name and arity checks pass, so every Ref resolves.
    # Types are "int", "string" and "bool"; comparisons take matching int or
    # string operands (ordering is int-only), arithmetic is int-only, and a
    # condition clause as a whole must be boolean.

    def check_condition_type(self, expr: Expr) -> None:
        inferred = self.expr_type(expr)
        if inferred is not None and inferred != "bool":
            self.err("condition must be a truth-valued expression", expr.span)

    def expr_type(self, expr: Expr) -> Optional[str]:
        if isinstance(expr, IntLit):
            return "int"
        if isinstance(expr, StrLit):
            return "string"
        if isinstance(expr, (BoolLit, HoldsExpr)):
            return "bool"
        if isinstance(expr, PlaceholderRef):
            return "string"
        if isinstance(expr, Ref):
            if expr.args:
                return "bool"
            target = self.decls[expr.name]
            if target.kind is DeclKind.VAR:
                return "int" if target.domain is DomainKind.INT else "string"
            return "bool"
        if isinstance(expr, NotExpr):
            if self.expr_type(expr.operand) not in ("bool", None):
                self.err("'Not' needs a truth-valued operand", expr.span)
                return None
            return "bool"
        if isinstance(expr, BinOp):
            left = self.expr_type(expr.left)
            right = self.expr_type(expr.right)
            if None in (left, right):
                return None
            if expr.op in (BinOpKind.AND, BinOpKind.OR):
                if left != "bool" or right != "bool":
                    self.err(f"'{expr.op.value}' needs truth-valued operands", expr.span)
                    return None
                return "bool"
            if expr.op in COMPARISONS:
                ordering = expr.op not in (BinOpKind.EQ, BinOpKind.NE)
                if left != right or left == "bool" or (ordering and left != "int"):
                    self.err(
                        f"'{expr.op.value}' cannot compare {left} with {right}",
                        expr.span,
                    )
                    return None
                return "bool"
            if expr.op in ARITHMETIC:
                if left != "int" or right != "int":
                    self.err(f"'{expr.op.value}' needs Int operands", expr.span)
                    return None
                return "int"
        return None

    # -- statements ---------------------------------------------------------

    def check_statement(self, stmt: Statement) -> None:
        target = self.decls.get(stmt.type_name)
        if target is None:
            self.err(f"unknown name '{stmt.type_name}'", stmt.span)
            return
        if not target.is_fact_like:
            self.err(
                f"statements apply to facts, vars and bools, but "
                f"'{stmt.type_name}' is {_KIND_LABEL[target.kind]}",
                stmt.span,
            )
            return
        if target.is_derived:
            self.err(f"'{stmt.type_name}' is derived and cannot be asserted", stmt.span)
            return

        if stmt.kind is StatementKind.ASSIGN:
            if target.kind is DeclKind.VAR:
                self.check_literal(target, stmt.arg, stmt.span)
            elif target.kind is DeclKind.BOOL:
                if not isinstance(stmt.arg, bool):
                    self.err(f"Bool '{stmt.type_name}' takes True or False", stmt.span)
            else:
                self.err(
                    f"'=' assigns Var and Bool values; use '+'/'-' for "
                    f"'{stmt.type_name}'",
                    stmt.span,
                )
            return

        # CREATE / TERMINATE
        if target.kind is DeclKind.BOOL:
            if stmt.arg is not None:
                self.err(f"Bool '{stmt.type_name}' takes no argument", stmt.span)
        elif target.kind is DeclKind.VAR:
            if stmt.kind is StatementKind.TERMINATE and stmt.arg is None:
                return  # bare '-' clears the assignment
            self.check_literal(target, stmt.arg, stmt.span)
        else:
            if target.domain is DomainKind.NONE:
                if stmt.arg is not None:
                    self.err(f"'{stmt.type_name}' takes no argument", stmt.span)
            else:
                self.check_literal(target, stmt.arg, stmt.span)

    def check_literal(self, target: Declaration, arg, span: Span) -> None:
        if target.domain is DomainKind.INT:
            if not isinstance(arg, int) or isinstance(arg, bool):
                self.err(f"'{target.name}' is identified by Int", span)
        elif target.domain is DomainKind.STRING:
            if not isinstance(arg, str):
                self.err(f"'{target.name}' is identified by String", span)


def validate(spec: Specification) -> list[Diagnostic]:
    return _Checker(spec).run()
