"""Extension merging.

`Extends` pulls a base declaration's clauses into the extending one: list
clauses (Creates, Terminates, Terminated by) concatenate base-first, condition
clauses conjoin, and structural properties (identifier domain, openness,
Syncs with) are inherited and may not be contradicted. The result is a
specification with no `Extends` left in it.
"""

from __future__ import annotations

from dataclasses import replace

from .ast import BinOp, BinOpKind, Declaration, DomainKind, Specification, default_openness
from .diagnostics import Diagnostic, error


def _merge(base: Declaration, decl: Declaration,
           diagnostics: list[Diagnostic]) -> Declaration:
    updates: dict = {"extends": None}

    if decl.domain is DomainKind.NONE:
        updates["domain"] = base.domain
    elif decl.domain is not base.domain:
        diagnostics.append(error(
            f"'{decl.name}' cannot change the identifier of '{base.name}'", decl.span
        ))

    if decl.openness is default_openness(decl.kind):
        updates["openness"] = base.openness
    elif decl.openness is not base.openness:
        diagnostics.append(error(
            f"'{decl.name}' cannot change '{base.name}' to {decl.openness.value}",
            decl.span,
        ))

    if decl.syncs_with is None:
        updates["syncs_with"] = base.syncs_with
    elif base.syncs_with is not None and decl.syncs_with != base.syncs_with:
        diagnostics.append(error(
            f"'{decl.name}' cannot change the 'Syncs with' of '{base.name}'", decl.span
        ))

    for field in ("holds_when", "conditioned_by", "violated_when"):
        own = getattr(decl, field)
        inherited = getattr(base, field)
        if inherited is None:
            continue
        if own is None:
            updates[field] = inherited
        else:
            updates[field] = BinOp(BinOpKind.AND, inherited, own, span=own.span)

    updates["creates"] = base.creates + decl.creates
    updates["terminates"] = base.terminates + decl.terminates
    updates["terminated_by"] = base.terminated_by + decl.terminated_by
    return replace(decl, **updates)


def flatten(spec: Specification) -> tuple[Specification, list[Diagnostic]]:
    diagnostics: list[Diagnostic] = []
    by_name = {d.name: d for d in spec.declarations}
    flattened: dict[str, Declaration] = {}
    in_progress: set[str] = set()

    def resolve(decl: Declaration) -> Declaration:
        if decl.name in flattened:
            return flattened[decl.name]
        if decl.extends is None:
            flattened[decl.name] = decl
            return decl
        if decl.name in in_progress:
            diagnostics.append(error(
                f"'{decl.name}' extends itself through a cycle", decl.span
            ))
            result = replace(decl, extends=None)
            flattened[decl.name] = result
            return result
        base = by_name.get(decl.extends)
        if base is None or base.kind is not decl.kind:
            # Already reported by validation; drop the clause and move on.
            result = replace(decl, extends=None)
            flattened[decl.name] = result
            return result
        in_progress.add(decl.name)
        merged = _merge(resolve(base), decl, diagnostics)
        in_progress.discard(decl.name)
        flattened[decl.name] = merged
        return merged

    declarations = tuple(resolve(d) for d in spec.declarations)
    return Specification(declarations, spec.statements), diagnostics
