"""Evaluation and state transitions.

All functions are pure: they take a ReasonerState and hand back a new one, so
a what-if is just a call whose result you drop. Truth evaluation follows the
strong Kleene tables; an open-typed instance with no entry reads as Unknown,
a closed-typed one as False.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Optional

from ..lang import (
    ARITHMETIC,
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
    Openness,
    Placeholder,
    PlaceholderRef,
    Ref,
    Specification,
    StatementKind,
    StrLit,
    print_expr,
    print_statement,
)
from .model import (
    ActStatus,
    Binding,
    DutyInstance,
    Enablement,
    EventKind,
    ExecutionReport,
    FactEntry,
    Instance,
    ReasonerError,
    ReasonerState,
    TraceEvent,
    Violation,
    ViolationKind,
    WhatIfReport,
    encode_instance,
)
from .truth import (
    FALSE,
    TRUE,
    UNKNOWN,
    TruthValue,
    from_bool,
    kleene_and,
    kleene_not,
    kleene_or,
)


class _Missing:
    """An operand the state cannot supply (unassigned Var, unbound party).

    Arithmetic touching it stays missing, so the poison travels up to the
    nearest comparison, which evaluates Unknown.
    """

    def __repr__(self) -> str:
        return "<missing>"


MISSING = _Missing()


def _declaration(spec: Specification, name: str) -> Declaration:
    decl = spec.declaration(name)
    if decl is None:
        raise ReasonerError(f"unknown declaration '{name}'")
    return decl


def _lookup(state: ReasonerState, instance: Instance) -> Optional[FactEntry]:
    for entry in state.base_facts:
        if entry.instance == instance:
            return entry
    return None


def _held_value(state: ReasonerState, type_name: str):
    """The argument of the single held instance of a Var, if any."""
    for entry in state.base_facts:
        if entry.instance.type_name == type_name and entry.value:
            return entry.instance.arg
    return MISSING


def _absent(decl: Declaration) -> TruthValue:
    return UNKNOWN if decl.openness is Openness.OPEN else FALSE


def _resolve_arg(arg, binding: Binding):
    if arg is Placeholder.ACTOR:
        return binding.actor if binding.actor is not None else MISSING
    if arg is Placeholder.RECIPIENT:
        return binding.recipient if binding.recipient is not None else MISSING
    if isinstance(arg, (int, str)):
        return arg
    raise ReasonerError(f"unresolved template argument {arg!r}")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _eval_term(state: ReasonerState, expr: Expr, binding: Binding):
    if isinstance(expr, (IntLit, StrLit)):
        return expr.value
    if isinstance(expr, PlaceholderRef):
        return _resolve_arg(expr.placeholder, binding)
    if isinstance(expr, Ref):
        return _held_value(state, expr.name)
    if isinstance(expr, BinOp) and expr.op in ARITHMETIC:
        left = _eval_term(state, expr.left, binding)
        right = _eval_term(state, expr.right, binding)
        if left is MISSING or right is MISSING:
            return MISSING
        if expr.op is BinOpKind.ADD:
            return left + right
        if expr.op is BinOpKind.SUB:
            return left - right
        return left * right
    raise ReasonerError(f"not a term: {print_expr(expr)}")


_COMPARE = {
    BinOpKind.LT: lambda a, b: a < b,
    BinOpKind.LE: lambda a, b: a <= b,
    BinOpKind.EQ: lambda a, b: a == b,
    BinOpKind.NE: lambda a, b: a != b,
    BinOpKind.GE: lambda a, b: a >= b,
    BinOpKind.GT: lambda a, b: a > b,
}


def eval_expr(state: ReasonerState, expr: Expr,
              binding: Binding = Binding()) -> TruthValue:
    if isinstance(expr, BoolLit):
        return from_bool(expr.value)
    if isinstance(expr, NotExpr):
        return kleene_not(eval_expr(state, expr.operand, binding))
    if isinstance(expr, BinOp):
        if expr.op is BinOpKind.AND:
            return kleene_and(
                eval_expr(state, expr.left, binding),
                eval_expr(state, expr.right, binding),
            )
        if expr.op is BinOpKind.OR:
            return kleene_or(
                eval_expr(state, expr.left, binding),
                eval_expr(state, expr.right, binding),
            )
        if expr.op in COMPARISONS:
            left = _eval_term(state, expr.left, binding)
            right = _eval_term(state, expr.right, binding)
            if left is MISSING or right is MISSING:
                return UNKNOWN
            return from_bool(_COMPARE[expr.op](left, right))
        raise ReasonerError(f"not a condition: {print_expr(expr)}")
    if isinstance(expr, HoldsExpr):
        return _eval_template(state, expr.template, binding)
    if isinstance(expr, Ref):
        return _eval_template(
            state, InstanceTemplate(expr.name, expr.args), binding
        )
    raise ReasonerError(f"not a condition: {print_expr(expr)}")


def _eval_template(state: ReasonerState, template: InstanceTemplate,
                   binding: Binding) -> TruthValue:
    decl = _declaration(state.spec, template.type_name)
    if decl.is_derived:
        return eval_expr(state, decl.holds_when, binding)
    if template.args:
        arg = _resolve_arg(template.args[0], binding)
        if arg is MISSING:
            return UNKNOWN
        entry = _lookup(state, Instance(template.type_name, arg))
        if entry is not None:
            return from_bool(entry.value)
        if decl.kind is DeclKind.VAR:
            # A Var assigned to something else is definitely not this value.
            if _held_value(state, template.type_name) is not MISSING:
                return FALSE
        return _absent(decl)
    if decl.kind in (DeclKind.VAR, DeclKind.BOOL):
        # Bare Bool reads its assigned value; bare Holds(v) asks whether the
        # variable has been supplied at all.
        for entry in state.base_facts:
            if entry.instance.type_name == template.type_name:
                if decl.kind is DeclKind.BOOL:
                    return from_bool(entry.value)
                return TRUE
        return _absent(decl)
    entry = _lookup(state, Instance(template.type_name, None))
    if entry is not None:
        return from_bool(entry.value)
    return _absent(decl)


def _is_term(spec: Specification, expr: Expr) -> bool:
    if isinstance(expr, (IntLit, StrLit, PlaceholderRef)):
        return True
    if isinstance(expr, BinOp):
        return expr.op in ARITHMETIC
    if isinstance(expr, Ref) and not expr.args:
        decl = spec.declaration(expr.name)
        return decl is not None and decl.kind is DeclKind.VAR
    return False


def evaluate(state: ReasonerState, expr: Expr, binding: Binding = Binding()):
    """General entry point: truth value for conditions, the holding literal
    (or None) for value-shaped expressions."""
    if _is_term(state.spec, expr):
        value = _eval_term(state, expr, binding)
        return None if value is MISSING else value
    return eval_expr(state, expr, binding)


# ---------------------------------------------------------------------------
# Act enablement
# ---------------------------------------------------------------------------

def _pre_clauses(state: ReasonerState, decl: Declaration) -> tuple[Expr, ...]:
    """Pre-conditions guarding a physical act: the synced institutional act's
    clauses first (they carry the norm), then the physical act's own."""
    clauses: list[Expr] = []
    if decl.syncs_with is not None:
        institutional = _declaration(state.spec, decl.syncs_with)
        for expr in (institutional.holds_when, institutional.conditioned_by):
            if expr is not None:
                clauses.append(expr)
    for expr in (decl.holds_when, decl.conditioned_by):
        if expr is not None:
            clauses.append(expr)
    return tuple(clauses)


def _status_for(state: ReasonerState, decl: Declaration,
                binding: Binding) -> ActStatus:
    reasons = tuple(
        (print_expr(clause), eval_expr(state, clause, binding))
        for clause in _pre_clauses(state, decl)
    )
    values = [value for _, value in reasons]
    if any(value is FALSE for value in values):
        status = Enablement.DISABLED
    elif all(value is TRUE for value in values):
        status = Enablement.ENABLED
    else:
        status = Enablement.UNDETERMINED
    return ActStatus(decl.name, status, reasons)


def act_statuses(state: ReasonerState,
                 binding: Binding = Binding()) -> tuple[ActStatus, ...]:
    """One entry per physical act, in declaration order."""
    return tuple(
        _status_for(state, decl, binding) for decl in state.spec.physical_acts
    )


def _physical_act(spec: Specification, name: str) -> Declaration:
    decl = spec.declaration(name)
    if decl is None or decl.kind is not DeclKind.PHYSICAL_ACT:
        raise ReasonerError(f"unknown act '{name}'")
    return decl


# ---------------------------------------------------------------------------
# Transitions
# ---------------------------------------------------------------------------

def _displace(facts: set[FactEntry], type_name: str) -> None:
    for entry in [e for e in facts if e.instance.type_name == type_name]:
        facts.discard(entry)


def _store(facts: set[FactEntry], decl: Declaration, instance: Instance,
           value: bool) -> None:
    for entry in [e for e in facts if e.instance == instance]:
        facts.discard(entry)
    # "Definitely false" coincides with absence for closed types; keep the
    # stored form canonical so equal states snapshot to equal bytes.
    if not value and decl.openness is Openness.CLOSED:
        return
    facts.add(FactEntry(instance, value))


def init_state(spec: Specification) -> ReasonerState:
    """Starting state: the model's own statements applied in order, each
    leaving an InitStatement trace event."""
    facts: set[FactEntry] = set()
    trace: list[TraceEvent] = []
    for stmt in spec.statements:
        decl = _declaration(spec, stmt.type_name)
        single = decl.kind in (DeclKind.VAR, DeclKind.BOOL)
        if stmt.kind is StatementKind.ASSIGN:
            _displace(facts, stmt.type_name)
            if decl.kind is DeclKind.BOOL:
                _store(facts, decl, Instance(stmt.type_name, None), bool(stmt.arg))
            else:
                facts.add(FactEntry(Instance(stmt.type_name, stmt.arg), True))
        elif stmt.kind is StatementKind.CREATE:
            if single:
                _displace(facts, stmt.type_name)
            arg = None if decl.kind is DeclKind.BOOL else stmt.arg
            facts.add(FactEntry(Instance(stmt.type_name, arg), True))
        else:
            if single and stmt.arg is None:
                _displace(facts, stmt.type_name)
            else:
                for entry in [e for e in facts
                              if e.instance == Instance(stmt.type_name, stmt.arg)]:
                    facts.discard(entry)
        trace.append(TraceEvent(len(trace), EventKind.INIT_STATEMENT, {
            "statement": print_statement(stmt),
        }))
    return ReasonerState(spec=spec, base_facts=frozenset(facts),
                         trace=tuple(trace))


def _refresh_duties(state: ReasonerState) -> ReasonerState:
    """Re-evaluate every active duty's violation condition. A condition found
    True for a duty not yet flagged records one DutyViolation and flags it;
    dropping out of True clears the flag and re-arms it."""
    duties = list(state.duties)
    violations = list(state.violations)
    trace = list(state.trace)
    for index, duty in enumerate(duties):
        condition = _declaration(state.spec, duty.type_name).violated_when
        if condition is None:
            continue
        binding = Binding(actor=duty.holder, recipient=duty.claimant)
        value = eval_expr(state, condition, binding)
        if value is TRUE and not duty.violated:
            tripped = replace(duty, violated=True)
            duties[index] = tripped
            violations.append(Violation(
                ViolationKind.DUTY_VIOLATION, tripped, at_seq=len(trace)
            ))
            trace.append(TraceEvent(len(trace), EventKind.VIOLATION_RAISED, {
                "kind": ViolationKind.DUTY_VIOLATION.value,
                "duty": duty.type_name,
                "holder": duty.holder,
                "claimant": duty.claimant,
            }))
        elif value is not TRUE and duty.violated:
            duties[index] = replace(duty, violated=False)
    return replace(
        state,
        duties=tuple(duties),
        violations=tuple(violations),
        trace=tuple(trace),
    )


def set_fact(state: ReasonerState, instance: Instance,
             value: TruthValue) -> ReasonerState:
    decl = _declaration(state.spec, instance.type_name)
    if not decl.is_fact_like or decl.is_derived:
        raise ReasonerError(f"'{instance.type_name}' cannot be set directly")
    _check_arg_shape(decl, instance, value)

    facts = set(state.base_facts)
    if decl.kind is DeclKind.VAR:
        if value is FALSE:
            raise ReasonerError(
                f"'{instance.type_name}' holds a single positive assignment; "
                f"set a different value or clear it"
            )
        _displace(facts, instance.type_name)
        if value is TRUE:
            facts.add(FactEntry(instance, True))
    elif decl.kind is DeclKind.BOOL:
        _displace(facts, instance.type_name)
        if value is not UNKNOWN:
            _store(facts, decl, Instance(instance.type_name, None), value is TRUE)
    else:
        if value is UNKNOWN:
            for entry in [e for e in facts if e.instance == instance]:
                facts.discard(entry)
        else:
            _store(facts, decl, instance, value is TRUE)

    event = TraceEvent(state.seq, EventKind.FACT_SET,
                       encode_instance(instance, value))
    return _refresh_duties(replace(
        state, base_facts=frozenset(facts), trace=state.trace + (event,)
    ))


def _check_arg_shape(decl: Declaration, instance: Instance,
                     value: TruthValue) -> None:
    arg = instance.arg
    if decl.kind is DeclKind.BOOL or decl.domain is DomainKind.NONE:
        if arg is not None:
            raise ReasonerError(f"'{decl.name}' takes no argument")
        return
    if arg is None:
        if decl.kind is DeclKind.VAR and value is UNKNOWN:
            return  # clearing a Var needs no particular argument
        raise ReasonerError(f"'{decl.name}' needs a {decl.domain.value} argument")
    if decl.domain is DomainKind.INT:
        if not isinstance(arg, int) or isinstance(arg, bool):
            raise ReasonerError(f"'{decl.name}' is identified by Int, got {arg!r}")
    elif not isinstance(arg, str):
        raise ReasonerError(f"'{decl.name}' is identified by String, got {arg!r}")


def execute_act(state: ReasonerState, act_name: str, actor: str,
                recipient: Optional[str] = None,
                confirmed: bool = False) -> ExecutionReport:
    decl = _physical_act(state.spec, act_name)
    binding = Binding(actor=actor, recipient=recipient)
    status = _status_for(state, decl, binding)

    if status.status is not Enablement.ENABLED and not confirmed:
        return ExecutionReport(state, False, status.status, status.reasons)

    institutional = (
        _declaration(state.spec, decl.syncs_with) if decl.syncs_with else None
    )
    if institutional is not None and recipient is None \
            and _needs_recipient(state.spec, institutional):
        raise ReasonerError(f"'{act_name}' requires a recipient")

    facts = set(state.base_facts)
    duties = list(state.duties)
    created_facts: list[Instance] = []
    removed_facts: list[Instance] = []
    dropped: list[DutyInstance] = []
    created_keys: list[tuple[str, str, str]] = []

    if institutional is not None:
        for template in institutional.terminates:
            target = _declaration(state.spec, template.type_name)
            if target.kind is DeclKind.DUTY:
                for duty in [d for d in duties
                             if d.type_name == template.type_name
                             and d.holder == actor]:
                    duties.remove(duty)
                    dropped.append(duty)
                continue
            inst = Instance(template.type_name,
                            _resolve_arg(template.args[0], binding)
                            if template.args else None)
            for entry in [e for e in facts if e.instance == inst]:
                facts.discard(entry)
                removed_facts.append(inst)
        for template in institutional.creates:
            target = _declaration(state.spec, template.type_name)
            if target.kind is DeclKind.DUTY:
                key = (template.type_name, actor, recipient)
                if key not in created_keys \
                        and not any(d.key == key for d in duties):
                    created_keys.append(key)
                continue
            inst = Instance(template.type_name,
                            _resolve_arg(template.args[0], binding)
                            if template.args else None)
            if _lookup_in(facts, inst) is None:
                facts.add(FactEntry(inst, True))
                created_facts.append(inst)

    trace = list(state.trace)
    trace.append(TraceEvent(len(trace), EventKind.ACT_EXECUTED, {
        "act": act_name,
        "actor": actor,
        "recipient": recipient,
        "confirmed": confirmed,
        "created": [encode_instance(i, TRUE) for i in created_facts],
        "terminated": [encode_instance(i, TRUE) for i in removed_facts],
    }))

    def emit_duty_end(duty: DutyInstance) -> None:
        trace.append(TraceEvent(len(trace), EventKind.DUTY_TERMINATED, {
            "duty": duty.type_name, "holder": duty.holder,
            "claimant": duty.claimant,
        }))

    for duty in dropped:
        emit_duty_end(duty)
    for type_name, holder, claimant in created_keys:
        duty = DutyInstance(type_name, holder, claimant,
                            created_at_seq=len(trace))
        duties.append(duty)
        trace.append(TraceEvent(len(trace), EventKind.DUTY_CREATED, {
            "duty": duty.type_name, "holder": duty.holder,
            "claimant": duty.claimant,
        }))

    violations = list(state.violations)
    if status.status is not Enablement.ENABLED:
        subject = Instance(act_name, actor)
        violations.append(Violation(
            ViolationKind.NON_COMPLIANT_ACT, subject, at_seq=len(trace)
        ))
        trace.append(TraceEvent(len(trace), EventKind.VIOLATION_RAISED, {
            "kind": ViolationKind.NON_COMPLIANT_ACT.value,
            "act": act_name,
            "actor": actor,
        }))

    executed_names = {act_name}
    if decl.syncs_with is not None:
        executed_names.add(decl.syncs_with)
    for duty in list(duties):
        duty_decl = _declaration(state.spec, duty.type_name)
        if duty.holder == actor and executed_names & set(duty_decl.terminated_by):
            duties.remove(duty)
            emit_duty_end(duty)

    next_state = _refresh_duties(replace(
        state,
        base_facts=frozenset(facts),
        duties=tuple(duties),
        violations=tuple(violations),
        trace=tuple(trace),
    ))
    events = next_state.trace[state.seq:]
    return ExecutionReport(next_state, True, status.status, status.reasons, events)


def _lookup_in(facts: set[FactEntry], instance: Instance) -> Optional[FactEntry]:
    for entry in facts:
        if entry.instance == instance:
            return entry
    return None


def _needs_recipient(spec: Specification, institutional: Declaration) -> bool:
    for template in institutional.creates + institutional.terminates:
        target = spec.declaration(template.type_name)
        if target is not None and target.kind is DeclKind.DUTY:
            return True
        if Placeholder.RECIPIENT in template.args:
            return True
    return False


def what_if(state: ReasonerState, act_name: str, actor: str,
            recipient: Optional[str] = None) -> WhatIfReport:
    """Projected execution: runs with confirmation forced so even a blocked
    act shows its would-be consequences, then discards the state."""
    report = execute_act(state, act_name, actor, recipient, confirmed=True)
    binding = Binding(actor=actor, recipient=recipient)
    return WhatIfReport(
        status=report.status,
        reasons=report.reasons,
        events=report.events,
        violations=report.state.violations[len(state.violations):],
        statuses=act_statuses(report.state, binding),
    )


def active_duties(state: ReasonerState) -> tuple[DutyInstance, ...]:
    """Active duties in creation order, violation flags current."""
    return state.duties


# ---------------------------------------------------------------------------
# Explanation
# ---------------------------------------------------------------------------

def _show_instance(doc: dict) -> str:
    arg = doc.get("arg")
    if arg is None:
        return doc["type"]
    shown = f'"{arg}"' if isinstance(arg, str) else str(arg)
    return f"{doc['type']}({shown})"


def event_text(event: TraceEvent) -> str:
    """One readable line describing a trace event."""
    payload = event.payload
    if event.kind is EventKind.INIT_STATEMENT:
        return f"initial statement {payload['statement']}"
    if event.kind is EventKind.FACT_SET:
        return f"{_show_instance(payload)} set to {payload['value']}"
    if event.kind is EventKind.ACT_EXECUTED:
        text = f"{payload['actor']} performed {payload['act']}"
        if payload.get("recipient"):
            text += f" towards {payload['recipient']}"
        if payload.get("confirmed"):
            text += " (confirmed)"
        for doc in payload.get("created", ()):
            text += f"; created {_show_instance(doc)}"
        for doc in payload.get("terminated", ()):
            text += f"; terminated {_show_instance(doc)}"
        return text
    if event.kind is EventKind.DUTY_CREATED:
        return (f"duty {payload['duty']} created: {payload['holder']} "
                f"owes {payload['claimant']}")
    if event.kind is EventKind.DUTY_TERMINATED:
        return f"duty {payload['duty']} of {payload['holder']} terminated"
    if payload.get("kind") == ViolationKind.DUTY_VIOLATION.value:
        return (f"violation: duty {payload['duty']} of {payload['holder']} "
                f"breached")
    return (f"violation: {payload['actor']} performed {payload['act']} "
            f"while it was not enabled")


def explain(state: ReasonerState) -> tuple[str, ...]:
    """The trace, one readable line per event, in order."""
    return tuple(f"{e.seq}: {event_text(e)}" for e in state.trace)
