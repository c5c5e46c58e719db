"""Three-valued evaluation and norm-state transitions over a specification."""

from .engine import (
    MISSING,
    act_statuses,
    active_duties,
    eval_expr,
    evaluate,
    execute_act,
    event_text,
    explain,
    init_state,
    set_fact,
    what_if,
)
from .model import (
    ActStatus,
    Binding,
    DutyInstance,
    Enablement,
    EventKind,
    ExecutionReport,
    FactArg,
    FactEntry,
    IncompatibleModelError,
    Instance,
    ReasonerError,
    ReasonerState,
    SnapshotError,
    TraceEvent,
    Violation,
    ViolationKind,
    WhatIfReport,
    decode_duty,
    decode_instance,
    decode_violation,
    encode_duty,
    encode_instance,
    encode_violation,
)
from .snapshot import canonical_json, replay, restore, snapshot, snapshot_json
from .truth import (
    FALSE,
    TRUE,
    UNKNOWN,
    TruthValue,
    from_bool,
    kleene_and,
    kleene_not,
    kleene_or,
    refines,
)

__all__ = [
    "ActStatus",
    "Binding",
    "DutyInstance",
    "Enablement",
    "EventKind",
    "ExecutionReport",
    "FALSE",
    "FactArg",
    "FactEntry",
    "IncompatibleModelError",
    "Instance",
    "MISSING",
    "ReasonerError",
    "ReasonerState",
    "SnapshotError",
    "TRUE",
    "TraceEvent",
    "TruthValue",
    "UNKNOWN",
    "Violation",
    "ViolationKind",
    "WhatIfReport",
    "act_statuses",
    "active_duties",
    "canonical_json",
    "decode_duty",
    "decode_instance",
    "decode_violation",
    "encode_duty",
    "encode_instance",
    "encode_violation",
    "eval_expr",
    "evaluate",
    "execute_act",
    "event_text",
    "explain",
    "from_bool",
    "init_state",
    "kleene_and",
    "kleene_not",
    "kleene_or",
    "refines",
    "replay",
    "restore",
    "set_fact",
    "snapshot",
    "snapshot_json",
    "what_if",
]
