"""Snapshots and replay.

A snapshot captures everything state-bearing (facts, duties, violations,
trace) in one canonical JSON document: keys sorted, separators fixed, facts
in a stable order. Two states are equal exactly when their snapshot bytes
are, which is what the persistence layer's crash checks compare.

Replay rebuilds the same state from nothing but the input events — the fact
writes and physical act executions — re-deriving every institutional
consequence through the engine.
"""

from __future__ import annotations

import json
from typing import Iterable, Union

from ..lang import Specification
from .engine import execute_act, init_state, set_fact
from .model import (
    EventKind,
    FactEntry,
    IncompatibleModelError,
    ReasonerState,
    SnapshotError,
    TraceEvent,
    decode_instance,
    decode_duty,
    decode_violation,
    encode_duty,
    encode_instance,
    encode_violation,
)
from .truth import TruthValue, from_bool


def canonical_json(document) -> str:
    return json.dumps(document, sort_keys=True, separators=(",", ":"))


def _fact_order(entry: FactEntry):
    arg = entry.instance.arg
    if arg is None:
        tag, key = 0, ""
    elif isinstance(arg, int):
        tag, key = 1, f"{arg:+021d}"
    else:
        tag, key = 2, arg
    return (entry.instance.type_name, tag, key)


def snapshot(state: ReasonerState, model_version: str = "") -> dict:
    return {
        "modelVersion": model_version,
        "seq": state.seq,
        "baseFacts": [
            encode_instance(e.instance, from_bool(e.value))
            for e in sorted(state.base_facts, key=_fact_order)
        ],
        "duties": [encode_duty(d) for d in state.duties],
        "violations": [encode_violation(v) for v in state.violations],
        "trace": [
            {"seq": e.seq, "kind": e.kind.value, "payload": e.payload}
            for e in state.trace
        ],
    }


def snapshot_json(state: ReasonerState, model_version: str = "") -> str:
    return canonical_json(snapshot(state, model_version))


def restore(spec: Specification, document: Union[dict, str]) -> ReasonerState:
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SnapshotError(f"snapshot is not valid JSON: {exc}") from exc
    try:
        entries = [
            FactEntry(inst, val is TruthValue.TRUE)
            for inst, val in (decode_instance(d) for d in document["baseFacts"])
        ]
        state = ReasonerState(
            spec=spec,
            base_facts=frozenset(entries),
            duties=tuple(decode_duty(d) for d in document["duties"]),
            violations=tuple(
                decode_violation(v) for v in document["violations"]
            ),
            trace=tuple(
                TraceEvent(e["seq"], EventKind(e["kind"]), e["payload"])
                for e in document["trace"]
            ),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SnapshotError(f"snapshot document is malformed: {exc}") from exc

    for entry in state.base_facts:
        if spec.declaration(entry.instance.type_name) is None:
            raise IncompatibleModelError(
                f"snapshot holds '{entry.instance.type_name}', which this "
                f"model version does not declare"
            )
    for duty in state.duties:
        if spec.declaration(duty.type_name) is None:
            raise IncompatibleModelError(
                f"snapshot holds duty '{duty.type_name}', which this model "
                f"version does not declare"
            )
    return state


EventLike = Union[TraceEvent, dict]


def _as_event(entry: EventLike) -> TraceEvent:
    if isinstance(entry, TraceEvent):
        return entry
    return TraceEvent(entry["seq"], EventKind(entry["kind"]), entry["payload"])


def replay(spec: Specification, events: Iterable[EventLike]) -> ReasonerState:
    """Rebuild state by re-running the input events through the engine.

    Consequence events in the log are ignored — they fall out of execution
    again, which is exactly the redundancy the equality law checks.
    """
    state = init_state(spec)
    for entry in map(_as_event, events):
        payload = entry.payload
        if entry.kind is EventKind.FACT_SET:
            instance, value = decode_instance(payload)
            if spec.declaration(instance.type_name) is None:
                raise IncompatibleModelError(
                    f"log sets '{instance.type_name}', which this model "
                    f"version does not declare"
                )
            state = set_fact(state, instance, value)
        elif entry.kind is EventKind.ACT_EXECUTED:
            if spec.declaration(payload["act"]) is None:
                raise IncompatibleModelError(
                    f"log executes '{payload['act']}', which this model "
                    f"version does not declare"
                )
            state = execute_act(
                state,
                payload["act"],
                payload["actor"],
                payload.get("recipient"),
                confirmed=payload.get("confirmed", False),
            ).state
    return state
