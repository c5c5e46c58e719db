"""Runtime state carried by the reasoner.

Everything here is an immutable value; the engine's transitions build new
states rather than mutating, which keeps what-if evaluation and replay free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from ..lang import Specification
from .truth import TruthValue

FactArg = Union[int, str, None]


class ReasonerError(Exception):
    """A transition that cannot be interpreted at all (unknown names, missing
    parties, bad value shapes) — distinct from a norm saying no."""


class SnapshotError(ReasonerError):
    """Malformed snapshot document."""


class IncompatibleModelError(ReasonerError):
    """Stored state references types the specification no longer declares."""


@dataclass(frozen=True)
class Instance:
    """A concrete instance of a declared type: `application-pending("alice")`,
    `income-threshold(1500)`, or a bare `applicant-is-married`."""

    type_name: str
    arg: FactArg = None


@dataclass(frozen=True)
class FactEntry:
    """One base-fact assignment. `value` is True or False, never Unknown —
    unknown is represented by the entry's absence."""

    instance: Instance
    value: bool


@dataclass(frozen=True)
class DutyInstance:
    type_name: str
    holder: str
    claimant: str
    created_at_seq: int = 0
    violated: bool = False

    @property
    def key(self) -> tuple[str, str, str]:
        """Identity for creation-idempotence and termination matching."""
        return (self.type_name, self.holder, self.claimant)


class ViolationKind(Enum):
    NON_COMPLIANT_ACT = "NonCompliantAct"
    DUTY_VIOLATION = "DutyViolation"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    # An act violation's subject is Instance(actName, executing actor); a duty
    # violation's subject is the duty instance as it stood when it tripped.
    subject: Union[Instance, DutyInstance]
    at_seq: int


class Enablement(Enum):
    ENABLED = "Enabled"
    DISABLED = "Disabled"
    UNDETERMINED = "Undetermined"


Reasons = tuple[tuple[str, TruthValue], ...]


@dataclass(frozen=True)
class ActStatus:
    act: str
    status: Enablement
    reasons: Reasons
    physical: bool = True


class EventKind(Enum):
    # Inputs: what replay feeds back through the engine. InitStatement events
    # are re-derived by initState itself, FactSet/ActExecuted re-applied.
    INIT_STATEMENT = "InitStatement"
    FACT_SET = "FactSet"
    ACT_EXECUTED = "ActExecuted"
    # Consequences, recomputed from the inputs on every replay.
    DUTY_CREATED = "DutyCreated"
    DUTY_TERMINATED = "DutyTerminated"
    VIOLATION_RAISED = "ViolationRaised"


INPUT_EVENTS = frozenset({EventKind.FACT_SET, EventKind.ACT_EXECUTED})


@dataclass(frozen=True)
class TraceEvent:
    seq: int
    kind: EventKind
    payload: dict = field(default_factory=dict)

    @property
    def is_input(self) -> bool:
        return self.kind in INPUT_EVENTS


@dataclass(frozen=True)
class Binding:
    """Party assignment for act execution and duty evaluation."""

    actor: Optional[str] = None
    recipient: Optional[str] = None


@dataclass(frozen=True)
class ReasonerState:
    spec: Specification
    base_facts: frozenset[FactEntry] = frozenset()
    duties: tuple[DutyInstance, ...] = ()
    violations: tuple[Violation, ...] = ()
    trace: tuple[TraceEvent, ...] = ()

    @property
    def seq(self) -> int:
        return len(self.trace)

    def input_events(self) -> tuple[TraceEvent, ...]:
        return tuple(e for e in self.trace if e.is_input)


@dataclass(frozen=True)
class ExecutionReport:
    """Outcome of one executeAct call: the resulting state (unchanged when the
    act was refused) plus what the caller needs to explain the decision."""

    state: ReasonerState
    executed: bool
    status: Enablement
    reasons: Reasons
    events: tuple[TraceEvent, ...] = ()


@dataclass(frozen=True)
class WhatIfReport:
    """Projected consequences of an execution that was never committed."""

    status: Enablement
    reasons: Reasons
    events: tuple[TraceEvent, ...]
    violations: tuple[Violation, ...]
    statuses: tuple[ActStatus, ...]


# ---------------------------------------------------------------------------
# Wire encoding — one instance/duty/violation shape shared by trace payloads
# and snapshot documents, so the two always agree byte-for-byte.
# ---------------------------------------------------------------------------

def encode_instance(instance: Instance, value: TruthValue) -> dict:
    return {"type": instance.type_name, "arg": instance.arg, "value": value.value}


def decode_instance(doc: dict) -> tuple[Instance, TruthValue]:
    return Instance(doc["type"], doc["arg"]), TruthValue(doc["value"])


def encode_duty(duty: DutyInstance) -> dict:
    return {
        "duty": duty.type_name,
        "holder": duty.holder,
        "claimant": duty.claimant,
        "createdAtSeq": duty.created_at_seq,
        "violated": duty.violated,
    }


def decode_duty(doc: dict) -> DutyInstance:
    return DutyInstance(
        doc["duty"], doc["holder"], doc["claimant"],
        doc["createdAtSeq"], doc["violated"],
    )


def encode_violation(violation: Violation) -> dict:
    if isinstance(violation.subject, DutyInstance):
        subject = encode_duty(violation.subject)
    else:
        subject = {"type": violation.subject.type_name, "arg": violation.subject.arg}
    return {"kind": violation.kind.value, "subject": subject, "atSeq": violation.at_seq}


def decode_violation(doc: dict) -> Violation:
    subject_doc = doc["subject"]
    if "duty" in subject_doc:
        subject: Union[Instance, DutyInstance] = decode_duty(subject_doc)
    else:
        subject = Instance(subject_doc["type"], subject_doc["arg"])
    return Violation(ViolationKind(doc["kind"]), subject, doc["atSeq"])
