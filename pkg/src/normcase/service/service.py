"""Case orchestration on top of the reasoner and the file store.

The service owns everything the reasoner deliberately does not know about:
model versions, durable case records, the append-only event log, user
accounts, role grants, and the recovery path that rebuilds in-memory state
after a restart.  Every mutation follows the same discipline: append the
input event to the log first, then refresh the snapshot, then update the
record.  The log is the truth; the snapshot is an optimization that is
ignored whenever it disagrees with the log.
"""
from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from typing import Any

from ..lang import Declaration, DeclKind, DomainKind, Specification, load_spec
from ..reasoner import (
    Binding,
    EventKind,
    ExecutionReport,
    Instance,
    ReasonerError,
    ReasonerState,
    TraceEvent,
    TruthValue,
    act_statuses,
    encode_duty,
    encode_instance,
    encode_violation,
    event_text,
    execute_act,
    from_bool,
    init_state,
    restore,
    replay,
    set_fact,
    snapshot_json,
    what_if,
)
from .records import (
    ADMIN_ROLE,
    CaseEvent,
    CaseEventKind,
    CaseRecord,
    CaseStatus,
    ModelVersion,
    RoleGrant,
    UserAccount,
)
from .store import FileStore


class ServiceError(Exception):
    """An operation failure that maps onto one HTTP response.

    ``extra`` replaces the standard ``{code, message}`` body entirely; it is
    used for the confirmation handshake whose body shape is part of the
    interface contract.
    """

    def __init__(self, status_code: int, code: str, message: str, *,
                 diagnostics: list[dict[str, Any]] | None = None,
                 extra: dict[str, Any] | None = None):
        super().__init__(message)
        self.status_code = status_code
        self.code = code
        self.message = message
        self.diagnostics = diagnostics
        self.extra = extra

    def body(self) -> dict[str, Any]:
        if self.extra is not None:
            return self.extra
        doc: dict[str, Any] = {"code": self.code, "message": self.message}
        if self.diagnostics:
            doc["diagnostics"] = self.diagnostics
        return doc


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _widget_hint(decl: Declaration) -> str:
    if decl.kind is DeclKind.BOOL:
        return "triStateRadio"
    return "numberBox" if decl.domain is DomainKind.INT else "textBox"


_INPUT_KINDS = {CaseEventKind.FACT_SET, CaseEventKind.ACT_EXECUTED}


@dataclass
class CaseService:
    """All case-management operations, independent of the HTTP layer."""

    store: FileStore
    _specs: dict[str, Specification] = field(default_factory=dict)
    _states: dict[str, ReasonerState] = field(default_factory=dict)
    _locks: dict[str, threading.Lock] = field(default_factory=dict)
    _guard: threading.Lock = field(default_factory=threading.Lock)

    # -- users, roles, authorization ------------------------------------

    def bootstrap_admin(self, token: str) -> UserAccount:
        """Create or refresh the ``admin`` account holding ``token``."""
        roles = self.store.read_roles()
        if ADMIN_ROLE not in roles:
            roles[ADMIN_ROLE] = RoleGrant(acts=frozenset({"*"}), facts=True).to_json()
            self.store.write_roles(roles)
        users = self.store.read_users()
        account = UserAccount(user_id="admin", display_name="Administrator",
                              roles=frozenset({ADMIN_ROLE}), token=token)
        users["admin"] = account.to_json(with_token=True)
        self.store.write_users(users)
        return account

    def user_by_token(self, token: str) -> UserAccount | None:
        if not token:
            return None
        for doc in self.store.read_users().values():
            if doc.get("token") == token:
                return UserAccount.from_json(doc)
        return None

    def create_user(self, admin: UserAccount, user_id: str,
                    display_name: str) -> dict[str, Any]:
        self._require_admin(admin)
        if not user_id:
            raise ServiceError(422, "invalid-user", "userId must not be empty")
        users = self.store.read_users()
        if user_id in users:
            raise ServiceError(409, "user-exists",
                               f"user '{user_id}' already exists")
        account = UserAccount(user_id=user_id, display_name=display_name,
                              roles=frozenset(), token=uuid.uuid4().hex)
        users[user_id] = account.to_json(with_token=True)
        self.store.write_users(users)
        return account.to_json(with_token=True)

    def set_user_role(self, admin: UserAccount, user_id: str, role: str,
                      granted: bool) -> dict[str, Any]:
        self._require_admin(admin)
        users = self.store.read_users()
        if user_id not in users:
            raise ServiceError(404, "user-not-found",
                               f"no user '{user_id}'")
        account = UserAccount.from_json(users[user_id]).with_role(role, granted)
        users[user_id] = account.to_json(with_token=True)
        self.store.write_users(users)
        return account.to_json()

    def set_role_permissions(self, admin: UserAccount, role: str,
                             acts: list[str], facts: bool) -> dict[str, Any]:
        self._require_admin(admin)
        grant = RoleGrant(acts=frozenset(acts), facts=facts)
        roles = self.store.read_roles()
        roles[role] = grant.to_json()
        self.store.write_roles(roles)
        return {"role": role, **grant.to_json()}

    def _grants(self, user: UserAccount) -> list[RoleGrant]:
        roles = self.store.read_roles()
        return [RoleGrant.from_json(roles[r]) for r in user.roles if r in roles]

    def _permits_act(self, user: UserAccount, act_name: str) -> bool:
        return any(g.permits_act(act_name) for g in self._grants(user))

    def _permits_facts(self, user: UserAccount) -> bool:
        return any(g.facts for g in self._grants(user))

    def _require_admin(self, user: UserAccount) -> None:
        if ADMIN_ROLE not in user.roles:
            raise ServiceError(403, "permission-denied",
                               "administrator role required")

    def _require_facts(self, user: UserAccount) -> None:
        if not self._permits_facts(user):
            raise ServiceError(403, "permission-denied",
                               "no role of yours allows editing case data")

    # -- model registry -------------------------------------------------

    def register_model(self, user: UserAccount, source: str) -> dict[str, Any]:
        self._require_admin(user)
        result = load_spec(source)
        if not result.ok:
            raise ServiceError(
                422, "invalid-model", "the model does not validate",
                diagnostics=[d.to_json() for d in result.diagnostics])
        version = self.store.put_model(source, _now())
        self._specs[version.version_id] = result.spec
        return version.to_json()

    def list_models(self, user: UserAccount) -> list[dict[str, Any]]:
        return [m.to_json() for m in self.store.list_models()]

    def get_model(self, user: UserAccount, version_id: str) -> dict[str, Any]:
        source = self.store.get_model_source(version_id)
        version = self.store.get_model(version_id)
        if source is None or version is None:
            raise ServiceError(404, "model-not-found",
                               f"no model version '{version_id}'")
        doc = version.to_json()
        doc["source"] = source
        return doc

    def set_active_model(self, user: UserAccount, version_id: str) -> dict[str, Any]:
        self._require_admin(user)
        if self.store.get_model_source(version_id) is None:
            raise ServiceError(404, "model-not-found",
                               f"no model version '{version_id}'")
        config = self.store.read_config()
        config["activeModel"] = version_id
        self.store.write_config(config)
        return {"activeModel": version_id}

    def active_model(self) -> str | None:
        return self.store.read_config().get("activeModel")

    def set_four_eyes(self, user: UserAccount, acts: list[str]) -> dict[str, Any]:
        self._require_admin(user)
        config = self.store.read_config()
        config["fourEyes"] = sorted(set(acts))
        self.store.write_config(config)
        return {"fourEyes": config["fourEyes"]}

    def _spec(self, version_id: str) -> Specification:
        cached = self._specs.get(version_id)
        if cached is not None:
            return cached
        source = self.store.get_model_source(version_id)
        if source is None:
            raise ServiceError(404, "model-not-found",
                               f"no model version '{version_id}'")
        result = load_spec(source)
        if not result.ok:  # a stored model never fails validation
            raise ServiceError(500, "model-corrupt",
                               f"stored model '{version_id}' no longer validates")
        self._specs[version_id] = result.spec
        return result.spec

    # -- case lifecycle -------------------------------------------------

    def create_case(self, user: UserAccount, client_ref: str) -> dict[str, Any]:
        if not client_ref:
            raise ServiceError(422, "invalid-case", "clientRef must not be empty")
        version_id = self.active_model()
        if version_id is None:
            raise ServiceError(409, "no-active-model",
                               "no model version has been activated")
        spec = self._spec(version_id)
        state = init_state(spec)
        record = CaseRecord(case_id=uuid.uuid4().hex, client_ref=client_ref,
                            model_version_id=version_id,
                            status=CaseStatus.OPEN, created_at=_now())
        self.store.create_case_dir(record)
        self.store.write_snapshot(record.case_id, record.snapshot_ref,
                                  snapshot_json(state, version_id))
        with self._guard:
            self._states[record.case_id] = state
        return self.case_view(record, state, user)

    def list_cases(self, user: UserAccount, status: str | None = None,
                   client: str | None = None, query: str | None = None,
                   sort: str | None = None) -> list[dict[str, Any]]:
        records = []
        for case_id in self.store.list_case_ids():
            record = self.store.read_record(case_id)
            if record is None:
                continue
            if status is not None and record.status.value != status:
                continue
            if client is not None and record.client_ref != client:
                continue
            if query is not None:
                needle = query.lower()
                if (needle not in record.case_id.lower()
                        and needle not in record.client_ref.lower()):
                    continue
            records.append(record)
        key_name, _, order = (sort or "createdAt").partition(":")
        if key_name not in ("createdAt", "status", "clientRef", "caseId"):
            raise ServiceError(422, "invalid-sort",
                               f"cannot sort by '{key_name}'")
        keys = {
            "createdAt": lambda r: r.created_at,
            "status": lambda r: r.status.value,
            "clientRef": lambda r: r.client_ref,
            "caseId": lambda r: r.case_id,
        }
        records.sort(key=lambda r: (keys[key_name](r), r.case_id),
                     reverse=order == "desc")
        return [r.to_json() for r in records]

    def _case_lock(self, case_id: str) -> threading.Lock:
        with self._guard:
            lock = self._locks.get(case_id)
            if lock is None:
                lock = self._locks[case_id] = threading.Lock()
            return lock

    def ensure_state(self, case_id: str) -> tuple[CaseRecord, ReasonerState]:
        """Load the case record and rebuild reasoner state if needed.

        The snapshot is used only when it accounts for exactly the input
        events present in the log; otherwise the log is replayed from the
        start.  A case whose log cannot be replayed against its model
        version is reported unavailable rather than silently repaired.
        """
        record = self.store.read_record(case_id)
        if record is None:
            raise ServiceError(404, "case-not-found", f"no case '{case_id}'")
        with self._guard:
            state = self._states.get(case_id)
        if state is not None:
            return record, state
        spec = self._spec(record.model_version_id)
        events = self.store.read_events(case_id)
        inputs = [e for e in events if e.kind in _INPUT_KINDS]
        state = self._from_snapshot(record, spec, len(inputs))
        if state is None:
            try:
                state = replay(spec, [
                    TraceEvent(i, EventKind(e.kind.value), e.payload)
                    for i, e in enumerate(inputs)
                ])
            except ReasonerError as exc:
                raise ServiceError(503, "case-unavailable",
                                   f"case state cannot be rebuilt: {exc}")
        if record.event_count != len(events):
            record = replace(record, event_count=len(events))
            self.store.write_record(record)
        with self._guard:
            self._states[case_id] = state
        return record, state

    def _from_snapshot(self, record: CaseRecord, spec: Specification,
                       input_count: int) -> ReasonerState | None:
        raw = self.store.read_snapshot(record.case_id, record.snapshot_ref)
        if raw is None:
            return None
        try:
            state = restore(spec, raw)
        except ReasonerError:
            return None
        if len(state.input_events()) != input_count:
            return None
        return state

    def forget_cached_state(self) -> None:
        """Drop all in-memory case state, as a process restart would."""
        with self._guard:
            self._states.clear()

    # -- views ----------------------------------------------------------

    def case_view(self, record: CaseRecord, state: ReasonerState,
                  user: UserAccount) -> dict[str, Any]:
        spec = state.spec
        slots = []
        for decl in spec.declarations:
            if decl.kind not in (DeclKind.VAR, DeclKind.BOOL):
                continue
            slots.append({
                "typeName": decl.name,
                "domain": (decl.domain.value
                           if decl.domain is not DomainKind.NONE else None),
                "openness": decl.openness.value,
                "currentValue": self._slot_value(state, decl),
                "widgetHint": _widget_hint(decl),
            })
        actions = []
        closed = record.closed()
        binding = Binding(actor=record.client_ref)
        for status in act_statuses(state, binding):
            actions.append({
                "act": status.act,
                "status": status.status.value,
                "reasons": [[clause, value.value]
                            for clause, value in status.reasons],
                "permitted": (not closed) and self._permits_act(user, status.act),
            })
        return {
            "case": record.to_json(),
            "factSlots": slots,
            "actions": actions,
            "duties": [encode_duty(d) for d in state.duties],
            "violations": [encode_violation(v) for v in state.violations],
            "traceLength": state.seq,
        }

    def _slot_value(self, state: ReasonerState, decl: Declaration) -> Any:
        for entry in state.base_facts:
            if entry.instance.type_name != decl.name:
                continue
            if decl.kind is DeclKind.BOOL:
                return entry.value
            if entry.value:
                return entry.instance.arg
        return None

    def get_case(self, user: UserAccount, case_id: str) -> dict[str, Any]:
        with self._case_lock(case_id):
            record, state = self.ensure_state(case_id)
        return self.case_view(record, state, user)

    # -- mutations ------------------------------------------------------

    def update_fact(self, user: UserAccount, case_id: str, type_name: str,
                    value: Any) -> dict[str, Any]:
        self._require_facts(user)
        with self._case_lock(case_id):
            record, state = self.ensure_state(case_id)
            self._require_open(record)
            instance, truth = self._coerce_setting(state.spec, type_name, value)
            try:
                new_state = set_fact(state, instance, truth)
            except ReasonerError as exc:
                raise ServiceError(422, "invalid-value", str(exc))
            record = self._commit(record, new_state, CaseEventKind.FACT_SET,
                                  user, encode_instance(instance, truth))
        return self.case_view(record, new_state, user)

    def perform_act(self, user: UserAccount, case_id: str, act_name: str,
                    actor: str | None = None, recipient: str | None = None,
                    confirm: bool = False) -> dict[str, Any]:
        if not self._permits_act(user, act_name):
            raise ServiceError(403, "permission-denied",
                               f"no role of yours allows performing '{act_name}'")
        with self._case_lock(case_id):
            record, state = self.ensure_state(case_id)
            self._require_open(record)
            pending = self._four_eyes_gate(record, act_name, user)
            if pending is not None:
                return pending
            actor = actor or record.client_ref
            try:
                report = execute_act(state, act_name, actor,
                                     recipient=recipient, confirmed=confirm)
            except ReasonerError as exc:
                raise ServiceError(422, "invalid-act", str(exc))
            if not report.executed:
                raise ServiceError(409, "confirmation-required",
                                   "the act is not enabled", extra={
                                       "requiresConfirmation": True,
                                       "report": self._report_doc(report),
                                   })
            if act_name in record.pending_approvals:
                remaining = dict(record.pending_approvals)
                del remaining[act_name]
                record = replace(record, pending_approvals=remaining)
            payload = {"act": act_name, "actor": actor,
                       "recipient": recipient, "confirmed": confirm}
            record = self._commit(record, report.state,
                                  CaseEventKind.ACT_EXECUTED, user, payload)
        view = self.case_view(record, report.state, user)
        view["report"] = self._report_doc(report)
        return view

    def _four_eyes_gate(self, record: CaseRecord, act_name: str,
                        user: UserAccount) -> dict[str, Any] | None:
        """Returns the pending-approval response, or None to proceed."""
        config = self.store.read_config()
        if act_name not in config.get("fourEyes", []):
            return None
        first = record.pending_approvals.get(act_name)
        if first is None:
            updated = replace(record, pending_approvals={
                **record.pending_approvals, act_name: user.user_id})
            self.store.write_record(updated)
            return {"pendingApproval": True, "act": act_name,
                    "approvedBy": user.user_id}
        if first == user.user_id:
            raise ServiceError(403, "four-eyes",
                               "a different user must give the second approval")
        return None

    def simulate_act(self, user: UserAccount, case_id: str, act_name: str,
                     actor: str | None = None,
                     recipient: str | None = None) -> dict[str, Any]:
        with self._case_lock(case_id):
            record, state = self.ensure_state(case_id)
        actor = actor or record.client_ref
        try:
            report = what_if(state, act_name, actor, recipient=recipient)
        except ReasonerError as exc:
            raise ServiceError(422, "invalid-act", str(exc))
        return {
            "act": act_name,
            "status": report.status.value,
            "reasons": [[clause, value.value] for clause, value in report.reasons],
            "projectedEvents": [self._event_doc(e) for e in report.events],
            "projectedViolations": [encode_violation(v)
                                    for v in report.violations],
            "resultingActions": [{
                "act": s.act,
                "status": s.status.value,
                "reasons": [[c, v.value] for c, v in s.reasons],
            } for s in report.statuses],
        }

    def get_trace(self, user: UserAccount, case_id: str) -> list[dict[str, Any]]:
        with self._case_lock(case_id):
            record, state = self.ensure_state(case_id)
        events = self.store.read_events(case_id)
        inputs = [e for e in events if e.kind in _INPUT_KINDS]
        entries = []
        ordinal = 0
        for event in state.trace:
            entry = self._event_doc(event)
            if event.is_input:
                case_event = inputs[ordinal]
                ordinal += 1
                entry["userId"] = case_event.user_id
                entry["at"] = case_event.at
            entries.append(entry)
        for event in events:
            if event.kind is CaseEventKind.CASE_CLOSED:
                entries.append({"kind": event.kind.value,
                                "text": "case closed",
                                "userId": event.user_id, "at": event.at})
        return entries

    def close_case(self, user: UserAccount, case_id: str) -> dict[str, Any]:
        self._require_facts(user)
        with self._case_lock(case_id):
            record, state = self.ensure_state(case_id)
            self._require_open(record)
            event = CaseEvent(seq=record.event_count,
                              kind=CaseEventKind.CASE_CLOSED,
                              user_id=user.user_id, at=_now(), payload={})
            self.store.append_event(case_id, event)
            record = replace(record, status=CaseStatus.CLOSED,
                             closed_at=event.at,
                             event_count=record.event_count + 1)
            self.store.write_record(record)
        return self.case_view(record, state, user)

    # -- helpers --------------------------------------------------------

    def _require_open(self, record: CaseRecord) -> None:
        if record.closed():
            raise ServiceError(409, "case-closed",
                               f"case '{record.case_id}' is closed")

    def _commit(self, record: CaseRecord, state: ReasonerState,
                kind: CaseEventKind, user: UserAccount,
                payload: dict[str, Any]) -> CaseRecord:
        """Append the input event, refresh the snapshot, update the record."""
        event = CaseEvent(seq=record.event_count, kind=kind,
                          user_id=user.user_id, at=_now(), payload=payload)
        self.store.append_event(record.case_id, event)
        self.store.write_snapshot(record.case_id, record.snapshot_ref,
                                  snapshot_json(state, record.model_version_id))
        record = replace(record, event_count=record.event_count + 1)
        self.store.write_record(record)
        with self._guard:
            self._states[record.case_id] = state
        return record

    def _coerce_setting(self, spec: Specification, type_name: str,
                        value: Any) -> tuple[Instance, TruthValue]:
        decl = spec.declaration(type_name)
        if decl is None:
            raise ServiceError(422, "unknown-type",
                               f"the model declares no '{type_name}'")
        if decl.kind is DeclKind.VAR:
            if value is None:
                return Instance(type_name), TruthValue.UNKNOWN
            expected = int if decl.domain is DomainKind.INT else str
            if not isinstance(value, expected) or isinstance(value, bool):
                raise ServiceError(
                    422, "invalid-value",
                    f"'{type_name}' takes a {decl.domain.value} value")
            return Instance(type_name, value), TruthValue.TRUE
        if decl.kind is DeclKind.BOOL:
            if value is None or value == "unknown":
                return Instance(type_name), TruthValue.UNKNOWN
            if not isinstance(value, bool):
                raise ServiceError(422, "invalid-value",
                                   f"'{type_name}' takes true, false or null")
            return Instance(type_name), from_bool(value)
        if decl.kind is DeclKind.FACT and not decl.is_derived:
            if decl.domain is not DomainKind.NONE:
                raise ServiceError(
                    422, "invalid-value",
                    f"'{type_name}' instances are managed by acts")
            if value is None:
                return Instance(type_name), TruthValue.UNKNOWN
            if not isinstance(value, bool):
                raise ServiceError(422, "invalid-value",
                                   f"'{type_name}' takes true, false or null")
            return Instance(type_name), from_bool(value)
        raise ServiceError(422, "invalid-value",
                           f"'{type_name}' cannot be set directly")

    def _event_doc(self, event: TraceEvent) -> dict[str, Any]:
        return {"seq": event.seq, "kind": event.kind.value,
                "payload": event.payload, "text": event_text(event)}

    def _report_doc(self, report: ExecutionReport) -> dict[str, Any]:
        return {
            "executed": report.executed,
            "status": report.status.value,
            "reasons": [[clause, value.value]
                        for clause, value in report.reasons],
            "events": [self._event_doc(e) for e in report.events],
        }
