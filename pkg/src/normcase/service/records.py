"""Service-level records: model versions, cases, users and case events.

These are the durable shapes — everything here has a stable JSON form used
both on disk and over the API.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional


@dataclass(frozen=True)
class ModelVersion:
    version_id: str          # lowercase hex SHA-256 of the source bytes
    registered_at: str       # ISO timestamp of first registration

    def to_json(self) -> dict:
        return {"versionId": self.version_id, "registeredAt": self.registered_at}


class CaseStatus(Enum):
    OPEN = "Open"
    CLOSED = "Closed"


@dataclass(frozen=True)
class CaseRecord:
    case_id: str
    client_ref: str
    model_version_id: str
    status: CaseStatus = CaseStatus.OPEN
    created_at: str = ""
    closed_at: Optional[str] = None
    event_count: int = 0
    snapshot_ref: str = "snapshot.json"
    # Four-eyes bookkeeping: act name -> userId of the first approver.
    pending_approvals: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "caseId": self.case_id,
            "clientRef": self.client_ref,
            "modelVersionId": self.model_version_id,
            "status": self.status.value,
            "createdAt": self.created_at,
            "closedAt": self.closed_at,
            "eventCount": self.event_count,
            "snapshotRef": self.snapshot_ref,
            "pendingApprovals": self.pending_approvals,
        }

    @staticmethod
    def from_json(doc: dict) -> "CaseRecord":
        return CaseRecord(
            case_id=doc["caseId"],
            client_ref=doc["clientRef"],
            model_version_id=doc["modelVersionId"],
            status=CaseStatus(doc["status"]),
            created_at=doc["createdAt"],
            closed_at=doc["closedAt"],
            event_count=doc["eventCount"],
            snapshot_ref=doc["snapshotRef"],
            pending_approvals=doc.get("pendingApprovals", {}),
        )

    def closed(self) -> bool:
        return self.status is CaseStatus.CLOSED


class CaseEventKind(Enum):
    FACT_SET = "FactSet"
    ACT_EXECUTED = "ActExecuted"
    CASE_CLOSED = "CaseClosed"


@dataclass(frozen=True)
class CaseEvent:
    seq: int
    kind: CaseEventKind
    user_id: str
    at: str
    payload: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "seq": self.seq,
            "kind": self.kind.value,
            "userId": self.user_id,
            "at": self.at,
            "payload": self.payload,
        }

    @staticmethod
    def from_json(doc: dict) -> "CaseEvent":
        return CaseEvent(
            seq=doc["seq"],
            kind=CaseEventKind(doc["kind"]),
            user_id=doc["userId"],
            at=doc["at"],
            payload=doc["payload"],
        )


@dataclass(frozen=True)
class UserAccount:
    user_id: str
    display_name: str
    roles: frozenset[str] = frozenset()
    token: str = ""

    def to_json(self, with_token: bool = False) -> dict:
        doc = {
            "userId": self.user_id,
            "displayName": self.display_name,
            "roles": sorted(self.roles),
        }
        if with_token:
            doc["token"] = self.token
        return doc

    @staticmethod
    def from_json(doc: dict) -> "UserAccount":
        return UserAccount(
            user_id=doc["userId"],
            display_name=doc["displayName"],
            roles=frozenset(doc["roles"]),
            token=doc["token"],
        )

    def with_role(self, role: str, granted: bool) -> "UserAccount":
        roles = self.roles | {role} if granted else self.roles - {role}
        return replace(self, roles=roles)


@dataclass(frozen=True)
class RoleGrant:
    """What a role may do: a set of act names (or the wildcard) plus whether
    it covers fact entry. Admin capability is the well-known role name."""

    acts: frozenset[str] = frozenset()
    facts: bool = False

    def permits_act(self, act_name: str) -> bool:
        return "*" in self.acts or act_name in self.acts

    def to_json(self) -> dict:
        return {"acts": sorted(self.acts), "facts": self.facts}

    @staticmethod
    def from_json(doc: dict) -> "RoleGrant":
        return RoleGrant(frozenset(doc.get("acts", ())), doc.get("facts", False))


ADMIN_ROLE = "admin"
