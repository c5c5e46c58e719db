"""Durable case management: storage, orchestration, and the HTTP API."""
from .api import build_service, create_app
from .config import Settings
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
from .service import CaseService, ServiceError
from .store import FileStore

__all__ = [
    "ADMIN_ROLE",
    "CaseEvent",
    "CaseEventKind",
    "CaseRecord",
    "CaseService",
    "CaseStatus",
    "FileStore",
    "ModelVersion",
    "RoleGrant",
    "ServiceError",
    "Settings",
    "UserAccount",
    "build_service",
    "create_app",
]
