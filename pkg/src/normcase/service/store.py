"""File-backed persistence.

Layout under the store directory:

    models/<sha256>            model source bytes, content-addressed
    models/<sha256>.meta.json  registration metadata
    config.json                active model pointer, four-eyes act list
    users.json                 user accounts (tokens included — local store)
    roles.json                 role -> grant table
    cases/<caseId>/record.json
    cases/<caseId>/events.log     length-prefixed canonical JSON case events
    cases/<caseId>/snapshot.json  latest reasoner snapshot

The event log is the authority: appends are fsynced before the snapshot is
rewritten, and a torn final record (crash mid-append) is ignored on read.
Snapshots and records are replaced atomically via a temp file.
"""

from __future__ import annotations

import hashlib
import json
import os
import struct
from pathlib import Path
from typing import Iterator, Optional

from ..reasoner import canonical_json
from .records import CaseEvent, CaseRecord, ModelVersion

_LENGTH = struct.Struct(">I")


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


def _write_json(path: Path, document: dict) -> None:
    _atomic_write(path, (canonical_json(document) + "\n").encode("utf-8"))


def _read_json(path: Path) -> Optional[dict]:
    if not path.exists():
        return None
    return json.loads(path.read_text("utf-8"))


class FileStore:
    def __init__(self, root: os.PathLike | str):
        self.root = Path(root)
        (self.root / "models").mkdir(parents=True, exist_ok=True)
        (self.root / "cases").mkdir(parents=True, exist_ok=True)

    # -- models -------------------------------------------------------------

    def put_model(self, source: str, registered_at: str) -> ModelVersion:
        data = source.encode("utf-8")
        version_id = hashlib.sha256(data).hexdigest()
        blob = self.root / "models" / version_id
        meta = self.root / "models" / (version_id + ".meta.json")
        if not blob.exists():
            _atomic_write(blob, data)
            _write_json(meta, {"registeredAt": registered_at})
            return ModelVersion(version_id, registered_at)
        doc = _read_json(meta) or {"registeredAt": registered_at}
        return ModelVersion(version_id, doc["registeredAt"])

    def get_model_source(self, version_id: str) -> Optional[str]:
        blob = self.root / "models" / version_id
        if not blob.exists():
            return None
        return blob.read_text("utf-8")

    def get_model(self, version_id: str) -> Optional[ModelVersion]:
        meta = _read_json(self.root / "models" / (version_id + ".meta.json"))
        if meta is None or not (self.root / "models" / version_id).exists():
            return None
        return ModelVersion(version_id, meta["registeredAt"])

    def list_models(self) -> list[ModelVersion]:
        versions = []
        for meta in sorted((self.root / "models").glob("*.meta.json")):
            version_id = meta.name[: -len(".meta.json")]
            model = self.get_model(version_id)
            if model is not None:
                versions.append(model)
        versions.sort(key=lambda m: (m.registered_at, m.version_id))
        return versions

    # -- flat documents -----------------------------------------------------

    def read_config(self) -> dict:
        return _read_json(self.root / "config.json") or {
            "activeModel": None, "fourEyes": [],
        }

    def write_config(self, config: dict) -> None:
        _write_json(self.root / "config.json", config)

    def read_users(self) -> dict:
        return _read_json(self.root / "users.json") or {}

    def write_users(self, users: dict) -> None:
        _write_json(self.root / "users.json", users)

    def read_roles(self) -> dict:
        return _read_json(self.root / "roles.json") or {}

    def write_roles(self, roles: dict) -> None:
        _write_json(self.root / "roles.json", roles)

    # -- cases --------------------------------------------------------------

    def _case_dir(self, case_id: str) -> Path:
        return self.root / "cases" / case_id

    def create_case_dir(self, record: CaseRecord) -> None:
        directory = self._case_dir(record.case_id)
        directory.mkdir(parents=True, exist_ok=False)
        (directory / "events.log").touch()
        self.write_record(record)

    def write_record(self, record: CaseRecord) -> None:
        _write_json(self._case_dir(record.case_id) / "record.json",
                    record.to_json())

    def read_record(self, case_id: str) -> Optional[CaseRecord]:
        doc = _read_json(self._case_dir(case_id) / "record.json")
        return None if doc is None else CaseRecord.from_json(doc)

    def list_case_ids(self) -> list[str]:
        cases = self.root / "cases"
        return sorted(p.name for p in cases.iterdir() if p.is_dir())

    def append_event(self, case_id: str, event: CaseEvent) -> None:
        record = canonical_json(event.to_json()).encode("utf-8")
        path = self._case_dir(case_id) / "events.log"
        with open(path, "ab") as handle:
            handle.write(_LENGTH.pack(len(record)) + record)
            handle.flush()
            os.fsync(handle.fileno())

    def read_events(self, case_id: str) -> list[CaseEvent]:
        path = self._case_dir(case_id) / "events.log"
        if not path.exists():
            return []
        return list(self._iter_events(path.read_bytes()))

    @staticmethod
    def _iter_events(data: bytes) -> Iterator[CaseEvent]:
        offset = 0
        while offset + _LENGTH.size <= len(data):
            (length,) = _LENGTH.unpack_from(data, offset)
            start = offset + _LENGTH.size
            if start + length > len(data):
                return  # torn tail record from a crash mid-append
            try:
                doc = json.loads(data[start:start + length].decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError):
                return
            yield CaseEvent.from_json(doc)
            offset = start + length

    def write_snapshot(self, case_id: str, snapshot_ref: str,
                       document_json: str) -> None:
        _atomic_write(self._case_dir(case_id) / snapshot_ref,
                      document_json.encode("utf-8"))

    def read_snapshot(self, case_id: str, snapshot_ref: str) -> Optional[str]:
        path = self._case_dir(case_id) / snapshot_ref
        if not path.exists():
            return None
        return path.read_text("utf-8")
