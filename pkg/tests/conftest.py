"""Shared fixtures: model sources, a service harness, and the acceptance
criteria summary printed at the end of a run."""
from __future__ import annotations

from dataclasses import dataclass, field

import pytest
from fastapi.testclient import TestClient

from normcase.fixtures import fixture_source
from normcase.lang import Specification, load_spec
from normcase.service import CaseService, FileStore, create_app

QUITTANCE = fixture_source()

# Same norms, lower income threshold: acts flip for incomes in between.
QUITTANCE_V2 = QUITTANCE.replace("=income-threshold(1500).",
                                 "=income-threshold(800).")
assert QUITTANCE_V2 != QUITTANCE

# V2 plus one extra physical act (appealing a refusal).
QUITTANCE_V3 = QUITTANCE_V2 + """
Act appeal-filed Actor applicant Recipient municipality
  Conditioned by Holds(quittance-refused(applicant)).

Physical Act file-appeal Syncs with appeal-filed.
"""

# Three acts, two actors: assigning work creates a duty, finishing discharges
# it, cancelling needs a rush that is never confirmed and breaches the duty.
MICRO_MODEL = """
Open Bool rush.
Fact task Identified by String.
Fact cancelled Identified by String.

Act task-assigned Actor worker Recipient supervisor
  Conditioned by Not Holds(task(worker))
  Creates task(worker), finish-duty.

Act task-finished Actor worker Recipient supervisor
  Conditioned by Holds(task(worker))
  Terminates task(worker).

Act task-cancelled Actor worker Recipient supervisor
  Holds when rush
  Creates cancelled(worker).

Physical Act assign-task Syncs with task-assigned.
Physical Act finish-task Syncs with task-finished.
Physical Act cancel-task Syncs with task-cancelled.

Duty finish-duty Holder worker Claimant supervisor
  Violated when Holds(cancelled(worker))
  Terminated by finish-task.
"""


def load_ok(source: str) -> Specification:
    result = load_spec(source)
    assert result.ok, [str(d) for d in result.diagnostics]
    return result.spec


@pytest.fixture(scope="session")
def quittance_spec() -> Specification:
    return load_ok(QUITTANCE)


@pytest.fixture(scope="session")
def micro_spec() -> Specification:
    return load_ok(MICRO_MODEL)


@dataclass
class Harness:
    """One service with its HTTP client and a few convenience calls."""

    service: CaseService
    client: TestClient
    admin: dict[str, str]
    store_root: object = None
    tokens: dict[str, str] = field(default_factory=dict)

    def register(self, source: str) -> str:
        response = self.client.post("/models", json={"source": source},
                                    headers=self.admin)
        assert response.status_code == 201, response.json()
        return response.json()["versionId"]

    def activate(self, version_id: str) -> None:
        response = self.client.put("/config/active-model",
                                   json={"versionId": version_id},
                                   headers=self.admin)
        assert response.status_code == 200, response.json()

    def user(self, user_id: str, *roles: str) -> dict[str, str]:
        response = self.client.post("/users", json={"userId": user_id},
                                    headers=self.admin)
        assert response.status_code == 201, response.json()
        self.tokens[user_id] = response.json()["token"]
        for role in roles:
            granted = self.client.post(f"/users/{user_id}/roles",
                                       json={"role": role}, headers=self.admin)
            assert granted.status_code == 200, granted.json()
        return {"Authorization": "Bearer " + self.tokens[user_id]}

    def caseworker(self, user_id: str = "worker") -> dict[str, str]:
        self.client.put("/roles/caseworker/permissions",
                        json={"acts": ["*"], "facts": True},
                        headers=self.admin)
        return self.user(user_id, "caseworker")

    def new_case(self, client_ref: str, headers: dict[str, str]) -> str:
        response = self.client.post("/cases", json={"clientRef": client_ref},
                                    headers=headers)
        assert response.status_code == 201, response.json()
        return response.json()["case"]["caseId"]


def make_harness(store_root) -> Harness:
    service = CaseService(FileStore(store_root))
    service.bootstrap_admin("admin-token")
    client = TestClient(create_app(service))
    return Harness(service=service, client=client,
                   admin={"Authorization": "Bearer admin-token"},
                   store_root=store_root)


@pytest.fixture
def harness(tmp_path) -> Harness:
    return make_harness(tmp_path / "store")


@pytest.fixture
def fixture_harness(harness) -> Harness:
    """Harness with the tax-remission model registered and active."""
    harness.activate(harness.register(QUITTANCE))
    return harness


# -- acceptance criteria summary ----------------------------------------

_criteria: dict[str, tuple[str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(name): names the acceptance criterion a test enforces")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and report.when == "call":
        _criteria[marker.args[0]] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, (outcome, duration) in _criteria.items():
        word = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{word}  {name}  ({duration:.2f}s)")
