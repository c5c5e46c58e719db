"""The HTTP surface: a thin FastAPI layer over :class:`CaseService`.

Routes translate between JSON and service calls and nothing else — every
rule (authorization, confirmation, four-eyes, closed-case checks) lives in
the service so it is enforced identically for every transport.
"""
from typing import Annotated, Any

from fastapi import Depends, FastAPI, Header, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .config import Settings
from .records import UserAccount
from .service import CaseService, ServiceError
from .store import FileStore


class RegisterModelBody(BaseModel):
    source: str


class ActiveModelBody(BaseModel):
    versionId: str


class FourEyesBody(BaseModel):
    acts: list[str]


class CreateCaseBody(BaseModel):
    clientRef: str


class FactBody(BaseModel):
    typeName: str
    value: Any = None


class ActBody(BaseModel):
    act: str
    actor: str | None = None
    recipient: str | None = None
    confirm: bool = False


class SimulateBody(BaseModel):
    act: str
    actor: str | None = None
    recipient: str | None = None


class CreateUserBody(BaseModel):
    userId: str
    displayName: str = ""


class RoleAssignmentBody(BaseModel):
    role: str
    grant: bool = True


class PermissionsBody(BaseModel):
    acts: list[str] = Field(default_factory=list)
    facts: bool = False


def create_app(service: CaseService) -> FastAPI:
    app = FastAPI(title="normcase", docs_url=None, redoc_url=None)

    def current_user(authorization: Annotated[str | None, Header()] = None,
                     ) -> UserAccount:
        scheme, _, token = (authorization or "").partition(" ")
        if scheme.lower() != "bearer" or not token:
            raise ServiceError(401, "unauthenticated",
                               "send an Authorization: Bearer <token> header")
        user = service.user_by_token(token.strip())
        if user is None:
            raise ServiceError(401, "unauthenticated", "unknown token")
        return user

    User = Annotated[UserAccount, Depends(current_user)]

    @app.exception_handler(ServiceError)
    async def service_error(_request: Request, exc: ServiceError):
        return JSONResponse(status_code=exc.status_code, content=exc.body())

    # -- models and configuration ---------------------------------------

    @app.post("/models", status_code=201)
    def register_model(body: RegisterModelBody, user: User):
        return service.register_model(user, body.source)

    @app.get("/models")
    def list_models(user: User):
        return service.list_models(user)

    @app.get("/models/{version_id}")
    def get_model(version_id: str, user: User):
        return service.get_model(user, version_id)

    @app.put("/config/active-model")
    def set_active_model(body: ActiveModelBody, user: User):
        return service.set_active_model(user, body.versionId)

    @app.put("/config/four-eyes")
    def set_four_eyes(body: FourEyesBody, user: User):
        return service.set_four_eyes(user, body.acts)

    # -- cases ----------------------------------------------------------

    @app.post("/cases", status_code=201)
    def create_case(body: CreateCaseBody, user: User):
        return service.create_case(user, body.clientRef)

    @app.get("/cases")
    def list_cases(user: User, status: str | None = None,
                   client: str | None = None, q: str | None = None,
                   sort: str | None = None):
        return service.list_cases(user, status=status, client=client,
                                  query=q, sort=sort)

    @app.get("/cases/{case_id}")
    def get_case(case_id: str, user: User):
        return service.get_case(user, case_id)

    @app.patch("/cases/{case_id}/facts")
    def update_fact(case_id: str, body: FactBody, user: User):
        return service.update_fact(user, case_id, body.typeName, body.value)

    @app.post("/cases/{case_id}/acts")
    def perform_act(case_id: str, body: ActBody, user: User):
        result = service.perform_act(user, case_id, body.act,
                                     actor=body.actor,
                                     recipient=body.recipient,
                                     confirm=body.confirm)
        if result.get("pendingApproval"):
            return JSONResponse(status_code=202, content=result)
        return result

    @app.post("/cases/{case_id}/simulate")
    def simulate_act(case_id: str, body: SimulateBody, user: User):
        return service.simulate_act(user, case_id, body.act,
                                    actor=body.actor,
                                    recipient=body.recipient)

    @app.get("/cases/{case_id}/trace")
    def get_trace(case_id: str, user: User):
        return service.get_trace(user, case_id)

    @app.post("/cases/{case_id}/close")
    def close_case(case_id: str, user: User):
        return service.close_case(user, case_id)

    # -- users and roles ------------------------------------------------

    @app.post("/users", status_code=201)
    def create_user(body: CreateUserBody, user: User):
        return service.create_user(user, body.userId, body.displayName)

    @app.post("/users/{user_id}/roles")
    def set_user_role(user_id: str, body: RoleAssignmentBody, user: User):
        return service.set_user_role(user, user_id, body.role, body.grant)

    @app.put("/roles/{role}/permissions")
    def set_role_permissions(role: str, body: PermissionsBody, user: User):
        return service.set_role_permissions(user, role, body.acts, body.facts)

    return app


def build_service(settings: Settings) -> CaseService:
    """Open the store and apply the bootstrap steps from the settings."""
    service = CaseService(FileStore(settings.store_dir))
    admin = service.bootstrap_admin(settings.admin_token)
    if settings.active_model_path is not None:
        source = settings.active_model_path.read_text(encoding="utf-8")
        version = service.register_model(admin, source)
        service.set_active_model(admin, version["versionId"])
    return service
