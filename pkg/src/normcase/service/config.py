"""Process configuration, read once from the environment at startup."""
from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

ENV_STORE_DIR = "NORMCASE_STORE_DIR"
ENV_LISTEN = "NORMCASE_LISTEN"
ENV_ACTIVE_MODEL = "NORMCASE_ACTIVE_MODEL"
ENV_ADMIN_TOKEN = "NORMCASE_ADMIN_TOKEN"


@dataclass(frozen=True)
class Settings:
    """Everything the server needs that is not stored in the store itself."""

    store_dir: Path
    host: str = "127.0.0.1"
    port: int = 8000
    active_model_path: Path | None = None
    admin_token: str = "dev-admin-token"

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None) -> "Settings":
        env = dict(os.environ if env is None else env)
        listen = env.get(ENV_LISTEN, "127.0.0.1:8000")
        host, _, port_text = listen.rpartition(":")
        if not host or not port_text.isdigit():
            raise ValueError(f"{ENV_LISTEN} must look like host:port, got {listen!r}")
        model_path = env.get(ENV_ACTIVE_MODEL)
        return cls(
            store_dir=Path(env.get(ENV_STORE_DIR, "normcase-data")),
            host=host,
            port=int(port_text),
            active_model_path=Path(model_path) if model_path else None,
            admin_token=env.get(ENV_ADMIN_TOKEN, "dev-admin-token"),
        )
