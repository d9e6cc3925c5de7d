"""Service configuration: defaults < config file (JSON) < environment."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields, replace

ENV_PREFIX = "GRIDAUTH_"


@dataclass(frozen=True)
class ServiceConfig:
    listen: str = "127.0.0.1:8000"
    store_path: str = "credentials.store"
    charset_id: str | None = None  # when set, the store file must match
    challenge_ttl_s: float = 120.0  # long enough to transcribe ~12 characters
    session_ttl_s: float = 3600.0
    rate_limit_per_minute: int = 10
    static_dir: str | None = None  # serve the login UI from here when set

    @property
    def host(self) -> str:
        return self.listen.rsplit(":", 1)[0]

    @property
    def port(self) -> int:
        return int(self.listen.rsplit(":", 1)[1])


_ENV_KEYS = {
    "listen": ENV_PREFIX + "LISTEN",
    "store_path": ENV_PREFIX + "STORE",
    "charset_id": ENV_PREFIX + "CHARSET",
    "challenge_ttl_s": ENV_PREFIX + "CHALLENGE_TTL",
    "session_ttl_s": ENV_PREFIX + "SESSION_TTL",
    "rate_limit_per_minute": ENV_PREFIX + "RATE_LIMIT",
    "static_dir": ENV_PREFIX + "STATIC_DIR",
}


def load_config(
    path: str | None = None, env: dict[str, str] | None = None
) -> ServiceConfig:
    """Build the effective config. Unknown file keys are an error (typos)."""
    env = os.environ if env is None else env
    config = ServiceConfig()
    if path is not None:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
        known = {f.name for f in fields(ServiceConfig)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys in {path}: {sorted(unknown)}")
        config = replace(config, **data)
    overrides = {}
    for field_name, key in _ENV_KEYS.items():
        if key in env:
            raw = env[key]
            if field_name in ("challenge_ttl_s", "session_ttl_s"):
                overrides[field_name] = float(raw)
            elif field_name == "rate_limit_per_minute":
                overrides[field_name] = int(raw)
            else:
                overrides[field_name] = raw
    return replace(config, **overrides)
