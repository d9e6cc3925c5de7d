"""HTTP wiring around AuthService.

Endpoints:
    POST /api/challenge  -> 200 {challenge_id, grid: [{ch, code}...], expires_at, ttl_s}
    POST /api/login      -> 200 {ok: true, session}
                            401 {ok: false, reason, next_challenge}
    POST /api/logout     -> 200 {ok: true}
    GET  /api/health     -> 200 {status, store_size}

Challenge and login are rate limited per source address (sliding window);
over the threshold both return 429 {ok: false, reason: "throttled"}. The
login UI, when built, is served as static files from the configured
directory. TLS termination is a deployment concern, not handled here.
"""

from __future__ import annotations

import os
import threading
import time
from collections import deque
from typing import Callable

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .config import ServiceConfig
from .errors import GridAuthError
from .service import AuthService

THROTTLED = "throttled"


class SlidingWindowLimiter:
    """Per-key attempt counter over a rolling window."""

    def __init__(
        self,
        limit: int,
        window_s: float = 60.0,
        clock: Callable[[], float] = time.monotonic,
    ) -> None:
        self.limit = limit
        self.window_s = window_s
        self._clock = clock
        self._events: dict[str, deque[float]] = {}
        self._lock = threading.Lock()

    def allow(self, key: str) -> bool:
        now = self._clock()
        with self._lock:
            events = self._events.setdefault(key, deque())
            while events and now - events[0] > self.window_s:
                events.popleft()
            if len(events) >= self.limit:
                return False
            events.append(now)
            return True


class LoginBody(BaseModel):
    challenge_id: str
    digits: str
    username: str | None = None


class LogoutBody(BaseModel):
    session: str


def _client_key(request: Request) -> str:
    return request.client.host if request.client else "unknown"


def _throttled() -> JSONResponse:
    return JSONResponse(status_code=429, content={"ok": False, "reason": THROTTLED})


def create_app(service: AuthService, config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="gridauth", docs_url=None, redoc_url=None)
    limiter = SlidingWindowLimiter(limit=config.rate_limit_per_minute)

    @app.post("/api/challenge")
    def issue_challenge(request: Request):
        if not limiter.allow(_client_key(request)):
            return _throttled()
        try:
            return service.issue_challenge().payload()
        except GridAuthError as e:
            return JSONResponse(status_code=503, content={"ok": False, "reason": e.code})

    @app.post("/api/login")
    def login(request: Request, body: LoginBody):
        if not limiter.allow(_client_key(request)):
            return _throttled()
        try:
            outcome = service.login(body.challenge_id, body.digits, body.username)
        except GridAuthError as e:
            return JSONResponse(status_code=503, content={"ok": False, "reason": e.code})
        if outcome.ok:
            return {"ok": True, "session": outcome.session}
        return JSONResponse(
            status_code=401,
            content={
                "ok": False,
                "reason": outcome.reason,
                "next_challenge": outcome.next_challenge.payload(),
            },
        )

    @app.post("/api/logout")
    def logout(body: LogoutBody):
        service.logout(body.session)
        return {"ok": True}

    @app.get("/api/health")
    def health():
        return service.health()

    if config.static_dir and os.path.isdir(config.static_dir):
        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="ui")

    return app
