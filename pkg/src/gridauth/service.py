"""Challenge-issuing authentication core.

Every login attempt gets its own single-use grid: a challenge is registered
when issued, atomically consumed by the first submission that names it, and
replaced by a fresh one embedded in every failure response (the client
re-renders a new grid after each attempt). Consumption under the registry
lock is the single linearization point — under concurrent duplicate
submissions exactly one verification runs.

Grids are security-bearing, so the default random source is SystemRandom;
tests inject a seeded Random and a fake clock.
"""

from __future__ import annotations

import random
import secrets
import threading
import time
from dataclasses import dataclass
from typing import Callable

from .charset import CharacterSet
from .codegrid import CodeGrid, DigitSequence, generate
from .errors import GridAuthError
from .store import CredentialStore
from .verifier import verify_inverted, verify_username_scoped

# Failure reasons on the wire. Authentication failures are deliberately
# uniform: the response never distinguishes "no such password" from "wrong
# digits", nor reveals which position failed.
UNKNOWN_CHALLENGE = "unknown-challenge"
CHALLENGE_EXPIRED = "challenge-expired"
CHALLENGE_ALREADY_USED = "challenge-already-used"
MALFORMED_DIGITS = "malformed-digits"
AUTHENTICATION_FAILED = "authentication-failed"


@dataclass(frozen=True)
class Challenge:
    id: str  # >= 128 bits of entropy, unguessable
    grid: CodeGrid
    issued_at: float
    expires_at: float

    def payload(self) -> dict:
        """Wire shape of a challenge: id, ordered (character, digit) cells."""
        return {
            "challenge_id": self.id,
            "grid": [{"ch": ch, "code": code} for ch, code in self.grid.items()],
            "expires_at": self.expires_at,
            "ttl_s": max(0.0, self.expires_at - self.issued_at),
        }


@dataclass(frozen=True)
class LoginOutcome:
    ok: bool
    session: str | None = None
    reason: str | None = None
    next_challenge: Challenge | None = None


class ChallengeRegistry:
    """Active challenges keyed by id; consume-at-most-once semantics."""

    # how long a consumed id is remembered so replays say "already used"
    # rather than "unknown"
    CONSUMED_MEMORY_S = 3600.0

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._active: dict[str, Challenge] = {}
        self._consumed: dict[str, float] = {}

    def register(self, challenge: Challenge, now: float) -> None:
        with self._lock:
            self._purge(now)
            self._active[challenge.id] = challenge

    def consume(self, challenge_id: str, now: float) -> Challenge | str:
        """Atomically claim a challenge; returns it or a failure reason."""
        with self._lock:
            if challenge_id in self._consumed:
                return CHALLENGE_ALREADY_USED
            challenge = self._active.pop(challenge_id, None)
            if challenge is None:
                return UNKNOWN_CHALLENGE
            self._consumed[challenge_id] = now
            if now > challenge.expires_at:
                return CHALLENGE_EXPIRED
            return challenge

    def active_ids(self) -> set[str]:
        with self._lock:
            return set(self._active)

    def _purge(self, now: float) -> None:
        expired = [cid for cid, c in self._active.items() if now > c.expires_at]
        for cid in expired:
            del self._active[cid]
        stale = [
            cid
            for cid, t in self._consumed.items()
            if now - t > self.CONSUMED_MEMORY_S
        ]
        for cid in stale:
            del self._consumed[cid]


class AuthService:
    """Issues challenges, verifies submissions, manages bearer sessions."""

    def __init__(
        self,
        store: CredentialStore | None,
        challenge_ttl_s: float = 120.0,
        session_ttl_s: float = 3600.0,
        rng: random.Random | None = None,
        clock: Callable[[], float] = time.time,
    ) -> None:
        self._store = store
        self._ttl = challenge_ttl_s
        self._session_ttl = session_ttl_s
        self._rng = rng if rng is not None else random.SystemRandom()
        self._clock = clock
        self._challenges = ChallengeRegistry()
        self._sessions: dict[str, float] = {}
        self._session_lock = threading.Lock()

    @property
    def store(self) -> CredentialStore | None:
        return self._store

    @property
    def charset(self) -> CharacterSet:
        if self._store is None:
            raise GridAuthError("service-unavailable", "credential store not loaded")
        return self._store.charset

    def issue_challenge(self) -> Challenge:
        if self._store is None:
            raise GridAuthError("service-unavailable", "credential store not loaded")
        now = self._clock()
        grid = generate(self.charset, self._rng)
        challenge = Challenge(
            id=secrets.token_urlsafe(32),
            grid=grid,
            issued_at=now,
            expires_at=now + self._ttl,
        )
        self._challenges.register(challenge, now)
        return challenge

    def login(
        self, challenge_id: str, digits_text: str, username: str | None = None
    ) -> LoginOutcome:
        """Consume the challenge, verify the digits, mint a session on success.

        The named challenge is invalidated no matter how the attempt ends;
        every failure carries a freshly issued challenge for the next try.
        """
        if self._store is None:
            raise GridAuthError("service-unavailable", "credential store not loaded")
        claimed = self._challenges.consume(challenge_id, self._clock())
        if isinstance(claimed, str):
            return self._failure(claimed)

        try:
            digits = DigitSequence.from_text(digits_text)
        except GridAuthError:
            return self._failure(MALFORMED_DIGITS)

        store = self._store  # snapshot; verification is read-only
        if username is not None:
            result = verify_username_scoped(digits, claimed.grid, store, username)
        else:
            # password-only comparison against the whole store
            result = verify_inverted(digits, claimed.grid, store)
        if not result.accepted:
            return self._failure(AUTHENTICATION_FAILED)

        token = secrets.token_urlsafe(32)
        with self._session_lock:
            self._sessions[token] = self._clock() + self._session_ttl
        return LoginOutcome(ok=True, session=token)

    def logout(self, session: str) -> bool:
        with self._session_lock:
            return self._sessions.pop(session, None) is not None

    def session_valid(self, session: str) -> bool:
        with self._session_lock:
            expiry = self._sessions.get(session)
            if expiry is None:
                return False
            if self._clock() > expiry:
                del self._sessions[session]
                return False
            return True

    def health(self) -> dict:
        return {
            "status": "ok" if self._store is not None else "store-not-loaded",
            "store_size": 0 if self._store is None else len(self._store),
        }

    def active_challenge_ids(self) -> set[str]:
        return self._challenges.active_ids()

    def _failure(self, reason: str) -> LoginOutcome:
        return LoginOutcome(ok=False, reason=reason, next_challenge=self.issue_challenge())
