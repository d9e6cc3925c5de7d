"""Coded-grid password authentication.

Every login shows the password alphabet with a fresh random digit label on
each character (each digit labelling exactly |X|/10 of them); the user types
the digits for their password's characters instead of the characters
themselves. This package implements the whole scheme: alphabet and grid
generation, candidate-set decoding, the enumerating and inverted verifiers,
the sorted credential store, a challenge-issuing HTTP service, and a
simulator measuring how fast repeated observation defeats the scheme.
"""

from .charset import CharacterSet, default_charset, validate, violation
from .codegrid import CodeGrid, DigitSequence, generate
from .decoder import CandidateSet, candidates, decode_sequence
from .errors import BudgetExceeded, GridAuthError
from .fixtures import DEMO_DIGITS, DEMO_PASSWORD, demo_grid
from .store import (
    MODE_PASSWORD_ONLY,
    MODE_USERNAME_SCOPED,
    CredentialRecord,
    CredentialStore,
)
from .verifier import (
    AuthResult,
    combination_count,
    verify_inverted,
    verify_naive,
    verify_username_scoped,
)
from .attack import (
    AttackSummary,
    AttackTranscript,
    expected_survivors,
    mean_survivors_monte_carlo,
    simulate,
    simulate_weak_observer,
)
from .service import AuthService, Challenge, LoginOutcome
from .config import ServiceConfig, load_config

__all__ = [
    "AttackSummary",
    "AttackTranscript",
    "AuthResult",
    "AuthService",
    "BudgetExceeded",
    "CandidateSet",
    "Challenge",
    "CharacterSet",
    "CodeGrid",
    "CredentialRecord",
    "CredentialStore",
    "DEMO_DIGITS",
    "DEMO_PASSWORD",
    "DigitSequence",
    "GridAuthError",
    "LoginOutcome",
    "MODE_PASSWORD_ONLY",
    "MODE_USERNAME_SCOPED",
    "ServiceConfig",
    "candidates",
    "combination_count",
    "decode_sequence",
    "default_charset",
    "demo_grid",
    "expected_survivors",
    "generate",
    "load_config",
    "mean_survivors_monte_carlo",
    "simulate",
    "simulate_weak_observer",
    "validate",
    "verify_inverted",
    "verify_naive",
    "verify_username_scoped",
    "violation",
]

__version__ = "0.1.0"
