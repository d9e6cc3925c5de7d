"""Shared exception types.

Every error carries a stable kebab-case ``code`` so the CLI and HTTP layers
can map failures to exit codes / response reasons without string-matching
human-readable messages.
"""

from __future__ import annotations


class GridAuthError(Exception):
    """Base class; ``code`` is a stable machine-readable identifier."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class CharsetError(GridAuthError):
    """Alphabet violates an invariant (duplicates, bad length, bad chars)."""


class CharacterNotInCharset(GridAuthError):
    def __init__(self, ch: str):
        super().__init__("character-not-in-charset", f"character {ch!r} is not in the charset")
        self.ch = ch


class PasswordError(GridAuthError):
    """Password rejected at validation (empty, over-length, bad character)."""


class StoreError(GridAuthError):
    """Credential store violation (duplicates, parse failures, bad files)."""


class BudgetExceeded(GridAuthError):
    """Raised by the enumerating verifier when d^n would exceed its budget.

    Deliberately distinct from a rejection: the caller must switch to the
    O(p*n) verifier instead of concluding anything about the credentials.
    """

    def __init__(self, required: int, budget: int):
        super().__init__(
            "budget-exceeded",
            f"enumeration needs {required} combinations, budget is {budget}",
        )
        self.required = required
        self.budget = budget


class TranscriptError(GridAuthError):
    """Attack transcript misuse (observation length mismatch)."""


class ParameterError(GridAuthError):
    """Invalid parameters to an analysis routine."""
