"""Digit-sequence verification against the credential store, two ways.

``verify_naive`` enumerates every character combination consistent with the
typed digits (an n-position odometer over the per-position candidate sets,
position 0 outermost, candidates in charset order) and binary-searches the
store for each assembled string. That is d^n combinations — 8^11 ≈ 8.6e9 for
an 11-character password over the default alphabet — so it exists as an
oracle and requires an explicit combination budget.

``verify_inverted`` flips the loop: encode each stored password under the
grid and compare digit strings, O(p*n). Both return the same outcome and the
same matched password on every input where the naive path completes:
odometer order over charset-ordered candidate lists IS lexicographic order by
charset index, and the inverted path scans records already sorted in that
order, so "first match" coincides on both sides.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

from .codegrid import CodeGrid, DigitSequence
from .decoder import decode_sequence
from .errors import BudgetExceeded, GridAuthError
from .store import CredentialStore

ACCEPTED = "accepted"
REJECTED = "rejected"

# Beyond this the enumerating path refuses to run; callers switch to
# verify_inverted. 1e6 keeps worst-case latency in the tens of milliseconds.
DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class AuthResult:
    outcome: str  # accepted | rejected
    matched_password: str | None
    combinations_examined: int

    @property
    def accepted(self) -> bool:
        return self.outcome == ACCEPTED


def _check_same_charset(grid: CodeGrid, store: CredentialStore) -> None:
    if grid.charset.chars != store.charset.chars:
        raise GridAuthError(
            "charset-mismatch", "grid and store use different alphabets"
        )


def combination_count(grid: CodeGrid, digits: DigitSequence) -> int:
    """Number of character strings consistent with the digits: d^n, exact."""
    return prod(len(c) for c in decode_sequence(grid, digits))


def verify_naive(
    digits: DigitSequence,
    grid: CodeGrid,
    store: CredentialStore,
    budget: int = DEFAULT_BUDGET,
) -> AuthResult:
    """Enumerate all consistent combinations, searching the store for each.

    Returns the FIRST match in odometer order. Raises BudgetExceeded up front
    when the full enumeration could not fit the budget — distinct from a
    rejection, since nothing was verified.
    """
    if budget < 1:
        raise GridAuthError("invalid-parameters", "budget must be >= 1")
    _check_same_charset(grid, store)
    candidate_lists = [c.chars for c in decode_sequence(grid, digits)]
    total = prod(len(chars) for chars in candidate_lists)
    if total > budget:
        raise BudgetExceeded(required=total, budget=budget)
    examined = 0
    for combo in itertools.product(*candidate_lists):
        examined += 1
        if store.lookup("".join(combo)):
            return AuthResult(ACCEPTED, "".join(combo), examined)
    return AuthResult(REJECTED, None, examined)


def verify_inverted(
    digits: DigitSequence, grid: CodeGrid, store: CredentialStore
) -> AuthResult:
    """Encode each stored password and compare digit strings, O(p*n).

    Records are scanned in the store's charset-lexicographic order, so when
    several stored passwords collide on the same digit string the smallest
    one wins — the same winner the enumerating path finds first.
    """
    _check_same_charset(grid, store)
    n = len(digits)
    target = digits.digits
    examined = 0
    for record in store.records:
        if len(record.password) != n:
            continue
        examined += 1
        if grid.encode(record.password).digits == target:
            return AuthResult(ACCEPTED, record.password, examined)
    return AuthResult(REJECTED, None, examined)


def verify_username_scoped(
    digits: DigitSequence, grid: CodeGrid, store: CredentialStore, username: str
) -> AuthResult:
    """Compare against a single user's password only.

    Extension over the password-only scheme: with colliding passwords a
    password-only login can authenticate the wrong account, so multi-user
    deployments scope verification to the claimed username.
    """
    _check_same_charset(grid, store)
    record = store.find_username(username)
    if record is None:
        return AuthResult(REJECTED, None, 0)
    if len(record.password) == len(digits) and grid.encode(record.password).digits == digits.digits:
        return AuthResult(ACCEPTED, record.password, 1)
    return AuthResult(REJECTED, None, 1)
