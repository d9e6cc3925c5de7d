"""Code grids: one random digit label per alphabet character.

A grid assigns every character of the charset a digit 0-9 such that each
digit labels exactly ``d`` characters. Generation shuffles the explicit
multiset {0 x d, ..., 9 x d}, which enforces the even-frequency constraint by
construction. The random source is a parameter: tests pass a seeded
``random.Random``, the service passes ``random.SystemRandom`` (grids are
security-bearing).
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass

from .charset import CharacterSet, validate
from .errors import CharacterNotInCharset, GridAuthError, PasswordError

MAX_PASSWORD_LENGTH = 255


@dataclass(frozen=True)
class DigitSequence:
    """What the user actually types: the digits labelling their password."""

    digits: tuple[int, ...]

    def __post_init__(self):
        if len(self.digits) == 0:
            raise GridAuthError("empty-sequence", "digit sequence must be non-empty")
        if len(self.digits) > MAX_PASSWORD_LENGTH:
            raise GridAuthError(
                "over-length", f"digit sequence longer than {MAX_PASSWORD_LENGTH}"
            )
        if any(not (0 <= c <= 9) for c in self.digits):
            raise GridAuthError("malformed-digits", "digits must be in 0..9")

    @classmethod
    def from_text(cls, text: str) -> "DigitSequence":
        if not text:
            raise GridAuthError("empty-sequence", "digit sequence must be non-empty")
        if any(ch not in "0123456789" for ch in text):
            raise GridAuthError("malformed-digits", f"non-digit character in {text!r}")
        return cls(tuple(int(ch) for ch in text))

    def __str__(self) -> str:
        return "".join(str(c) for c in self.digits)

    def __len__(self) -> int:
        return len(self.digits)


@dataclass(frozen=True)
class CodeGrid:
    """One complete character -> digit assignment (a single challenge)."""

    charset: CharacterSet
    codes: tuple[int, ...]

    def __post_init__(self):
        if len(self.codes) != len(self.charset):
            raise GridAuthError(
                "grid-size-mismatch",
                f"{len(self.codes)} codes for {len(self.charset)} characters",
            )
        freq = Counter(self.codes)
        d = self.charset.d
        if any(freq.get(y, 0) != d for y in range(10)):
            raise GridAuthError(
                "grid-frequency-violation",
                f"each digit must label exactly {d} characters, got {dict(freq)}",
            )

    def code_of(self, ch: str) -> int:
        """The digit labelling ``ch``."""
        try:
            return self.codes[self.charset.index_of(ch)]
        except KeyError:
            raise CharacterNotInCharset(ch) from None

    def encode(self, password: str) -> DigitSequence:
        """Digit sequence a user must type for ``password`` under this grid."""
        if len(password) == 0:
            raise PasswordError("empty-password", "password must be non-empty")
        if len(password) > MAX_PASSWORD_LENGTH:
            raise PasswordError(
                "over-length", f"password longer than {MAX_PASSWORD_LENGTH} characters"
            )
        return DigitSequence(tuple(self.code_of(ch) for ch in password))

    def items(self) -> list[tuple[str, int]]:
        """(character, digit) pairs in charset order — the wire shape."""
        return list(zip(self.charset.chars, self.codes))


def generate(charset: CharacterSet, rng: random.Random) -> CodeGrid:
    """Fresh grid: an unbiased shuffle of the digit multiset over the charset."""
    validate(charset)
    codes = [y for y in range(10) for _ in range(charset.d)]
    rng.shuffle(codes)
    return CodeGrid(charset=charset, codes=tuple(codes))
