"""The password alphabet.

A charset is an ordered list of distinct printable characters whose length is
divisible by 10, so the ten digit labels can be spread over it evenly
(``d = len(chars) / 10`` characters per digit). The ordering is load-bearing:
candidate sets, the verifiers' tie-break, and the store's sort order are all
defined in terms of charset index, not ASCII.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import CharsetError

CODE_ALPHABET = tuple(range(10))

UPPERCASE = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
LOWERCASE = "abcdefghijklmnopqrstuvwxyz"
DIGITS = "0123456789"
# 18 specials so the default set has 80 characters (d = 8). Kept in this
# fixed order; alternative special sets are fine as long as they validate.
SPECIALS = ".+*/(){}-_%=@!^$,#"

DEFAULT_CHARSET_ID = "default80"


@dataclass(frozen=True)
class CharacterSet:
    """Ordered alphabet of permissible password characters."""

    chars: str
    id: str

    @cached_property
    def _index(self) -> dict[str, int]:
        return {ch: i for i, ch in enumerate(self.chars)}

    @property
    def d(self) -> int:
        """Characters per digit label."""
        return len(self.chars) // 10

    def __len__(self) -> int:
        return len(self.chars)

    def __contains__(self, ch: str) -> bool:
        return ch in self._index

    def index_of(self, ch: str) -> int:
        return self._index[ch]

    def char_at(self, i: int) -> str:
        return self.chars[i]

    def password_key(self, password: str) -> tuple[int, ...]:
        """Sort key: charset indices, the canonical lexicographic order."""
        return tuple(self._index[ch] for ch in password)


def default_charset() -> CharacterSet:
    """The canonical 80-character set: A-Z, a-z, 0-9, then 18 specials."""
    return CharacterSet(chars=UPPERCASE + LOWERCASE + DIGITS + SPECIALS, id=DEFAULT_CHARSET_ID)


def violation(charset: CharacterSet) -> str | None:
    """Return the code of the first violated invariant, or None if valid.

    Checked in a fixed order so reports are deterministic:
    forbidden-character, duplicate-character, length-not-divisible-by-10.
    """
    for ch in charset.chars:
        # printable ASCII excluding space: 0x21..0x7e
        if not (0x21 <= ord(ch) <= 0x7E):
            return "forbidden-character"
    seen = set()
    for ch in charset.chars:
        if ch in seen:
            return "duplicate-character"
        seen.add(ch)
    if len(charset.chars) == 0 or len(charset.chars) % 10 != 0:
        return "length-not-divisible-by-10"
    return None


def validate(charset: CharacterSet) -> None:
    """Raise CharsetError naming the first violated rule, if any."""
    code = violation(charset)
    if code is not None:
        raise CharsetError(code, f"charset {charset.id!r}: {code}")
