"""Candidate-set decoding: which characters could each typed digit mean.

Under a grid, a typed digit narrows one password position down to the set of
characters labelled with that digit (always exactly ``d`` of them). Candidate
ordering is charset order — that canonical order is what makes the
enumerating verifier's first match deterministic and equal to the inverted
verifier's tie-break.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codegrid import CodeGrid, DigitSequence
from .errors import GridAuthError


@dataclass(frozen=True)
class CandidateSet:
    """Characters a grid labels with ``digit``, in charset order."""

    digit: int
    chars: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.chars)

    def __contains__(self, ch: str) -> bool:
        return ch in self.chars

    def as_set(self) -> frozenset[str]:
        return frozenset(self.chars)


def candidates(grid: CodeGrid, digit: int) -> CandidateSet:
    """The preimage of ``digit`` under the grid, ordered by charset index."""
    if not 0 <= digit <= 9:
        raise GridAuthError("malformed-digits", f"digit {digit} out of range 0..9")
    chars = tuple(
        ch for ch, code in zip(grid.charset.chars, grid.codes) if code == digit
    )
    return CandidateSet(digit=digit, chars=chars)


def decode_sequence(grid: CodeGrid, digits: DigitSequence) -> list[CandidateSet]:
    """Per-position candidate sets for a typed digit sequence."""
    # one pass per distinct digit, not per position
    by_digit = {d: candidates(grid, d) for d in set(digits.digits)}
    return [by_digit[d] for d in digits.digits]
