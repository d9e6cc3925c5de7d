"""Pinned demonstration grid.

One hand-transcribed grid used throughout docs, tests, and the CLI demo. It
pairs with the worked example password ``Lagos(2006)``, which this grid
encodes to ``27318081174``. Loaded as an explicit table, never regenerated.

The letter and digit labels are fixed; a handful of special-character labels
(``.``, ``*``, ``$``, ``@``, ``,``, ``#``) are free choices pinned here so
that every digit labels exactly eight characters.
"""

from __future__ import annotations

from .codegrid import CodeGrid
from .charset import default_charset

DEMO_PASSWORD = "Lagos(2006)"
DEMO_DIGITS = "27318081174"

_DEMO_CODES = {
    "A": 8, "B": 7, "C": 7, "D": 6, "E": 7, "F": 8, "G": 9, "H": 0, "I": 4,
    "J": 9, "K": 9, "L": 2, "M": 0, "N": 0, "O": 9, "P": 4, "Q": 9, "R": 5,
    "S": 5, "T": 1, "U": 9, "V": 3, "W": 1, "X": 9, "Y": 2, "Z": 4,
    "a": 7, "b": 1, "c": 3, "d": 1, "e": 0, "f": 9, "g": 3, "h": 2, "i": 6,
    "j": 3, "k": 5, "l": 6, "m": 6, "n": 8, "o": 1, "p": 1, "q": 6, "r": 6,
    "s": 8, "t": 2, "u": 0, "v": 7, "w": 3, "x": 5, "y": 8, "z": 0,
    "0": 1, "1": 1, "2": 8, "3": 8, "4": 3, "5": 5, "6": 7, "7": 3, "8": 7,
    "9": 3,
    ".": 5, "+": 4, "*": 5, "/": 7, "(": 0, ")": 4, "{": 2, "}": 2, "-": 2,
    "_": 8, "%": 4, "=": 4, "@": 6, "!": 4, "^": 2, "$": 5, ",": 6, "#": 0,
}

FIXTURE_IDS = ("demo",)


def demo_grid() -> CodeGrid:
    """The pinned demo grid over the default 80-character set."""
    charset = default_charset()
    return CodeGrid(
        charset=charset, codes=tuple(_DEMO_CODES[ch] for ch in charset.chars)
    )


def by_name(name: str) -> CodeGrid:
    if name != "demo":
        raise KeyError(f"unknown fixture {name!r}; available: {FIXTURE_IDS}")
    return demo_grid()
