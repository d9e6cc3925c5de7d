"""Observation-attack simulator: what does a shoulder surfer actually learn?

The scheme's sales pitch is that typed digits are safe to observe. That holds
for a single observation — every digit is consistent with exactly ``d``
characters — but an observer who records (grid, digits) pairs across several
logins can intersect the per-position candidate sets, and the true password
always survives. This module measures how fast the survivor sets collapse.

Closed form, derived from the even-frequency constraint: a non-true character
shares the true character's digit with probability (d-1)/(|X|-1) per
independent grid, so after k observations the expected per-position survivor
count is ``1 + (|X|-1) * ((d-1)/(|X|-1))^k``. The Monte Carlo paths here are
the independent check on that formula.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import prod

import numpy as np

from .charset import CharacterSet, default_charset
from .codegrid import CodeGrid, DigitSequence, generate
from .decoder import candidates
from .errors import ParameterError, TranscriptError


@dataclass
class AttackTranscript:
    """Observed (grid, digits) pairs plus per-position survivor sets."""

    observations: list[tuple[CodeGrid, DigitSequence]] = field(default_factory=list)
    survivors: list[set[str]] = field(default_factory=list)

    def observe(self, grid: CodeGrid, digits: DigitSequence) -> "AttackTranscript":
        """Fold one observed login into the per-position intersections."""
        if self.observations and len(digits) != len(self.survivors):
            raise TranscriptError(
                "length-mismatch",
                f"observation has {len(digits)} digits, transcript tracks "
                f"{len(self.survivors)} positions",
            )
        position_sets = [set(candidates(grid, c).chars) for c in digits.digits]
        if not self.observations:
            self.survivors = position_sets
        else:
            for held, seen in zip(self.survivors, position_sets):
                held &= seen
        self.observations.append((grid, digits))
        return self

    def survivor_counts(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.survivors)

    def residual_space(self) -> int:
        """Size of the candidate password space still consistent."""
        return prod(self.survivor_counts())


def expected_survivors(charset_size: int, d: int, k: int) -> float:
    """Expected per-position survivor count after k independent grids."""
    if d * 10 != charset_size or d < 1:
        raise ParameterError(
            "invalid-parameters", f"need d*10 == charset_size, got d={d}, |X|={charset_size}"
        )
    if k < 1:
        raise ParameterError("invalid-parameters", "k must be >= 1")
    return 1.0 + (charset_size - 1) * ((d - 1) / (charset_size - 1)) ** k


@dataclass(frozen=True)
class AttackSummary:
    sessions: int
    position_survivors: tuple[int, ...]
    residual_space: int
    # mean per-position survivor count after 1..k observations
    mean_survivors_by_k: tuple[float, ...]


def simulate(
    password: str,
    sessions: int,
    rng: random.Random,
    charset: CharacterSet | None = None,
) -> tuple[AttackTranscript, AttackSummary]:
    """Observe ``sessions`` genuine logins of ``password`` under fresh grids."""
    charset = charset or default_charset()
    if sessions < 1:
        raise ParameterError("invalid-parameters", "sessions must be >= 1")
    transcript = AttackTranscript()
    means = []
    for _ in range(sessions):
        grid = generate(charset, rng)
        transcript.observe(grid, grid.encode(password))
        counts = transcript.survivor_counts()
        means.append(sum(counts) / len(counts))
    summary = AttackSummary(
        sessions=sessions,
        position_survivors=transcript.survivor_counts(),
        residual_space=transcript.residual_space(),
        mean_survivors_by_k=tuple(means),
    )
    return transcript, summary


def mean_survivors_monte_carlo(
    sessions: int,
    trials: int,
    charset_size: int = 80,
    seed: int | None = None,
) -> tuple[list[float], list[float]]:
    """Vectorized Monte Carlo: (means, standard errors) for k = 1..sessions.

    Each trial tracks one password position (one uniformly chosen true
    character) through ``sessions`` independent grids. Grids are unbiased
    multiset shuffles, same distribution as codegrid.generate, realized with
    numpy so 1e5-trial runs stay in the seconds range.
    """
    if charset_size % 10 != 0 or charset_size < 10:
        raise ParameterError("invalid-parameters", "charset_size must be a multiple of 10")
    if sessions < 1 or trials < 1:
        raise ParameterError("invalid-parameters", "sessions and trials must be >= 1")
    d = charset_size // 10
    rng = np.random.default_rng(seed)
    base = np.repeat(np.arange(10, dtype=np.int8), d)
    true_idx = rng.integers(0, charset_size, size=trials)
    rows = np.arange(trials)
    alive = np.ones((trials, charset_size), dtype=bool)
    means: list[float] = []
    stderrs: list[float] = []
    for _ in range(sessions):
        grids = rng.permuted(np.tile(base, (trials, 1)), axis=1)
        typed = grids[rows, true_idx]
        alive &= grids == typed[:, None]
        counts = alive.sum(axis=1)
        means.append(float(counts.mean()))
        stderrs.append(float(counts.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0)
    return means, stderrs


@dataclass(frozen=True)
class WeakObserverReport:
    """What an observer who sees typed digits but never the grid learns."""

    sessions: int
    length: int
    per_position_survivors: tuple[int, ...]  # stays |X| at every position
    residual_space: int
    repeated_position_groups: tuple[tuple[int, ...], ...]


def simulate_weak_observer(
    password: str,
    sessions: int,
    rng: random.Random,
    charset: CharacterSet | None = None,
) -> WeakObserverReport:
    """Digits-only observer: per-position uncertainty never shrinks below |X|.

    Every grid assigns every digit to d characters, so any typed digit is
    consistent with any character; the observer learns the password length,
    and — the one honest caveat — positions holding the same character repeat
    the same digit within a session, so repeated-character structure leaks
    over time. Individual characters are never identified.
    """
    charset = charset or default_charset()
    if sessions < 1:
        raise ParameterError("invalid-parameters", "sessions must be >= 1")
    seqs = [generate(charset, rng).encode(password) for _ in range(sessions)]
    n = len(password)
    # positions whose digits agree in every observed session
    groups: dict[tuple[int, ...], list[int]] = {}
    for i in range(n):
        pattern = tuple(seq.digits[i] for seq in seqs)
        groups.setdefault(pattern, []).append(i)
    multi = tuple(tuple(g) for g in groups.values() if len(g) > 1)
    return WeakObserverReport(
        sessions=sessions,
        length=n,
        per_position_survivors=tuple(len(charset) for _ in range(n)),
        residual_space=len(charset) ** n,
        repeated_position_groups=multi,
    )
