import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridauth import DigitSequence, candidates, decode_sequence, default_charset, generate
from gridauth.errors import GridAuthError
from conftest import small_charset

# Per-position candidate sets for the demo grid under the worked-example
# input 27318081174, keyed by digit.
DEMO_CANDIDATES = {
    2: set("LYht{}-^"),
    7: set("BCE68av/"),
    3: set("V479cgjw"),
    1: set("TW01bdop"),
    8: set("AF23nsy_"),
    0: set("HMNeuz(#"),
    4: set("IPZ+)%=!"),
}


def test_demo_candidates_digit_2(demo):
    assert set(candidates(demo, 2).chars) == DEMO_CANDIDATES[2]


def test_demo_candidates_digit_7(demo):
    assert set(candidates(demo, 7).chars) == DEMO_CANDIDATES[7]


def test_candidates_ordered_by_charset_index(demo):
    chars = candidates(demo, 2).chars
    assert list(chars) == sorted(chars, key=demo.charset.index_of)


def test_candidate_set_size_is_d(demo):
    for digit in range(10):
        assert len(candidates(demo, digit)) == demo.charset.d


def test_candidates_rejects_bad_digit(demo):
    with pytest.raises(GridAuthError):
        candidates(demo, 10)


def test_d1_candidates_are_singletons(rng):
    grid = generate(small_charset(10), rng)
    for digit in range(10):
        assert len(candidates(grid, digit)) == 1


def test_decode_worked_example_reproduces_all_columns(demo):
    seq = DigitSequence.from_text("27318081174")
    sets = decode_sequence(demo, seq)
    assert len(sets) == 11
    for digit, cs in zip(seq.digits, sets):
        assert cs.digit == digit
        assert cs.as_set() == DEMO_CANDIDATES[digit]


def test_decode_length_one(demo):
    assert len(decode_sequence(demo, DigitSequence.from_text("5"))) == 1


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=30)
def test_partition_property(seed):
    # the ten candidate sets are pairwise disjoint and cover the alphabet
    grid = generate(default_charset(), random.Random(seed))
    union = set()
    total = 0
    for digit in range(10):
        chars = set(candidates(grid, digit).chars)
        assert not (union & chars)
        union |= chars
        total += len(chars)
    assert union == set(default_charset().chars)
    assert total == 80


@given(st.integers(min_value=0, max_value=2**32), st.sampled_from(default_charset().chars))
@settings(max_examples=50)
def test_membership_property(seed, ch):
    grid = generate(default_charset(), random.Random(seed))
    assert ch in candidates(grid, grid.code_of(ch))


def test_every_matching_password_is_in_candidate_product(rng):
    # brute-force cross-check on a small charset: any password encoding to
    # the digits must appear in the cartesian product of the candidate sets
    import itertools

    cs = small_charset(10)
    grid = generate(cs, rng)
    digits = DigitSequence((3, 1, 4))
    product = {
        "".join(combo)
        for combo in itertools.product(*(c.chars for c in decode_sequence(grid, digits)))
    }
    for pw in ("".join(t) for t in itertools.product(cs.chars, repeat=3)):
        if grid.encode(pw).digits == digits.digits:
            assert pw in product
