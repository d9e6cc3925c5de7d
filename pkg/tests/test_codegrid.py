import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridauth import CodeGrid, DigitSequence, default_charset, generate
from gridauth.errors import CharacterNotInCharset, GridAuthError, PasswordError
from conftest import small_charset

DEMO_PASSWORD = "Lagos(2006)"


def test_generated_grid_has_exact_frequency(charset, rng):
    grid = generate(charset, rng)
    counts = Counter(grid.codes)
    assert all(counts[y] == 8 for y in range(10))


def test_degenerate_d1_each_digit_once(rng):
    grid = generate(small_charset(10), rng)
    assert sorted(grid.codes) == list(range(10))


def test_distinct_seeds_give_distinct_grids(charset):
    # collision probability of two full grids is astronomically small
    pairs = [(generate(charset, random.Random(2 * i)),
              generate(charset, random.Random(2 * i + 1))) for i in range(200)]
    assert all(a.codes != b.codes for a, b in pairs)


def test_frequency_invariant_rejected_at_construction(charset):
    codes = [0] * 80  # all zeros: frequency wildly off
    with pytest.raises(GridAuthError) as exc:
        CodeGrid(charset=charset, codes=tuple(codes))
    assert exc.value.code == "grid-frequency-violation"


def test_size_mismatch_rejected(charset):
    with pytest.raises(GridAuthError) as exc:
        CodeGrid(charset=charset, codes=(0,) * 79)
    assert exc.value.code == "grid-size-mismatch"


def test_demo_grid_code_lookups(demo):
    assert demo.code_of("L") == 2
    assert demo.code_of("a") == 7
    assert demo.code_of("A") == 8


def test_code_of_unknown_character(demo):
    with pytest.raises(CharacterNotInCharset) as exc:
        demo.code_of("§")
    assert exc.value.code == "character-not-in-charset"


def test_encode_worked_example(demo):
    assert str(demo.encode(DEMO_PASSWORD)) == "27318081174"


def test_encode_single_character(demo):
    assert str(demo.encode("A")) == "8"


def test_encode_rejects_empty_and_overlong(demo):
    with pytest.raises(PasswordError) as exc:
        demo.encode("")
    assert exc.value.code == "empty-password"
    with pytest.raises(PasswordError) as exc:
        demo.encode("A" * 256)
    assert exc.value.code == "over-length"


def test_encode_length_255_allowed(demo):
    assert len(demo.encode("A" * 255)) == 255


valid_password = st.text(alphabet=default_charset().chars, min_size=1, max_size=20)


@given(valid_password, valid_password)
@settings(max_examples=50)
def test_encode_is_positionwise_concatenative(p1, p2):
    grid = generate(default_charset(), random.Random(42))
    joined = grid.encode(p1 + p2)
    assert joined.digits == grid.encode(p1).digits + grid.encode(p2).digits
    assert len(joined) == len(p1) + len(p2)


def test_digit_sequence_parsing():
    seq = DigitSequence.from_text("27318081174")
    assert seq.digits == (2, 7, 3, 1, 8, 0, 8, 1, 1, 7, 4)
    assert str(seq) == "27318081174"


@pytest.mark.parametrize("text,code", [
    ("", "empty-sequence"),
    ("2a318", "malformed-digits"),
    ("1" * 256, "over-length"),
])
def test_digit_sequence_rejects(text, code):
    with pytest.raises(GridAuthError) as exc:
        DigitSequence.from_text(text)
    assert exc.value.code == code


def test_empirical_label_distribution_is_roughly_uniform(charset):
    # full chi-square gate lives in the acceptance suite; quick sanity here
    rng = random.Random(99)
    hits = Counter(generate(charset, rng).code_of("Q") for _ in range(2000))
    assert set(hits) == set(range(10))
    assert all(120 <= hits[y] <= 280 for y in range(10))
