import random

import pytest

from gridauth import CharacterSet, default_charset, demo_grid


@pytest.fixture
def charset():
    return default_charset()


@pytest.fixture
def demo():
    return demo_grid()


@pytest.fixture
def rng():
    return random.Random(0xC0DE)


def small_charset(size: int) -> CharacterSet:
    """First ``size`` characters of the default set (size 10 or 20)."""
    return CharacterSet(chars=default_charset().chars[:size], id=f"sub{size}")
