import random
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from fricke.words import NIELSEN_GENERATORS, reduce_free  # noqa: E402


def letters_strategy(n, max_len=8):
    letter = st.integers(1, n).flatmap(lambda i: st.sampled_from([i, -i]))
    return st.lists(letter, max_size=max_len)


def word_strategy(n, max_len=8):
    return letters_strategy(n, max_len).map(lambda ls: reduce_free(ls, n))


nielsen_strategy = st.lists(st.sampled_from(NIELSEN_GENERATORS), min_size=1, max_size=4).map(tuple)


def random_word(rng: random.Random, n: int, max_len: int = 8):
    k = rng.randint(0, max_len)
    return reduce_free([rng.choice([1, -1]) * rng.randint(1, n) for _ in range(k)], n)


def random_nielsen(rng: random.Random, max_len: int = 6):
    return tuple(rng.choice(NIELSEN_GENERATORS) for _ in range(rng.randint(1, max_len)))


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
