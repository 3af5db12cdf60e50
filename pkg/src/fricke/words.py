"""Free-group words: reduction, canonical representatives, basic words and
the Nielsen substitutions.

Letters are nonzero integers in Tietze form: ``+i`` is the generator A_i and
``-i`` its inverse.  Generators are displayed as ``A, B, C, ...`` and the
trace variable of a basic word as the lowercase concatenation (``ab``).
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

MAX_RANK = 10
NIELSEN_GENERATORS = ("T", "T'", "P", "R", "I")


class RankError(ValueError):
    """A generator index, variable or operand does not fit the declared rank."""


class WordParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def check_rank(n: int, low: int = 1) -> None:
    if not isinstance(n, int) or not low <= n <= MAX_RANK:
        raise RankError(f"rank must be an integer in [{low}, {MAX_RANK}], got {n!r}")


def letter_key(letter: int) -> tuple[int, int]:
    # generator index first, then +1 before -1
    return (abs(letter), 0 if letter > 0 else 1)


def word_key(letters: Sequence[int]) -> tuple:
    return (len(letters), tuple(letter_key(x) for x in letters))


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _cyclic_reduce(letters: tuple[int, ...]) -> tuple[int, ...]:
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    return letters[i:j]


@dataclass(frozen=True)
class Word:
    """A freely reduced word of F_n."""

    letters: tuple[int, ...]
    n: int

    def __post_init__(self):
        for x in self.letters:
            if x == 0 or abs(x) > self.n:
                raise RankError(f"letter {x} out of range for rank {self.n}")
        if any(a == -b for a, b in zip(self.letters, self.letters[1:])):
            raise ValueError("word is not freely reduced; use reduce_free")

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        _same_rank(self, other)
        return reduce_free(self.letters + other.letters, self.n)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)), self.n)

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self):
        return format_word(self.letters)


def _same_rank(*words: Word) -> None:
    ranks = {w.n for w in words}
    if len(ranks) > 1:
        raise RankError(f"rank mismatch: {sorted(ranks)}")


def reduce_free(letters: Iterable[int], n: int) -> Word:
    """Freely reduce a raw letter sequence."""
    letters = tuple(letters)
    for x in letters:
        if x == 0 or abs(x) > n:
            raise RankError(f"letter {x} out of range for rank {n}")
    return Word(_free_reduce(letters), n)


def identity(n: int) -> Word:
    return Word((), n)


def generator(i: int, n: int) -> Word:
    return reduce_free((i,), n)


def rotations(letters: Sequence[int]) -> list[tuple[int, ...]]:
    letters = tuple(letters)
    return [letters[i:] + letters[:i] for i in range(len(letters))] or [()]


def canonical_letters(letters: Sequence[int]) -> tuple[int, ...]:
    core = _cyclic_reduce(_free_reduce(letters))
    if not core:
        return ()
    inv = tuple(-x for x in reversed(core))
    return min(rotations(core) + rotations(inv), key=word_key)


def canonical_rep(word: Word) -> Word:
    """Least cyclic rotation of the cyclic reduction of ``word`` or of its
    inverse.  Words with the same representative have the same trace under
    every representation."""
    return Word(canonical_letters(word.letters), word.n)


# -- basic words -----------------------------------------------------------


@lru_cache(maxsize=None)
def basic_subsets(n: int) -> tuple[tuple[int, ...], ...]:
    """Generator-index tuples of the basic words in Horowitz order."""
    check_rank(n)
    subsets = [c for k in range(1, n + 1) for c in combinations(range(1, n + 1), k)]
    return tuple(sorted(subsets, key=lambda c: (len(c), c)))


@dataclass(frozen=True)
class BasicWord:
    subset: tuple[int, ...]
    n: int

    @property
    def ordinal(self) -> int:
        return basic_index(self.n)[self.subset] + 1

    @property
    def name(self) -> str:
        return "".join(string.ascii_lowercase[i - 1] for i in self.subset)

    def word(self) -> Word:
        return Word(self.subset, self.n)

    def __len__(self):
        return len(self.subset)

    def __str__(self):
        return self.name.upper()


def basic_words(n: int) -> list[BasicWord]:
    """The 2^n - 1 basic words of F_n; list position + 1 is the ordinal."""
    check_rank(n, low=2)
    return [BasicWord(s, n) for s in basic_subsets(n)]


@lru_cache(maxsize=None)
def basic_index(n: int) -> dict[tuple[int, ...], int]:
    return {s: i for i, s in enumerate(basic_subsets(n))}


@lru_cache(maxsize=None)
def variable_names(n: int) -> tuple[str, ...]:
    return tuple("".join(string.ascii_lowercase[i - 1] for i in s) for s in basic_subsets(n))


def foundation_size(n: int) -> int:
    return 3 * n - 3


def basic_index_of(letters: Sequence[int], n: int) -> int | None:
    """0-based variable index if ``letters`` is already a basic word."""
    return basic_index(n).get(tuple(letters))


# -- Nielsen substitutions -------------------------------------------------


def nielsen_images(gen: str, n: int) -> list[tuple[int, ...]]:
    """Images of A_1..A_n under one Nielsen generator."""
    check_rank(n, low=2)
    images = [(i,) for i in range(1, n + 1)]
    if gen == "T":
        images[0] = (1, 2)
    elif gen == "T'":
        images[0] = (1, -2)
    elif gen == "P":
        images[0], images[1] = (2,), (1,)
    elif gen == "R":
        images = [(i % n + 1,) for i in range(1, n + 1)]
    elif gen == "I":
        images[0] = (-1,)
    else:
        raise ValueError(f"unknown Nielsen generator {gen!r}")
    return images


def substitute_word(word: Word, images: Sequence[Sequence[int]]) -> Word:
    out: list[int] = []
    for x in word.letters:
        img = images[abs(x) - 1]
        out.extend(img if x > 0 else (-y for y in reversed(img)))
    return reduce_free(out, word.n)


def apply_nielsen(word: Word, gen: str) -> Word:
    return substitute_word(word, nielsen_images(gen, word.n))


def apply_nielsen_word(word: Word, gens: Sequence[str]) -> Word:
    """Apply generators left to right: the first one acts first."""
    for g in gens:
        word = apply_nielsen(word, g)
    return word


# -- text ------------------------------------------------------------------


def format_word(letters: Sequence[int]) -> str:
    if not letters:
        return "e"
    parts = []
    for x in letters:
        ch = string.ascii_uppercase[abs(x) - 1]
        parts.append(ch if x > 0 else ch + "^-1")
    return "".join(parts)


_TOKEN = re.compile(r"([A-Z])(?:\^([+-]?\d+))?")


def parse_word(text: str, n: int) -> Word:
    """Parse ``A^-1B^2C``-style text; ``e`` or ``1`` is the identity."""
    check_rank(n)
    letters: list[int] = []
    pos = 0
    stripped = text.strip()
    if stripped in ("e", "1", ""):
        return identity(n)
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordParseError(f"unexpected character {text[pos]!r}", pos)
        idx = ord(m.group(1)) - ord("A") + 1
        if idx > n:
            raise WordParseError(f"generator {m.group(1)} exceeds rank {n}", pos)
        exp = int(m.group(2)) if m.group(2) is not None else 1
        if exp == 0:
            raise WordParseError("zero exponent", pos)
        letters.extend([idx if exp > 0 else -idx] * abs(exp))
        pos = m.end()
    return reduce_free(letters, n)


_NIELSEN_TOKEN = re.compile(r"T'|T|P|R|I")


def parse_nielsen(text: str) -> tuple[str, ...]:
    """Parse a Nielsen word such as ``TPT'R``; ``e``/``1``/empty is the identity."""
    stripped = "".join(text.split())
    if stripped in ("", "e", "1"):
        return ()
    out = []
    pos = 0
    while pos < len(stripped):
        m = _NIELSEN_TOKEN.match(stripped, pos)
        if not m:
            raise WordParseError(f"unexpected Nielsen symbol {stripped[pos]!r}", pos)
        out.append(m.group(0))
        pos = m.end()
    return tuple(out)
