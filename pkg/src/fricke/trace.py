"""Trace polynomials of free-group words in the Horowitz variables.

Every word is rewritten by three SL(2) trace identities, each of which makes a
strictly smaller word in the order (length, negative letters, inversions):

1. a negative letter:        tr(W x^-1) = tr(W) tr(x) - tr(W x)
2. a repeated generator:     tr(A U A V) = tr(A U) tr(A V) - tr(U V^-1)
3. square-free, unsorted:    tr(W y x) = P(W, x, y) - tr(W x y)

with P the Fricke sum tr(W1 W2 W3) + tr(W1 W3 W2).  Results are memoized on
the canonical cyclic representative of the word.
"""

from __future__ import annotations

import threading
from typing import Sequence

from .poly import Polynomial
from .words import (
    RankError,
    Word,
    basic_index_of,
    canonical_letters,
    letter_key,
    reduce_free,
    rotations,
)


class TraceCache:
    """Memo table from canonical letters to trace polynomials, one rank."""

    def __init__(self, n: int, enabled: bool = True):
        self.n = n
        self.enabled = enabled
        self._table: dict[tuple[int, ...], Polynomial] = {}
        self._lock = threading.Lock()

    def get(self, key):
        return self._table.get(key) if self.enabled else None

    def put(self, key, value):
        if self.enabled:
            with self._lock:
                self._table.setdefault(key, value)

    def __len__(self):
        return len(self._table)

    def items(self):
        return list(self._table.items())

    def clear(self):
        with self._lock:
            self._table.clear()


_default_caches: dict[int, TraceCache] = {}
_default_lock = threading.Lock()


def default_cache(n: int) -> TraceCache:
    with _default_lock:
        if n not in _default_caches:
            _default_caches[n] = TraceCache(n)
        return _default_caches[n]


def inversions(letters: Sequence[int]) -> int:
    idx = [abs(x) for x in letters]
    return sum(1 for i in range(len(idx)) for j in range(i + 1, len(idx)) if idx[i] > idx[j])


def cyclic_inversions(letters: Sequence[int]) -> int:
    return min(inversions(r) for r in rotations(letters))


def measure(letters: Sequence[int]) -> tuple[int, int, int]:
    """Termination measure; every rewrite strictly decreases it."""
    return (len(letters), sum(1 for x in letters if x < 0), cyclic_inversions(letters))


def fricke_sum(t1, t2, t3, t12, t13, t23):
    """P = tr(W1W2W3) + tr(W1W3W2) from the six block traces."""
    return t1 * t23 + t2 * t13 + t3 * t12 - t1 * t2 * t3


def fricke_product(t1, t2, t3, t12, t13, t23):
    """Q = tr(W1W2W3) * tr(W1W3W2) from the six block traces."""
    return (
        t1 * t1 + t2 * t2 + t3 * t3 + t12 * t12 + t13 * t13 + t23 * t23
        + t12 * t13 * t23 - t1 * t2 * t12 - t1 * t3 * t13 - t2 * t3 * t23 - 4
    )


class _Reducer:
    def __init__(self, n: int, cache: TraceCache):
        self.n = n
        self.cache = cache

    def trace(self, letters: Sequence[int], parent=None) -> Polynomial:
        key = canonical_letters(letters)
        if __debug__ and parent is not None:
            assert measure(key) < parent, (key, parent)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        result = self._reduce(key)
        self.cache.put(key, result)
        return result

    def _reduce(self, w: tuple[int, ...]) -> Polynomial:
        n = self.n
        if not w:
            return Polynomial.const(2, n)
        idx = basic_index_of(w, n)
        if idx is not None:
            return Polynomial.var(idx, n)
        mu = measure(w)
        tr = lambda word: self.trace(word, mu)  # noqa: E731

        neg = next((i for i, x in enumerate(w) if x < 0), None)
        if neg is not None:
            # w ~ W x^-1
            x = -w[neg]
            W = w[neg + 1:] + w[:neg]
            return tr(W) * tr((x,)) - tr(W + (x,))

        gens = [abs(x) for x in w]
        rep = next((i for i, g in enumerate(gens) if gens.count(g) > 1), None)
        if rep is not None:
            # w ~ A U A V
            r = w[rep:] + w[:rep]
            j = r.index(r[0], 1)
            A, U, V = r[:1], r[1:j], r[j + 1:]
            V_inv = tuple(-x for x in reversed(V))
            return tr(A + U) * tr(A + V) - tr(reduce_free(U + V_inv, n).letters)

        # square-free positive word not in cyclic order: use the rotation with
        # fewest inversions and its leftmost descending pair y x
        best = min(rotations(w), key=lambda r: (inversions(r), tuple(letter_key(x) for x in r)))
        i = next(i for i in range(len(best) - 1) if best[i] > best[i + 1])
        y, x = best[i], best[i + 1]
        W = best[i + 2:] + best[:i]
        tW, tx, ty = tr(W), tr((x,)), tr((y,))
        P = fricke_sum(tW, tx, ty, tr(W + (x,)), tr(W + (y,)), tr((x, y)))
        return P - tr(W + (x, y))


def trace_poly(word: Word | Sequence[int], n: int | None = None, cache: TraceCache | None = None) -> Polynomial:
    """tr_W as an integral polynomial in the 2^n - 1 Horowitz variables.

    ``cache`` defaults to a process-wide table for rank ``n``; pass a fresh
    ``TraceCache`` (or ``TraceCache(n, enabled=False)``) to isolate it.
    """
    if isinstance(word, Word):
        if n is not None and n != word.n:
            raise RankError(f"word has rank {word.n}, requested {n}")
        n = word.n
        letters = word.letters
    else:
        if n is None:
            raise ValueError("rank required for raw letter sequences")
        letters = reduce_free(word, n).letters
    if cache is None:
        cache = default_cache(n)
    elif cache.n != n:
        raise RankError(f"cache rank {cache.n} != {n}")
    return _Reducer(n, cache).trace(letters)


def fricke_pq(w1: Word, w2: Word, w3: Word, cache: TraceCache | None = None):
    """(P, Q) for the blocks W1, W2, W3: the sum and product of
    tr(W1W2W3) and tr(W1W3W2)."""
    if not (w1.n == w2.n == w3.n):
        raise RankError("blocks of mixed rank")
    t = lambda w: trace_poly(w, cache=cache)  # noqa: E731
    args = (t(w1), t(w2), t(w3), t(w1 * w2), t(w1 * w3), t(w2 * w3))
    return fricke_sum(*args), fricke_product(*args)
