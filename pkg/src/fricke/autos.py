"""Polynomial maps of C^(2^n - 1) induced by automorphisms of F_n.

A Nielsen word such as ``TPR`` acts on group elements left to right (T
first).  Its induced map sends coordinate i to the trace polynomial of the
image of the i-th basic word, so for words u, v the induced map of ``uv`` is
``x -> map(u)(map(v)(x))`` on the character variety.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Sequence

import numpy as np

from .poly import Polynomial, PolyMap, det, jacobian, parse_poly, substitute
from .trace import TraceCache, trace_poly
from .words import (
    NIELSEN_GENERATORS,
    Word,
    apply_nielsen_word,
    basic_words,
    check_rank,
    generator,
    parse_nielsen,
)


def _gens(w: str | Sequence[str]) -> tuple[str, ...]:
    if isinstance(w, str):
        return parse_nielsen(w)
    for g in w:
        if g not in NIELSEN_GENERATORS:
            raise ValueError(f"unknown Nielsen generator {g!r}")
    return tuple(w)


def image_words(w: str | Sequence[str], n: int) -> list[Word]:
    """Images of the basic words under the automorphism spelled by ``w``."""
    gens = _gens(w)
    return [apply_nielsen_word(b.word(), gens) for b in basic_words(n)]


def induced_map(w: str | Sequence[str], n: int, cache: TraceCache | None = None) -> PolyMap:
    check_rank(n, low=2)
    return PolyMap(n, [trace_poly(img, cache=cache) for img in image_words(w, n)])


def compose_words(factors: Sequence[PolyMap]) -> PolyMap:
    """Map of a concatenated Nielsen word from the maps of its factors."""
    result = factors[-1]
    for m in reversed(factors[:-1]):
        result = m.after(result)
    return result


def jac_det(m: PolyMap) -> Polynomial:
    return det(jacobian(m))


def abelianization(w: str | Sequence[str], n: int) -> np.ndarray:
    """Integer matrix of the action on Z^n; column j is the image of e_j."""
    gens = _gens(w)
    M = np.zeros((n, n), dtype=np.int64)
    for j in range(1, n + 1):
        img = apply_nielsen_word(generator(j, n), gens)
        for x in img.letters:
            M[abs(x) - 1, j - 1] += 1 if x > 0 else -1
    return M


def int_det(M: np.ndarray) -> int:
    """Exact integer determinant (Bareiss on Python ints)."""
    A = [[int(v) for v in row] for row in M]
    k = len(A)
    sign, prev = 1, 1
    for s in range(k - 1):
        if A[s][s] == 0:
            swap = next((i for i in range(s + 1, k) if A[i][s]), None)
            if swap is None:
                return 0
            A[s], A[swap] = A[swap], A[s]
            sign = -sign
        for i in range(s + 1, k):
            for j in range(s + 1, k):
                A[i][j] = (A[s][s] * A[i][j] - A[i][s] * A[s][j]) // prev
        prev = A[s][s]
    return sign * A[k - 1][k - 1]


def hyperoctahedral_closure(n: int, cache: TraceCache | None = None) -> set[PolyMap]:
    """All maps reachable by composing the induced maps of P, R and I."""
    if n not in (2, 3):
        raise ValueError("closure is supported for n in {2, 3}")
    seeds = [induced_map(g, n, cache=cache) for g in ("P", "R", "I")]
    ident = PolyMap.identity(n)
    seen = {ident}
    queue = deque([ident])
    while queue:
        m = queue.popleft()
        for g in seeds:
            nxt = m.then(g)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def hyperoctahedral_count(n: int) -> int:
    return len(hyperoctahedral_closure(n))


# -- reduced 14-coordinate system at n = 4 (negative control) ---------------

GAMA_ELIMINATION = (
    "a*b*c*d - a*b*cd - a*d*bc - b*c*ad - c*d*ab + a*bcd + b*acd + c*abd + d*abc - ac*bd + ad*bc"
)


def gama_phi1_map() -> tuple[list[Polynomial], list[int]]:
    """Twist map on the 14 coordinates of word length <= 3 for n = 4, with
    abcd replaced by half its elimination expression."""
    n = 4
    full = induced_map("T", n)
    z = 14
    half = parse_poly(GAMA_ELIMINATION, n) * Fraction(1, 2)
    keep = list(range(14))
    comps = [substitute_one(full.components[i], z, half) for i in keep]
    return comps, keep


def substitute_one(p: Polynomial, var: int, value: Polynomial) -> Polynomial:
    images = Polynomial.variables(p.n)
    images[var] = value
    return substitute(p, images)


def gama_phi1_det() -> Polynomial:
    """Jacobian determinant of the reduced twist map; equals b/2 (m/2 in
    l..z letters), a non-constant, non-integral polynomial."""
    comps, keep = gama_phi1_map()
    return det(jacobian(comps, keep))
