"""Generators of the ideal of trace relations, built from the Magnus relation
det(tr M_i N_j) + det(tr M_i N_j^-1) = 0 for eight SL(2) elements."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Sequence

from .poly import Polynomial, det, exact_div, format_poly, mono_sort_key
from .trace import TraceCache, fricke_product, fricke_sum, trace_poly
from .words import (
    BasicWord,
    RankError,
    Word,
    basic_words,
    check_rank,
    foundation_size,
    format_word,
    variable_names,
)


class FoundationError(ValueError):
    """Raised when a generator is requested for one of the first 3n-3 variables."""


def magnus_poly(M: Sequence[Word], N: Sequence[Word], n: int, cache: TraceCache | None = None) -> Polynomial:
    """det(tr M_i N_j) + det(tr M_i N_j^-1) as a polynomial; it lies in I_n."""
    if len(M) != 4 or len(N) != 4:
        raise ValueError("the Magnus relation takes four M words and four N words")
    for w in (*M, *N):
        if w.n != n:
            raise RankError(f"word {w} has rank {w.n}, expected {n}")
    t = lambda w: trace_poly(w, cache=cache)  # noqa: E731
    direct = [[t(m * k) for k in N] for m in M]
    inverse = [[t(m * k.inverse()) for k in N] for m in M]
    return det(direct) + det(inverse)


@dataclass(frozen=True)
class GeneratorSpec:
    target: BasicWord
    case: int
    octet: tuple[Word, Word, Word, Word]

    @property
    def octet_text(self) -> list[str]:
        return [format_word(w.letters) for w in self.octet]


@dataclass
class IdealGenerators:
    n: int
    generators: list[tuple[GeneratorSpec, Polynomial]] = field(default_factory=list)

    def __len__(self):
        return len(self.generators)

    def polynomials(self) -> list[Polynomial]:
        return [p for _, p in self.generators]

    def to_json(self) -> dict:
        names = variable_names(self.n)
        out = []
        for spec, p in self.generators:
            var = spec.target.ordinal - 1
            out.append({
                "target": spec.target.name,
                "case": spec.case,
                "octet": spec.octet_text,
                "poly": format_poly(p),
                "target_degree": p.degree_in(var),
                "total_degree": p.total_degree(),
            })
        return {"n": self.n, "variables": list(names), "generators": out}


def integer_content(p: Polynomial) -> Fraction:
    nums = [Fraction(c).numerator for c in p.terms.values()]
    dens = [Fraction(c).denominator for c in p.terms.values()]
    if not nums:
        return Fraction(1)
    return Fraction(gcd(*nums), lcm(*dens))


def primitive_in(p: Polynomial, var: int) -> Polynomial:
    """Strip the factor carried by the Magnus determinant sum.

    Divides by the leading coefficient in ``var`` when that division is exact
    (the result is then monic in ``var``); otherwise divides out the integer
    content.
    """
    d = p.degree_in(var)
    if d > 0:
        lead = p.coefficient_in(var, d)
        if not lead.is_constant():
            try:
                return exact_div(p, lead)
            except ArithmeticError:
                pass
    c = integer_content(p)
    return p if c == 1 else exact_div(p, Polynomial.const(c, p.n))


def normalize_sign(p: Polynomial, var: int) -> Polynomial:
    """Make the leading coefficient in ``var`` positive (pure power first)."""
    d = p.degree_in(var)
    if d <= 0:
        return p
    lead = p.coefficient_in(var, d)
    c = lead.terms.get((), None)
    if c is None:
        c = lead.terms[min(lead.terms, key=mono_sort_key)]
    return -p if c < 0 else p


def case_octet(y: BasicWord) -> tuple[int, tuple[Word, Word, Word, Word]]:
    n = y.n
    s = y.subset
    if len(s) == 2:
        mu, nu = s
        if mu <= 2:
            raise FoundationError(f"{y} is a foundation variable")
        gens = (1, 2, mu, nu)
        return 1, tuple(Word((g,), n) for g in gens)
    a, b = Word((s[0],), n), Word((s[1],), n)
    rest = Word(s[2:], n)
    return 2, (a, b, a * b, rest)


def decomposition_octet(w1: Word, w2: Word, w3: Word) -> tuple[Word, Word, Word, Word]:
    """Octet (W1, W2, W1W2, W3) of a three-block Magnus decomposition."""
    return (w1, w2, w1 * w2, w3)


def generator_for(y: BasicWord, cache: TraceCache | None = None) -> tuple[GeneratorSpec, Polynomial]:
    n = y.n
    if y.ordinal <= foundation_size(n):
        raise FoundationError(f"{y} (ordinal {y.ordinal}) is a foundation variable")
    case, octet = case_octet(y)
    var = y.ordinal - 1
    p = magnus_poly(octet, octet, n, cache=cache)
    p = normalize_sign(primitive_in(p, var), var)
    return GeneratorSpec(y, case, octet), p


def ideal_generators(n: int, cache: TraceCache | None = None) -> IdealGenerators:
    """One Magnus generator per basic word beyond the first 3n - 3."""
    check_rank(n, low=2)
    gens = IdealGenerators(n)
    for y in basic_words(n)[foundation_size(n):]:
        gens.generators.append(generator_for(y, cache=cache))
    return gens


def cyclic_decompositions(y: BasicWord) -> list[tuple[Word, Word, Word]]:
    """All splittings of the cyclic word y into three consecutive blocks,
    up to rotation; the first block may wrap around the end."""
    s = y.subset
    k = len(s)
    out = []
    for c1, c2, c3 in combinations(range(k), 3):
        blocks = [s[c1:c2], s[c2:c3], s[c3:] + s[:c1]]
        if c1 != 0:
            blocks = blocks[2:] + blocks[:2]
        out.append(tuple(Word(b, y.n) for b in blocks))
    return out


# -- numeric witness conditions -----------------------------------------------


@dataclass
class MagnusConditions:
    commutator: complex
    discriminant: complex
    commutator_ok: bool
    discriminant_ok: bool


def magnus_conditions(foundation: Sequence[complex], n: int, tol: float = 1e-9) -> MagnusConditions:
    """tr[A1, A2] != 2 and the discriminant of the A1A2A3 quadratic != 0."""
    if len(foundation) != foundation_size(n):
        raise ValueError(f"expected {foundation_size(n)} foundation coordinates, got {len(foundation)}")
    x = [complex(v) for v in foundation]
    a1, a2, a12 = x[0], x[1], x[n]
    comm = a1 * a1 + a2 * a2 + a12 * a12 - a1 * a2 * a12 - 2
    if n >= 3:
        a3, a13, a23 = x[2], x[n + 1], x[2 * n - 1]
        blocks = (a1, a2, a3, a12, a13, a23)
        disc = fricke_sum(*blocks) ** 2 - 4 * fricke_product(*blocks)
    else:
        disc = complex("nan")
    return MagnusConditions(
        commutator=comm,
        discriminant=disc,
        commutator_ok=abs(comm - 2) > tol,
        discriminant_ok=bool(abs(disc) > tol),
    )
