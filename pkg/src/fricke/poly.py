"""Sparse multivariate polynomials over Q in the Horowitz variables.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable,
with variables numbered 0 .. 2^n - 2 in Horowitz order.  Coefficients are
Python ints, or ``Fraction`` when not integral.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .words import RankError, basic_subsets, variable_names

Monomial = tuple  # tuple[tuple[int, int], ...]
Coeff = Union[int, Fraction]

ONE: Monomial = ()


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_sort_key(m: Monomial):
    # graded (descending), then by variable order
    expanded = tuple(v for v, e in m for _ in range(e))
    return (-len(expanded), expanded)


class Polynomial:
    """Immutable sparse polynomial in the 2^n - 1 Horowitz variables of rank n."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Monomial, Coeff] | None = None):
        self.n = n
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = _norm(c)
        self.terms: dict[Monomial, Coeff] = clean
        self._hash = None

    @classmethod
    def _raw(cls, n, terms):
        p = cls.__new__(cls)
        p.n = n
        p.terms = terms
        p._hash = None
        return p

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, value: Coeff, n: int) -> "Polynomial":
        return cls(n, {ONE: value})

    @classmethod
    def var(cls, index: int, n: int) -> "Polynomial":
        nvars = 2 ** n - 1
        if not 0 <= index < nvars:
            raise RankError(f"variable index {index} out of range for rank {n}")
        return cls._raw(n, {((index, 1),): 1})

    @classmethod
    def variables(cls, n: int) -> list["Polynomial"]:
        return [cls.var(i, n) for i in range(2 ** n - 1)]

    @property
    def nvars(self) -> int:
        return 2 ** self.n - 1

    # -- predicates ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == ONE for m in self.terms)

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(ONE, 0)

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self.terms.values())

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((dict(m).get(var, 0) for m in self.terms), default=-1)

    def used_variables(self) -> set[int]:
        return {v for m in self.terms for v, _ in m}

    def coefficient_in(self, var: int, power: int) -> "Polynomial":
        """Coefficient of ``var**power`` viewing self as a polynomial in ``var``."""
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(var, 0) == power:
                d.pop(var, None)
                out[tuple(sorted(d.items()))] = c
        return Polynomial._raw(self.n, out)

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise RankError(f"rank mismatch: {self.n} vs {other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(other, self.n)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = _norm(s)
            else:
                terms.pop(m, None)
        return Polynomial._raw(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Polynomial._raw(self.n, {})
        terms: dict = {}
        get = terms.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                terms[m] = get(m, 0) + c1 * c2
        return Polynomial(self.n, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.const(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: Coeff) -> "Polynomial":
        return Polynomial(self.n, {m: v * c for m, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other, self.n)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r}, n={self.n})"

    def __str__(self):
        return format_poly(self)

    # -- calculus / evaluation ----------------------------------------------
    def diff(self, var: int) -> "Polynomial":
        out: dict = {}
        for m, c in self.terms.items():
            for k, (v, e) in enumerate(m):
                if v == var:
                    rest = m[:k] + ((v, e - 1),) + m[k + 1:] if e > 1 else m[:k] + m[k + 1:]
                    out[rest] = out.get(rest, 0) + c * e
                    break
        return Polynomial(self.n, out)

    def evaluate(self, point: Sequence[complex]) -> complex:
        """Evaluate at a complex point of length 2^n - 1."""
        if len(point) != self.nvars:
            raise RankError(f"point has {len(point)} coordinates, expected {self.nvars}")
        total = 0j
        for m, c in self.terms.items():
            t = complex(c)
            for v, e in m:
                t *= point[v] ** e
            total += t
        return total

    def term_scale(self, point: Sequence[complex]) -> float:
        """Largest |term| at ``point``; the reference magnitude for relative residuals."""
        best = 0.0
        for m, c in self.terms.items():
            t = abs(complex(c))
            for v, e in m:
                t *= abs(point[v]) ** e
            best = max(best, t)
        return best

    def rename(self, mapping: Mapping[int, int], n: int) -> "Polynomial":
        """Relabel variables (used to move between coordinate systems)."""
        return Polynomial(
            n, {tuple(sorted((mapping[v], e) for v, e in m)): c for m, c in self.terms.items()}
        )


def substitute(p: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Replace variable i by ``images[i]`` and expand."""
    if len(images) != p.nvars:
        raise RankError(f"substitution needs {p.nvars} images, got {len(images)}")
    n = images[0].n if images else p.n
    for q in images:
        if q.n != n:
            raise RankError("substitution images of mixed rank")
    powers: dict = {}

    def power(v, e):
        key = (v, e)
        if key not in powers:
            powers[key] = images[v] if e == 1 else power(v, e - 1) * images[v]
        return powers[key]

    result = Polynomial(n)
    for m, c in p.terms.items():
        term = Polynomial.const(c, n)
        for v, e in m:
            term = term * power(v, e)
        result = result + term
    return result


class PolyMap:
    """Self-map of C^(2^n - 1), one component polynomial per coordinate."""

    __slots__ = ("n", "components")

    def __init__(self, n: int, components: Sequence[Polynomial]):
        components = tuple(components)
        if len(components) != 2 ** n - 1:
            raise RankError(f"map of rank {n} needs {2 ** n - 1} components, got {len(components)}")
        for c in components:
            if c.n != n:
                raise RankError("component rank mismatch")
        self.n = n
        self.components = components

    @classmethod
    def identity(cls, n: int) -> "PolyMap":
        return cls(n, Polynomial.variables(n))

    def __eq__(self, other):
        return isinstance(other, PolyMap) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def then(self, other: "PolyMap") -> "PolyMap":
        """The map x -> other(self(x))."""
        return PolyMap(self.n, [substitute(c, self.components) for c in other.components])

    def after(self, other: "PolyMap") -> "PolyMap":
        """The map x -> self(other(x))."""
        return other.then(self)

    def __call__(self, point: Sequence[complex]) -> list[complex]:
        return [c.evaluate(point) for c in self.components]

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.components)

    def named(self) -> dict[str, str]:
        return {name: format_poly(c) for name, c in zip(variable_names(self.n), self.components)}


# -- matrices ----------------------------------------------------------------


def jacobian(m: PolyMap | Sequence[Polynomial], variables: Sequence[int] | None = None):
    """Matrix of partials d(component i)/d(variable j)."""
    comps = m.components if isinstance(m, PolyMap) else tuple(m)
    if variables is None:
        variables = range(comps[0].nvars)
    return [[c.diff(v) for v in variables] for c in comps]


def _cofactor_det(M):
    k = len(M)
    if k == 1:
        return M[0][0]
    if k == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(k):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _cofactor_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else M[0][0] * 0


def _cost(p: Polynomial):
    return (len(p.terms), p.total_degree())


def _bareiss_det(M, n):
    A = [list(row) for row in M]
    k = len(A)
    sign = 1
    prev = Polynomial.const(1, n)
    for s in range(k - 1):
        # full pivoting on the cheapest nonzero entry keeps intermediates small
        best = None
        for i in range(s, k):
            for j in range(s, k):
                if not A[i][j].is_zero():
                    c = _cost(A[i][j])
                    if best is None or c < best[0]:
                        best = (c, i, j)
        if best is None:
            return Polynomial(n)
        _, i, j = best
        if i != s:
            A[s], A[i] = A[i], A[s]
            sign = -sign
        if j != s:
            for row in A:
                row[s], row[j] = row[j], row[s]
            sign = -sign
        piv = A[s][s]
        for i in range(s + 1, k):
            for j in range(s + 1, k):
                num = piv * A[i][j] - A[i][s] * A[s][j]
                A[i][j] = exact_div(num, prev)
            A[i][s] = Polynomial(n)
        prev = piv
    d = A[k - 1][k - 1]
    return d if sign > 0 else -d


def det(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact determinant: cofactor expansion up to 4x4, fraction-free
    elimination beyond."""
    k = len(M)
    if any(len(row) != k for row in M):
        raise ValueError("matrix is not square")
    if k == 0:
        raise ValueError("empty matrix")
    if k <= 4:
        return _cofactor_det(M)
    return _bareiss_det(M, M[0][0].n)


def _lead(p: Polynomial):
    return min(p.terms, key=mono_sort_key)


def exact_div(p: Polynomial, q: Polynomial) -> Polynomial:
    """p / q, raising ArithmeticError unless the division is exact."""
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if q.is_constant():
        c = Fraction(q.constant_value())
        return Polynomial(p.n, {m: Fraction(v) / c for m, v in p.terms.items()})
    lq = _lead(q)
    cq = Fraction(q.terms[lq])
    rem = p
    quot: dict = {}
    dq = dict(lq)
    while not rem.is_zero():
        lr = _lead(rem)
        dr = dict(lr)
        if any(dr.get(v, 0) < e for v, e in dq.items()):
            raise ArithmeticError("inexact polynomial division")
        mono = tuple(sorted((v, e - dq.get(v, 0)) for v, e in dr.items() if e - dq.get(v, 0)))
        c = _norm(Fraction(rem.terms[lr]) / cq)
        quot[mono] = quot.get(mono, 0) + c
        rem = rem - Polynomial._raw(p.n, {mono: c}) * q
    return Polynomial(p.n, quot)


def matmul(A, B):
    k, l, r = len(A), len(B), len(B[0])
    if len(A[0]) != l:
        raise ValueError("shape mismatch")
    n = A[0][0].n
    out = []
    for i in range(k):
        row = []
        for j in range(r):
            s = Polynomial(n)
            for t in range(l):
                if not A[i][t].is_zero() and not B[t][j].is_zero():
                    s = s + A[i][t] * B[t][j]
            row.append(s)
        out.append(row)
    return out


# -- text format -------------------------------------------------------------


def _format_coeff(c) -> str:
    if type(c) is int:
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def format_poly(p: Polynomial, names: Sequence[str] | None = None) -> str:
    """Canonical text: graded descending, then variable order; ``*`` between
    factors, ``^`` for powers, ``num/den`` for rational coefficients."""
    if p.is_zero():
        return "0"
    if names is None:
        names = variable_names(p.n)
    parts = []
    for m in sorted(p.terms, key=mono_sort_key):
        c = p.terms[m]
        neg = c < 0
        a = -c if neg else c
        factors = [names[v] if e == 1 else f"{names[v]}^{e}" for v, e in m]
        if not factors:
            body = _format_coeff(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_coeff(a)] + factors)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


class PolyParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOK = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([a-z]+)|(\^)|(\*)|(\+)|(-)|(\()|(\)))")


class _Parser:
    def __init__(self, text, n, names):
        self.text = text
        self.n = n
        self.lookup = {name: i for i, name in enumerate(names)}
        self.toks = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOK.match(text, pos)
            if not m:
                while text[pos].isspace():
                    pos += 1
                raise PolyParseError(f"unexpected character {text[pos]!r}", pos)
            kinds = ("num", "name", "^", "*", "+", "-", "(", ")")
            kind = next(k for k, g in zip(kinds, m.groups()) if g is not None)
            start = m.start(m.lastindex)
            self.toks.append((kind, m.group(m.lastindex), start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self, kind=None):
        tok = self.peek()
        if kind is not None and tok[0] != kind:
            raise PolyParseError(f"expected {kind!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise PolyParseError("empty input", 0)
        p = self.expr()
        if self.i != len(self.toks):
            raise PolyParseError(f"unexpected {self.peek()[1]!r}", self.peek()[2])
        return p

    def expr(self):
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        p = self.term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self):
        p = self.factor()
        while self.peek()[0] == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            if "/" in val:
                a, b = val.split("/")
                if int(b) == 0:
                    raise PolyParseError("zero denominator", pos)
                base = Polynomial.const(Fraction(int(a), int(b)), self.n)
            else:
                base = Polynomial.const(int(val), self.n)
        elif kind == "name":
            self.take()
            if val not in self.lookup:
                raise PolyParseError(f"unknown variable {val!r}", pos)
            base = Polynomial.var(self.lookup[val], self.n)
        elif kind == "(":
            self.take()
            base = self.expr()
            self.take(")")
        else:
            raise PolyParseError("expected a number, variable or '('", pos)
        if self.peek()[0] == "^":
            self.take()
            k, v, p2 = self.take("num")
            if "/" in v:
                raise PolyParseError("exponent must be an integer", p2)
            base = base ** int(v)
        return base


def parse_poly(text: str, n: int, names: Sequence[str] | None = None) -> Polynomial:
    """Parse the canonical text format (parentheses are also accepted)."""
    if names is None:
        names = variable_names(n)
    return _Parser(text, n, names).parse()


def nvars(n: int) -> int:
    return len(basic_subsets(n))
