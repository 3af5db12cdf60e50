"""Floating-point oracle: SL(2,C) samples, character points, and numerical
checks of the symbolic constructions."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .ideal import (
    cyclic_decompositions,
    decomposition_octet,
    ideal_generators,
    magnus_conditions,
    magnus_poly,
    normalize_sign,
    primitive_in,
)
from .poly import Polynomial
from .words import (
    NIELSEN_GENERATORS,
    BasicWord,
    Word,
    apply_nielsen,
    basic_subsets,
    check_rank,
    foundation_size,
    generator,
)

DET_TOL = 1e-12
TRACE_TOL = 1e-9
IDEAL_TOL = 1e-8
RANK_CUTOFF = 1e-8
MAX_RESAMPLE = 1000

REPORT_KINDS = ("ideal", "equivariance", "magnus", "jacobian-rank")


class Representation:
    """n matrices in SL(2,C), the images of A_1..A_n."""

    def __init__(self, matrices: Sequence[np.ndarray]):
        mats = [np.asarray(m, dtype=complex) for m in matrices]
        for m in mats:
            if m.shape != (2, 2):
                raise ValueError("representation matrices must be 2x2")
            if abs(np.linalg.det(m) - 1) > DET_TOL * max(1.0, float(np.abs(m).max()) ** 2):
                raise ValueError(f"matrix does not have unit determinant: det = {np.linalg.det(m)}")
        self.matrices = mats
        self._inverses = [np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]]) for m in mats]

    @property
    def n(self) -> int:
        return len(self.matrices)

    def image(self, word: Word | Sequence[int]) -> np.ndarray:
        letters = word.letters if isinstance(word, Word) else word
        out = np.eye(2, dtype=complex)
        for x in letters:
            out = out @ (self.matrices[x - 1] if x > 0 else self._inverses[-x - 1])
        return out

    def trace(self, word: Word | Sequence[int]) -> complex:
        return complex(np.trace(self.image(word)))

    def conjugate(self, g: np.ndarray) -> "Representation":
        gi = np.linalg.inv(g)
        return Representation([g @ m @ gi for m in self.matrices])

    def precompose(self, gen: str) -> "Representation":
        """The representation A_j -> rho(sigma(A_j)) for a Nielsen generator."""
        return Representation([self.image(apply_nielsen(generator(j, self.n), gen)) for j in range(1, self.n + 1)])


def _random_sl2(rng: np.random.Generator) -> np.ndarray:
    for _ in range(MAX_RESAMPLE):
        a, b, c = rng.uniform(-1, 1, 3) + 1j * rng.uniform(-1, 1, 3)
        if abs(a) >= 1e-6:
            return np.array([[a, b], [c, (1 + b * c) / a]])
    raise RuntimeError("resampling cap exceeded")


def random_sl2(rng: np.random.Generator, count: int) -> list[np.ndarray]:
    return [_random_sl2(rng) for _ in range(count)]


def sample_rep(n: int, seed: int | np.random.SeedSequence) -> Representation:
    """Deterministic sample: entries a, b, c uniform in the unit complex square,
    d = (1 + bc)/a."""
    check_rank(n)
    rng = np.random.default_rng(seed)
    return Representation(random_sl2(rng, n))


def sample_reps(n: int, count: int, seed: int) -> list[Representation]:
    """``count`` representations from independent child seeds of ``seed``."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [sample_rep(n, s) for s in children]


def witness_matrix(i: int) -> np.ndarray:
    r, s = math.sqrt(i), math.sqrt(i + 1)
    return np.array([[r, s], [2 / s, 3 / r]], dtype=complex)


def witness_rep() -> Representation:
    return Representation([witness_matrix(i) for i in (1, 2, 3)])


def character_point(rho: Representation) -> np.ndarray:
    """Traces of the basic-word images in Horowitz order."""
    return np.array([rho.trace(s) for s in basic_subsets(rho.n)], dtype=complex)


def relative_residual(p: Polynomial, point: Sequence[complex]) -> float:
    value = abs(p.evaluate(point))
    return value / max(1.0, p.term_scale(point))


def numeric_jacobian(polys: Sequence[Polynomial], point: Sequence[complex]) -> np.ndarray:
    nv = len(point)
    return np.array([[q.diff(j).evaluate(point) for j in range(nv)] for q in polys], dtype=complex)


def numerical_rank(M: np.ndarray, cutoff: float = RANK_CUTOFF) -> int:
    s = np.linalg.svd(M, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > cutoff * s[0]))


def magnus_residual(M: Sequence[np.ndarray], N: Sequence[np.ndarray]) -> float:
    """|det(tr M_i N_j) + det(tr M_i N_j^-1)| relative to a Hadamard bound."""
    T1 = np.array([[np.trace(m @ k) for k in N] for m in M])
    T2 = np.array([[np.trace(m @ np.linalg.inv(k)) for k in N] for m in M])
    scale = sum(float(np.prod(np.linalg.norm(T, axis=1))) for T in (T1, T2))
    return float(abs(np.linalg.det(T1) + np.linalg.det(T2)) / max(1.0, scale))


# -- reports -----------------------------------------------------------------


@dataclass
class VerificationReport:
    kind: str
    n: int
    samples: int
    seed: int
    tolerance: float
    max_residual: float
    passed: bool
    details: list = field(default_factory=list)

    def to_json(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return _round(d)


def _round(obj):
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, float):
        return float(f"{obj:.12g}") if math.isfinite(obj) else str(obj)
    if isinstance(obj, complex):
        return [_round(obj.real), _round(obj.imag)]
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def _verify_ideal(n, samples, tol, seed):
    gens = ideal_generators(n)
    worst = 0.0
    details = []
    for spec, p in gens.generators:
        r = max((relative_residual(p, character_point(rho)) for rho in sample_reps(n, samples, seed)), default=0.0)
        worst = max(worst, r)
        details.append({"target": spec.target.name, "max_residual": r})
    return worst, details


def _verify_equivariance(n, samples, tol, seed):
    from .autos import induced_map

    maps = {g: induced_map(g, n) for g in NIELSEN_GENERATORS}
    worst = 0.0
    details = []
    for g, m in maps.items():
        gw = 0.0
        for rho in sample_reps(n, samples, seed):
            lhs = np.array(m(character_point(rho)))
            rhs = character_point(rho.precompose(g))
            gw = max(gw, float(np.max(np.abs(lhs - rhs) / np.maximum(1.0, np.abs(rhs)))))
        worst = max(worst, gw)
        details.append({"generator": g, "max_residual": gw})
    return worst, details


def _verify_magnus(n, samples, tol, seed):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        mats = random_sl2(rng, 8)
        worst = max(worst, magnus_residual(mats[:4], mats[4:]))
    return worst, [{"octets": samples, "max_residual": worst}]


def witness_point(n: int, seed: int) -> np.ndarray:
    """Character point of the witness matrices A_1..A_3 extended by sampled
    A_4..A_n."""
    rng = np.random.default_rng(seed)
    mats = [witness_matrix(i) for i in (1, 2, 3)][:n] + random_sl2(rng, max(0, n - 3))
    return character_point(Representation(mats))


def alternative_top_generators(n: int) -> list[tuple[str, Polynomial]]:
    """Generators for the longest basic word from every three-block
    decomposition."""
    top = BasicWord(tuple(range(1, n + 1)), n)
    var = top.ordinal - 1
    out = []
    for blocks in cyclic_decompositions(top):
        octet = decomposition_octet(*blocks)
        p = magnus_poly(octet, octet, n)
        out.append((".".join(str(b) for b in blocks), normalize_sign(primitive_in(p, var), var)))
    return out


def jacobian_rank(n: int, point: Sequence[complex], polys: Sequence[Polynomial] | None = None) -> int:
    if polys is None:
        polys = ideal_generators(n).polynomials()
    return numerical_rank(numeric_jacobian(polys, point))


def _verify_jacobian_rank(n, samples, tol, seed):
    if n < 3:
        raise ValueError("jacobian-rank needs n >= 3")
    gens = ideal_generators(n).polynomials()
    m = len(gens)
    details = []
    worst = 0.0
    for k in range(samples):
        point = witness_point(n, seed + k)
        base = jacobian_rank(n, point, gens)
        entry = {"point": k, "rank": base, "dimension": len(point) - base, "alternatives": []}
        ok = base == m
        if n >= 4:
            for label, alt in alternative_top_generators(n):
                r = jacobian_rank(n, point, gens[:-1] + [alt])
                entry["alternatives"].append({"decomposition": label, "rank": r})
                ok = ok and r == m
        entry["ok"] = ok
        worst = max(worst, 0.0 if ok else 1.0)
        details.append(entry)
    return worst, details


def verify(kind: str, n: int, samples: int, tolerance: float | None = None, seed: int = 0) -> VerificationReport:
    if kind not in REPORT_KINDS:
        raise ValueError(f"unknown report kind {kind!r}; choose from {', '.join(REPORT_KINDS)}")
    check_rank(n, low=2)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if tolerance is None:
        tolerance = TRACE_TOL if kind == "equivariance" else IDEAL_TOL
    runner = {
        "ideal": _verify_ideal,
        "equivariance": _verify_equivariance,
        "magnus": _verify_magnus,
        "jacobian-rank": _verify_jacobian_rank,
    }[kind]
    worst, details = runner(n, samples, tolerance, seed)
    passed = worst <= tolerance if kind != "jacobian-rank" else worst == 0.0
    return VerificationReport(kind, n, samples, seed, float(tolerance), float(worst), bool(passed), details)


def witness_report(seed: int = 0) -> dict:
    """Witness values of the Magnus conditions and the n = 4 rank check."""
    point3 = character_point(witness_rep())
    cond = magnus_conditions(point3[: foundation_size(3)], 3)
    rank = _verify_jacobian_rank(4, 1, 0.0, seed)[1][0]
    return _round({
        "commutator_trace": cond.commutator.real,
        "discriminant": cond.discriminant.real,
        "commutator_ok": cond.commutator_ok,
        "discriminant_ok": cond.discriminant_ok,
        "n4_rank": rank["rank"],
        "n4_dimension": rank["dimension"],
        "n4_alternative_ranks": {a["decomposition"]: a["rank"] for a in rank["alternatives"]},
        "seed": seed,
    })
