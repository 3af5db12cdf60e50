import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import nielsen_strategy, random_nielsen
from fricke.autos import (
    abelianization,
    compose_words,
    gama_phi1_det,
    gama_phi1_map,
    hyperoctahedral_closure,
    hyperoctahedral_count,
    induced_map,
    int_det,
    jac_det,
)
from fricke.ideal import ideal_generators
from fricke.numerics import character_point, relative_residual, sample_reps
from fricke.poly import Polynomial, PolyMap, parse_poly, substitute

OBSERVED_DETS = {
    2: {"T": 1, "T'": 1, "P": -1, "R": -1, "I": -1},
    3: {"T": 1, "T'": 1, "P": -1, "R": 1, "I": -1},
    4: {"T": 1, "T'": 1, "P": -1, "R": 1, "I": -1},
}


def named(m):
    return {k: parse_poly(v, m.n) for k, v in m.named().items()}


def test_twist_rank2():
    assert named(induced_map("T", 2)) == named(PolyMap(2, [parse_poly(s, 2) for s in ("ab", "b", "b*ab - a")]))


def test_inversion_rank3():
    m = named(induced_map("I", 3))
    assert m["abc"] == parse_poly("a*bc - abc", 3)
    assert m["ab"] == parse_poly("a*b - ab", 3)
    assert m["ac"] == parse_poly("a*c - ac", 3)
    for k in ("a", "b", "c", "bc"):
        assert m[k] == parse_poly(k, 3)


def test_rotation_rank3_is_permutation():
    m = named(induced_map("R", 3))
    assert m == {k: parse_poly(v, 3) for k, v in
                 {"a": "b", "b": "c", "c": "a", "ab": "bc", "ac": "ab", "bc": "ac", "abc": "abc"}.items()}


def test_swap_rank4_component():
    m = induced_map("P", 4)
    assert m.named()["abc"] == "-a*b*c + a*bc + b*ac + c*ab - abc"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_maps_are_integral(n):
    for g in ("T", "T'", "P", "R", "I"):
        assert induced_map(g, n).is_integral()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_generator_jacobian_dets(n):
    for g, d in OBSERVED_DETS[n].items():
        assert jac_det(induced_map(g, n)) == d


def test_constant_jacobian_short_words():
    rng = random.Random(4)
    for n in (2, 3, 4):
        for _ in range(12 if n < 4 else 8):
            w = random_nielsen(rng, 4)
            d = jac_det(induced_map(w, n))
            assert d.is_constant() and d.constant_value() in (1, -1), (n, w)


def test_abelianization_examples():
    assert (abelianization("T", 3) == np.array([[1, 0, 0], [1, 1, 0], [0, 0, 1]])).all()
    assert (abelianization("I", 3) == np.diag([-1, 1, 1])).all()
    assert int_det(abelianization("P", 3)) == -1
    assert int_det(abelianization("T", 4)) == 1


def test_abelianization_composes():
    rng = random.Random(6)
    for _ in range(20):
        u, v = random_nielsen(rng, 3), random_nielsen(rng, 3)
        # left factor is substituted first, so its matrix sits on the right
        assert (abelianization(u + v, 4) == abelianization(v, 4) @ abelianization(u, 4)).all()


@given(nielsen_strategy)
def test_abelianization_unimodular(w):
    assert int_det(abelianization(w, 4)) in (1, -1)


def test_int_det():
    assert int_det(np.array([[2, 1], [1, 1]])) == 1
    assert int_det(np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]])) == 1
    assert int_det(np.array([[1, 2], [2, 4]])) == 0
    M = np.random.default_rng(0).integers(-3, 4, (5, 5))
    assert int_det(M) == round(np.linalg.det(M))


def test_det_comparison_generators_low_rank():
    for n in (2, 3):
        for g in OBSERVED_DETS[n]:
            assert int_det(abelianization(g, n)) == jac_det(induced_map(g, n))


def test_det_comparison_random_low_rank():
    rng = random.Random(12)
    for n in (2, 3):
        for _ in range(25):
            w = random_nielsen(rng, 6)
            assert int_det(abelianization(w, n)) == jac_det(induced_map(w, n)), (n, w)


def test_rank4_rotation_breaks_det_comparison():
    # a 4-cycle of generators has odd sign on Z^4 but even sign on the 15 coordinates
    assert int_det(abelianization("R", 4)) == -1
    assert jac_det(induced_map("R", 4)) == 1


def test_rank4_relator_composite_differs_off_variety():
    # (RP)^3 is trivial in Out(F_4); the factor composite agrees only on V
    word = ("R", "P") * 3
    n = 4
    assert induced_map(word, n) == PolyMap.identity(n)
    comp = compose_words([induced_map(g, n) for g in word])
    assert comp != PolyMap.identity(n)
    assert jac_det(comp) == -1
    for rho in sample_reps(n, 10, 2):
        x = character_point(rho)
        assert np.allclose(comp(x), x, rtol=1e-9, atol=1e-9)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_group_laws(n):
    ident = PolyMap.identity(n)
    P, R, I, T, Tp = (induced_map(g, n) for g in ("P", "R", "I", "T", "T'"))
    assert P.then(P) == ident
    assert I.then(I) == ident
    Rn = R
    for _ in range(n - 1):
        Rn = Rn.then(R)
    assert Rn == ident
    assert T.then(Tp) == ident
    assert Tp.then(T) == ident


@settings(max_examples=25, deadline=None)
@given(nielsen_strategy, nielsen_strategy)
def test_composition_law_rank2_exact(u, v):
    assert induced_map(u + v, 2) == induced_map(u, 2).after(induced_map(v, 2))


def test_composition_law_on_characters():
    rng = random.Random(21)
    for n in (3, 4):
        for k in range(6):
            u, v = random_nielsen(rng, 3), random_nielsen(rng, 3)
            lhs = induced_map(u + v, n)
            rhs = induced_map(u, n).after(induced_map(v, n))
            for rho in sample_reps(n, 5, k):
                x = character_point(rho)
                assert np.allclose(lhs(x), rhs(x), rtol=1e-9, atol=1e-9)


def test_compose_words_matches_after():
    maps = [induced_map(g, 3) for g in ("T", "P", "I")]
    assert compose_words(maps) == maps[0].after(maps[1].after(maps[2]))


def test_hyperoctahedral_rank3():
    closure = hyperoctahedral_closure(3)
    assert len(closure) == 48
    assert PolyMap.identity(3) in closure


def test_hyperoctahedral_rank2_structure():
    closure = hyperoctahedral_closure(2)
    assert PolyMap.identity(2) in closure
    # inverting every generator fixes all characters, so it collapses in the closure
    assert induced_map("IPIP", 2) == PolyMap.identity(2)
    assert all(m.then(g) in closure for m in closure for g in closure)


def test_hyperoctahedral_range():
    with pytest.raises(ValueError):
        hyperoctahedral_count(4)


@pytest.mark.parametrize("n", [3, 4])
def test_ideal_preservation(n):
    gens = ideal_generators(n).polynomials()
    reps = sample_reps(n, 100, 31)
    points = [character_point(r) for r in reps]
    for g in ("T", "P", "R", "I"):
        m = induced_map(g, n)
        for p in gens:
            q = substitute(p, m.components)
            for x in points:
                assert relative_residual(q, x) <= 1e-8


def test_gama_control():
    d = gama_phi1_det()
    m = Polynomial.var(1, 4)
    assert d == m * Fraction(1, 2)
    assert not d.is_integral()
    point = [0.0] * 15
    point[1] = 2.0
    assert d.evaluate(point) == 1
    comps, keep = gama_phi1_map()
    assert len(comps) == 14 and keep == list(range(14))
