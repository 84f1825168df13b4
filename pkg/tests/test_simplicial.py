from hypothesis import given, settings, strategies as st
import pytest

import oracles
from conftest import figure_lattice, without_ends
from hibilab._bits import bits, mask_of, popcount
from hibilab.analysis import complex_from_segment
from hibilab.corpus import random_complexes
from hibilab.errors import HibiError, NotSquarefree, TooLarge
from hibilab.lattice import boolean_lattice, ideal_lattice
from hibilab.monomial import MonomialIdeal, has_linear_quotients, has_linear_resolution, hibi_ideal, ideal_sum, intersect
from hibilab.poset import chain
from hibilab.simplicial import (
    SimplicialComplex,
    alexander_dual,
    complex_of_ideal,
    cover_complex,
    dual_star,
    facet_ideal,
    intersect_all,
    is_cohen_macaulay,
    is_unmixed,
    minimal_transversals,
    minimal_vertex_covers,
    prime_decomposition,
    squarefree_check,
    stanley_reisner_ideal,
)

C = SimplicialComplex.from_lists


def four_cycle():
    return C(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def fig_delta():
    L = figure_lattice()
    return complex_from_segment(L, without_ends(L))


def fig_delta_prime():
    B = boolean_lattice(3)
    return complex_from_segment(B, without_ends(B))


def test_stanley_reisner_examples():
    assert stanley_reisner_ideal(C(3, [(0, 1, 2)])).is_zero()
    boundary = C(3, [(0, 1), (1, 2), (0, 2)])
    assert stanley_reisner_ideal(boundary).formatted() == ["x1*x2*x3"]
    assert complex_of_ideal(stanley_reisner_ideal(boundary)) == boundary


def test_gamma_of_figure_segment():
    # Gamma with I_Gamma = I(Delta): its facets complement the minimal vertex covers
    # of Delta, and those covers are the supports of the generators of H_S
    L = figure_lattice()
    H = hibi_ideal(L, without_ends(L))
    delta = fig_delta()
    gamma = complex_of_ideal(facet_ideal(delta))
    covers = minimal_vertex_covers(delta)
    assert sorted(gamma.facets) == sorted(delta.full & ~c for c in covers)
    assert sorted(covers) == sorted(H.gens)
    assert sorted(complex_of_ideal(H).facets) == sorted(delta.full & ~f for f in delta.facets)


def test_degenerate_conventions():
    void = SimplicialComplex(3, [])
    irrelevant = SimplicialComplex(3, [0])
    full = C(3, [(0, 1, 2)])
    assert void.is_void() and not irrelevant.is_void() and void != irrelevant
    assert stanley_reisner_ideal(void).is_unit()
    assert stanley_reisner_ideal(irrelevant).gens == (1, 2, 4)
    assert alexander_dual(void) == full
    assert alexander_dual(full) == void
    boundary = C(3, [(0, 1), (1, 2), (0, 2)])
    assert alexander_dual(boundary) == irrelevant
    assert alexander_dual(irrelevant) == boundary
    with pytest.raises(HibiError):
        is_cohen_macaulay(void)


def test_alexander_dual_examples():
    for d in (four_cycle(), fig_delta(), fig_delta_prime()):
        assert alexander_dual(alexander_dual(d)) == d
        assert stanley_reisner_ideal(alexander_dual(d)) == facet_ideal(d.complement())


def test_facet_ideal():
    assert facet_ideal(C(2, [(0, 1)])).formatted() == ["x1*x2"]
    assert sorted(facet_ideal(four_cycle()).formatted()) == ["x1*x2", "x1*x4", "x2*x3", "x3*x4"]
    B = boolean_lattice(3)
    assert facet_ideal(fig_delta_prime()) == dual_star(hibi_ideal(B, without_ends(B)))


def test_vertex_covers(frozen):
    assert minimal_vertex_covers(C(2, [(0, 1)])) == [1, 2]
    assert [bits(c) for c in minimal_vertex_covers(four_cycle())] == frozen["covers"]["four_cycle"]
    path = C(3, [(0, 1), (1, 2)])
    assert [bits(c) for c in minimal_vertex_covers(path)] == frozen["covers"]["path3"]
    assert not is_unmixed(path) and is_unmixed(four_cycle())
    assert {popcount(c) for c in minimal_vertex_covers(fig_delta())} == {4}
    assert is_unmixed(fig_delta_prime())
    many = SimplicialComplex(30, [1 << i for i in range(26)])
    with pytest.raises(TooLarge):
        minimal_vertex_covers(many)
    assert len(minimal_vertex_covers(many, cap=None)) == 1


def test_dual_star_examples():
    I = MonomialIdeal(["x1", "x2"], [0b11])
    assert dual_star(I, crosscheck=True).gens == (0b01, 0b10)
    assert dual_star(dual_star(I)) == I
    # 2-chain poset graph: edges x1y1, x2y2, x1y2
    P = chain(2)
    L = ideal_lattice(P)
    H = hibi_ideal(L)
    x1, x2, y1, y2 = 1, 2, 4, 8
    graph = MonomialIdeal(H.names, [x1 | y1, x2 | y2, x1 | y2])
    assert dual_star(H, crosscheck=True) == graph


def test_dual_star_intersection():
    names = [f"x{i}" for i in range(5)]
    I = MonomialIdeal(names, [0b00011, 0b01100])
    J = MonomialIdeal(names, [0b00110, 0b10001, 0b11000])
    assert dual_star(intersect(I, J)) == ideal_sum(dual_star(I), dual_star(J))


def test_cohen_macaulay_examples():
    assert is_cohen_macaulay(C(3, [(0, 1, 2)]))
    assert not is_cohen_macaulay(C(4, [(0, 1), (2, 3)]))
    graph = SimplicialComplex(4, [0b0101, 0b1010, 0b1001])
    assert is_cohen_macaulay(graph)
    with pytest.raises(TooLarge):
        is_cohen_macaulay(C(17, [(0, 1)]))


def test_cohen_macaulay_char2():
    rp2 = C(6, [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1), (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)])
    assert is_cohen_macaulay(rp2) and not is_cohen_macaulay(rp2, char2=True)


def test_squarefree_check():
    assert squarefree_check([(1, 0, 1), 0b10], 3) == [0b101, 0b10]
    with pytest.raises(NotSquarefree):
        squarefree_check([(2, 0, 0)], 3)


def test_frozen_complexes(frozen):
    for case in frozen["complexes"]:
        d = C(case["n"], case["facets"])
        assert is_cohen_macaulay(d) == case["cm"]
        assert [bits(g) for g in stanley_reisner_ideal(d).gens] == sorted(case["nonfaces"], key=lambda s: (len(s), mask_of(s)))
        assert sorted(alexander_dual(d).facet_lists()) == case["dual_facets"]


def test_duality_on_corpus():
    for d in random_complexes(120, 7, seed=5):
        if d.is_void():
            continue
        star = stanley_reisner_ideal(alexander_dual(d))
        cm = is_cohen_macaulay(d)
        assert cm == has_linear_resolution(star)
        if star.is_equigenerated() and len(star.gens) <= 10 and has_linear_quotients(star) is not None:
            assert cm
        assert stanley_reisner_ideal(d) == intersect_all(d.names, prime_decomposition(d))
        assert star == facet_ideal(d.complement())
        assert sorted(cover_complex(d).facets) == sorted(stanley_reisner_ideal(d).gens)


facet_lists = st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=5))
)


@settings(max_examples=100, deadline=None)
@given(facet_lists)
def test_against_brute_force(data):
    n, facets = data
    d = SimplicialComplex(n, facets)
    fs = [frozenset(bits(f)) for f in d.facets]
    assert {frozenset(bits(g)) for g in stanley_reisner_ideal(d).gens} == set(oracles.minimal_nonfaces(n, fs))
    assert {frozenset(bits(c)) for c in minimal_vertex_covers(d)} == set(oracles.minimal_covers(n, [set(f) for f in fs]))
    assert complex_of_ideal(stanley_reisner_ideal(d)) == d
    assert alexander_dual(alexander_dual(d)) == d
    assert is_cohen_macaulay(d) == oracles.reisner_cm(n, fs)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(1, 127), min_size=1, max_size=7))
def test_transversals_minimal_and_complete(edges):
    T = minimal_transversals(edges)
    for t in T:
        assert all(e & t for e in edges)
        assert all(not all(e & (t & ~(1 << v)) for e in edges) for v in bits(t))
    brute = [m for m in range(128) if all(e & m for e in edges) and not any(s != m and all(e & s for e in edges) for s in _subs(m))]
    assert sorted(T) == sorted(brute)


def _subs(m):
    s = m
    while s:
        s = (s - 1) & m
        yield s
