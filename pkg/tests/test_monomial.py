from hypothesis import given, settings, strategies as st
import pytest

import oracles
from conftest import figure_lattice, table_of, without_ends
from test_poset import posets
from hibilab._bits import bits, popcount
from hibilab.errors import GroundSetMismatch, NotEquigenerated, SearchLimitExceeded, TooManyGenerators
from hibilab.lattice import boolean_lattice, dual_lattice, ideal_lattice, is_upper_semimodular, lattice_ideals, Lattice
from hibilab.monomial import (
    BettiTable,
    MonomialIdeal,
    check_linear_quotients,
    divides,
    gcd,
    graded_betti_oracle,
    has_linear_quotients,
    has_linear_relations,
    has_linear_resolution,
    hibi_ideal,
    hibi_monomial,
    ideal_sum,
    intersect,
    lcm,
    sigma,
)
from hibilab.resolution import lcm_partner


def fig_S():
    L = figure_lattice()
    return hibi_ideal(L, without_ends(L), "abcd", "uvwx")


def fig_S_prime():
    B = boolean_lattice(3)
    return hibi_ideal(B, without_ends(B), "abc", "uvw")


def test_hibi_examples():
    B = boolean_lattice(3)
    H = hibi_ideal(B, 1 << B.index[0b001], ["x1", "x2", "x3"], ["y1", "y2", "y3"])
    assert H.formatted() == ["x1*y2*y3"]
    assert sorted(fig_S().formatted()) == sorted(["avwx", "buwx", "cuvx", "abwx", "acvx", "bcux", "abcx", "bcdu"])
    assert sorted(fig_S_prime().formatted()) == sorted(["avw", "buw", "cuv", "abw", "acv", "bcu"])
    assert hibi_ideal(B, 0).is_zero()
    assert set(fig_S().degrees()) == {4}


def test_lcm_gcd_divides():
    u = 0b1011
    assert lcm(u, u) == u and gcd(u, u) == u
    x1y2, x2y2 = 0b1001, 0b1010
    assert lcm(x1y2, x2y2) == 0b1011
    assert divides(x1y2, 0b1011) and not divides(0b0110, 0b1011)
    B = boolean_lattice(3)
    top = B.top
    r, T = lcm_partner(B, top, B.lower_neighbors(top))
    assert r == B.bottom and T == B.upper_neighbors(B.bottom)
    left = hibi_monomial(B, top)
    for q in bits(B.lower_neighbors(top)):
        left |= hibi_monomial(B, q)
    right = hibi_monomial(B, r)
    for s in bits(T):
        right |= hibi_monomial(B, s)
    assert left == right


def test_intersect_and_sum():
    B = boolean_lattice(3)
    H = hibi_ideal(B)
    assert intersect(H, H) == H and ideal_sum(H, H) == H
    I = B.full & ~(1 << B.top)
    J = B.full & ~(1 << B.bottom)
    assert intersect(hibi_ideal(B, I), hibi_ideal(B, J)) == hibi_ideal(B, I & J)
    B2 = boolean_lattice(2)
    meet = intersect(hibi_ideal(B2, 1 << B2.bottom), hibi_ideal(B2, 1 << B2.top))
    assert meet.gens == (0b1111,)
    with pytest.raises(GroundSetMismatch):
        intersect(H, hibi_ideal(B2))


def test_minimal_generators_sorted():
    I = MonomialIdeal("abc", [0b111, 0b011, 0b001, 0b110])
    assert I.gens == (0b001, 0b110)
    assert I.contains(0b101) and not I.contains(0b010)


def test_linear_quotients():
    single = MonomialIdeal("ab", [0b11])
    assert has_linear_quotients(single) == [0b11]
    B2 = boolean_lattice(2)
    order = has_linear_quotients(hibi_ideal(B2))
    assert order is not None and check_linear_quotients(order)
    assert has_linear_quotients(fig_S_prime()) is None
    assert check_linear_quotients(has_linear_quotients(fig_S()))
    with pytest.raises(NotEquigenerated):
        has_linear_quotients(MonomialIdeal("abc", [0b1, 0b110]))


def test_linear_quotients_cap():
    # a path with a disjoint edge: many admissible prefixes, no full order
    names = [f"v{i}" for i in range(12)]
    gens = [0b11 << i for i in range(8)] + [0b11 << 10]
    with pytest.raises(SearchLimitExceeded):
        has_linear_quotients(MonomialIdeal(names, gens), cap=4)
    assert has_linear_quotients(MonomialIdeal(names, gens)) is None


def test_oracle_examples(frozen):
    principal = MonomialIdeal("abc", [0b101])
    assert graded_betti_oracle(principal).graded == {(0, 2): 1}
    B3 = boolean_lattice(3)
    t = graded_betti_oracle(hibi_ideal(B3))
    assert t.totals() == [8, 12, 6, 1]
    assert t.graded == table_of(frozen["betti"]["B3"])
    assert graded_betti_oracle(fig_S()).graded == table_of(frozen["betti"]["figure_S"])
    assert all(j == i + 4 for i, j in graded_betti_oracle(fig_S()).graded)
    with pytest.raises(TooManyGenerators):
        graded_betti_oracle(hibi_ideal(boolean_lattice(5)))


def test_oracle_frozen_random(frozen):
    for case in frozen["random_ideals"]:
        names = [f"v{i}" for i in range(case["nvars"])]
        I = MonomialIdeal(names, [sum(1 << v for v in g) for g in case["gens"]])
        expect = table_of(case["betti"])
        assert graded_betti_oracle(I).graded == expect
        assert graded_betti_oracle(I, method="taylor").graded == expect


def test_linear_resolution_examples():
    assert not has_linear_resolution(fig_S_prime())
    assert has_linear_resolution(fig_S())
    L = figure_lattice()
    for I in lattice_ideals(L):
        assert has_linear_resolution(hibi_ideal(L, I))
    B3 = boolean_lattice(3)
    assert not has_linear_resolution(hibi_ideal(B3, without_ends(B3)))
    assert has_linear_resolution(MonomialIdeal("ab", []))


def test_betti_table_output():
    t = BettiTable({(0, 3): 6, (1, 4): 6, (2, 6): 1})
    assert t.records() == [{"i": 0, "j": 3, "beta": 6}, {"i": 1, "j": 4, "beta": 6}, {"i": 2, "j": 6, "beta": 1}]
    assert t.format().splitlines() == [
        "       0 1 2",
        "total: 6 6 1",
        "    3: 6 6 .",
        "    4: . . 1",
    ]
    assert not t.is_linear() and BettiTable({(0, 2): 1, (1, 3): 2}).is_linear()


def test_char2_mode():
    # the minimal triangulation of RP^2 has a Stanley-Reisner ideal with
    # characteristic-dependent Betti numbers
    facets = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1), (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    from hibilab.simplicial import SimplicialComplex, stanley_reisner_ideal

    I = stanley_reisner_ideal(SimplicialComplex.from_lists(6, facets))
    q = graded_betti_oracle(I)
    two = graded_betti_oracle(I, char2=True)
    assert q != two
    assert two.graded == {k: v for k, v in graded_betti_oracle(I, char2=True, method="taylor").graded.items()}


def corpus_semimodular():
    from hibilab.corpus import posets_up_to
    from hibilab.poset import Poset

    # distributive lattices plus M_3 and other small modular, non-distributive lattices
    out = [ideal_lattice(p) for p in posets_up_to(3)]
    for k in (3, 4):
        covers = [(0, i) for i in range(1, k + 1)] + [(i, k + 1) for i in range(1, k + 1)]
        out.append(Lattice(Poset(k + 2, covers)))
    return out


def test_main_equivalence_on_semimodular():
    for L in corpus_semimodular():
        assert is_upper_semimodular(L)
        H = hibi_ideal(L)
        table = graded_betti_oracle(H)
        lq = has_linear_quotients(H) is not None
        lin = has_linear_resolution(H, table=table)
        rel = has_linear_relations(H, table=table)
        assert L.is_distributive == lq == lin == rel


def test_sigma_and_dual():
    for p in [figure_lattice().P, boolean_lattice(3).P]:
        L = ideal_lattice(p)
        D, iso = dual_lattice(L)
        HD = MonomialIdeal(hibi_ideal(L).names, [(iso[q]) | ((L.P.full & ~iso[q]) << L.P.n) for q in range(L.n)])
        assert sigma(HD) == hibi_ideal(L)
        assert graded_betti_oracle(HD) == graded_betti_oracle(hibi_ideal(L))


ideals_strategy = st.lists(st.integers(1, 63), min_size=1, max_size=7)


@settings(max_examples=60, deadline=None)
@given(ideals_strategy, st.randoms(use_true_random=False))
def test_oracle_properties(gens, rnd):
    names = [f"v{i}" for i in range(6)]
    I = MonomialIdeal(names, gens)
    t = graded_betti_oracle(I)
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert graded_betti_oracle(MonomialIdeal(names, shuffled)) == t
    by_degree = {}
    for g in I.gens:
        by_degree[popcount(g)] = by_degree.get(popcount(g), 0) + 1
    assert {j: b for (i, j), b in t.graded.items() if i == 0} == by_degree
    brute = oracles.taylor_betti([frozenset(bits(g)) for g in I.gens])
    assert t.graded == brute


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 31), min_size=1, max_size=6).filter(lambda g: len({popcount(x) for x in g}) == 1))
def test_linear_quotients_imply_linear(gens):
    I = MonomialIdeal([f"v{i}" for i in range(5)], gens)
    order = has_linear_quotients(I)
    if order is not None:
        assert check_linear_quotients(order)
        assert has_linear_resolution(I)


@settings(max_examples=30, deadline=None)
@given(posets(max_n=4))
def test_distributive_hibi_has_linear_quotients(p):
    L = ideal_lattice(p)
    H = hibi_ideal(L)
    assert has_linear_quotients(H) is not None
    assert has_linear_resolution(H)
