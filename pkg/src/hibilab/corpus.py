"""Small-instance universes used by the sweeps and the test suite."""
from itertools import combinations
import random

from .lattice import ideal_lattice, lattice_coideals, lattice_ideals
from .poset import Poset, canonical_form
from .simplicial import SimplicialComplex


def posets_up_to(max_n=4, min_n=1):
    """One poset per isomorphism class, min_n <= |P| <= max_n.

    Every poset has a natural labelling, so relation sets are drawn from
    pairs i < j and kept when transitive.
    """
    out = []
    for n in range(min_n, max_n + 1):
        pairs = list(combinations(range(n), 2))
        seen = set()
        for bitset in range(1 << len(pairs)):
            rel = {pairs[k] for k in range(len(pairs)) if (bitset >> k) & 1}
            if any((a, c) not in rel for a, b in rel for b2, c in rel if b == b2):
                continue
            P = Poset.from_relations(n, rel, [chr(ord("a") + i) for i in range(n)])
            key = canonical_form(P)
            if key not in seen:
                seen.add(key)
                out.append(P)
    return out


def corpus_lattices(max_n=4):
    """(P, J(P)) for every poset class with 1..max_n elements."""
    return [(P, ideal_lattice(P)) for P in posets_up_to(max_n)]


def splits(L):
    """All (ideal, coideal) pairs of L with ideal | coideal = L."""
    ideals = lattice_ideals(L)
    coideals = lattice_coideals(L)
    return [(I, J) for I in ideals for J in coideals if I | J == L.full]


def segments(L):
    """All non-empty segments, each once, in increasing bit order."""
    found = {I & J for I in lattice_ideals(L) for J in lattice_coideals(L)}
    found.discard(0)
    return sorted(found)


def random_complexes(count=200, max_vertices=8, seed=0):
    """Deterministic random non-void complexes on 1..max_vertices vertices.

    Facets avoid the full vertex set most of the time so that roughly half
    the complexes are Cohen-Macaulay; one in ten draws allows any facet size,
    which brings in simplices and the irrelevant complex.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        wild = rng.random() < 0.1
        n = rng.randint(1, max_vertices) if wild else rng.randint(2, max_vertices)
        k = rng.randint(1, 8) if wild else rng.randint(2, 8)
        facets = []
        for _ in range(k):
            size = rng.randint(0, n) if wild else rng.randint(1, n - 1)
            facets.append(sum(1 << v for v in rng.sample(range(n), size)))
        out.append(SimplicialComplex(n, facets))
    return out
