"""Simplicial complexes on vertex sets ``0..n-1`` and Stanley-Reisner duality.

Faces and facets are bit masks. Two degenerate complexes are kept apart:

=================  ============  ==================  ==================
complex            facets        Stanley-Reisner     Alexander dual
=================  ============  ==================  ==================
void               ``[]``        unit ideal (1)      full simplex
irrelevant {∅}     ``[0]``       (x_1, ..., x_n)     boundary of simplex
full simplex       ``[all]``     zero ideal          void
=================  ============  ==================  ==================
"""
from . import kernels
from ._bits import bits, env_cap, popcount, submasks
from .errors import NotSquarefree, TooLarge, HibiError
from .monomial import MonomialIdeal, intersect, minimalize

DEFAULT_COVER_CAP = 25
DEFAULT_CM_CAP = 16


def _maximal(sets):
    out = []
    for f in sorted(set(sets), key=lambda m: (-popcount(m), m)):
        if not any(f & ~g == 0 for g in out):
            out.append(f)
    return sorted(out, key=lambda m: (popcount(m), m))


class SimplicialComplex:
    """A complex given by facets; non-maximal input faces are dropped."""

    __slots__ = ("n", "facets", "names")

    def __init__(self, n, facets, names=None):
        self.n = n
        top = 1 << n
        facets = list(facets)
        for f in facets:
            if not 0 <= f < top:
                raise HibiError(f"facet {f:#x} uses vertices outside 0..{n - 1}")
        self.facets = tuple(_maximal(facets))
        self.names = tuple(names) if names is not None else tuple(f"x{i + 1}" for i in range(n))
        if len(self.names) != n:
            raise HibiError("names must have one entry per vertex")

    @classmethod
    def from_lists(cls, n, facets, names=None):
        return cls(n, [sum(1 << v for v in f) for f in facets], names)

    @property
    def full(self):
        return (1 << self.n) - 1

    def is_void(self):
        return not self.facets

    def is_face(self, f):
        return any(f & ~g == 0 for g in self.facets)

    def faces(self):
        """All faces, sorted by size then bit pattern."""
        seen = set()
        for g in self.facets:
            seen.update(submasks(g))
        return sorted(seen, key=lambda m: (popcount(m), m))

    @property
    def dim(self):
        if not self.facets:
            return None
        return max(popcount(f) for f in self.facets) - 1

    def is_pure(self):
        return len({popcount(f) for f in self.facets}) <= 1

    def link(self, face):
        return SimplicialComplex(self.n, [g & ~face for g in self.facets if face & ~g == 0], self.names)

    def complement(self):
        """Delta^c: the complex generated by the facet complements."""
        return SimplicialComplex(self.n, [self.full & ~f for f in self.facets], self.names)

    def facet_lists(self):
        return [bits(f) for f in self.facets]

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.n == other.n and self.facets == other.facets

    def __hash__(self):
        return hash((self.n, self.facets))

    def __repr__(self):
        body = ", ".join("{" + ",".join(self.names[v] for v in bits(f)) + "}" for f in self.facets)
        return f"<{body}>" if self.facets else "<void>"


def minimal_transversals(edges, cap=None):
    """All inclusion-minimal sets meeting every edge (bit masks).

    Branch and bound: take an uncovered edge and branch on its vertices,
    excluding the earlier ones in later branches so each set is produced
    once. A leaf is kept when every chosen vertex has a private edge.
    """
    edges = _maximal_free(edges)
    if cap is not None and len(edges) > cap:
        raise TooLarge(f"{len(edges)} facets exceed the cover cap of {cap}; pass cap=None to override")
    if any(e == 0 for e in edges):
        return []
    out = []

    def minimal(T):
        for v in bits(T):
            b = 1 << v
            if not any(e & T == b for e in edges):
                return False
        return True

    def grow(T, banned):
        for e in edges:
            if not e & T:
                break
        else:
            if minimal(T):
                out.append(T)
            return
        free = e & ~banned
        for v in bits(free):
            b = 1 << v
            grow(T | b, banned)
            banned |= b

    grow(0, 0)
    return sorted(out, key=lambda m: (popcount(m), m))


def _maximal_free(edges):
    # only the minimal edges matter for transversals
    return minimalize(edges)


def stanley_reisner_ideal(delta):
    """I_Delta: generated by the minimal nonfaces."""
    nonfaces = minimal_transversals([delta.full & ~f for f in delta.facets])
    return MonomialIdeal(delta.names, nonfaces, minimal=True)


def complex_of_ideal(ideal, names=None):
    """The complex Gamma with I_Gamma = ideal."""
    n = ideal.nvars
    full = (1 << n) - 1
    facets = [full & ~t for t in minimal_transversals(ideal.gens)]
    return SimplicialComplex(n, facets, names if names is not None else ideal.names)


def alexander_dual(delta):
    """{[n] - F : F not in Delta}, via complements of the minimal nonfaces."""
    nonfaces = minimal_transversals([delta.full & ~f for f in delta.facets])
    return SimplicialComplex(delta.n, [delta.full & ~g for g in nonfaces], delta.names)


def facet_ideal(delta):
    return MonomialIdeal(delta.names, delta.facets)


def minimal_vertex_covers(delta, cap=DEFAULT_COVER_CAP):
    return minimal_transversals(delta.facets, cap=cap)


def is_unmixed(delta, cap=DEFAULT_COVER_CAP):
    return len({popcount(c) for c in minimal_vertex_covers(delta, cap)}) <= 1


def dual_star(ideal, crosscheck=False):
    """I* = I_{Gamma^vee} for I_Gamma = I: the ideal of minimal transversals of G(I).

    With ``crosscheck`` the result is recomputed as the Stanley-Reisner
    ideal of the Alexander dual of Gamma and must agree.
    """
    star = MonomialIdeal(ideal.names, minimal_transversals(ideal.gens), minimal=True)
    if crosscheck:
        other = stanley_reisner_ideal(alexander_dual(complex_of_ideal(ideal)))
        if other != star:
            raise HibiError("Alexander dual routes disagree")
    return star


def prime_ideal(names, support):
    """P_F = (x_i : i in F); the zero ideal for F empty."""
    return MonomialIdeal(names, [1 << v for v in bits(support)], minimal=True)


def intersect_all(names, ideals):
    """Intersection of a list of ideals; the unit ideal for an empty list."""
    acc = MonomialIdeal(names, [0])
    for I in ideals:
        acc = intersect(acc, I)
    return acc


def prime_decomposition(delta):
    """The primes P_{F^c}, one per facet F."""
    return [prime_ideal(delta.names, delta.full & ~f) for f in delta.facets]


def cover_complex(delta):
    """Gamma with I(Gamma) = I_Delta: its facets are the minimal nonfaces of Delta."""
    return SimplicialComplex(delta.n, stanley_reisner_ideal(delta).gens, delta.names)


def is_cohen_macaulay(delta, char2=False, cap=None):
    """Reisner: every link has vanishing reduced homology below its dimension."""
    cap = env_cap(DEFAULT_CM_CAP) if cap is None else cap
    if delta.n > cap:
        raise TooLarge(f"{delta.n} vertices exceed the cap of {cap}")
    if delta.is_void():
        raise HibiError("the void complex has no Stanley-Reisner ring to test")
    faces = delta.faces()
    face_set = set(faces)
    for F in faces:
        link = [G for G in faces if not G & F and (G | F) in face_set]
        betti = kernels.reduced_betti(link, char2)
        if any(betti[:-1]):
            return False
    return True


def squarefree_check(gens, nvars):
    """Squarefree monomials are masks; reject exponent vectors with entries above 1."""
    masks = []
    for g in gens:
        if isinstance(g, int):
            masks.append(g)
            continue
        if len(g) != nvars or any(e not in (0, 1) for e in g):
            raise NotSquarefree(f"exponent vector {tuple(g)} is not squarefree")
        masks.append(sum(1 << v for v, e in enumerate(g) if e))
    return masks
