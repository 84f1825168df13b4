"""Decision procedures for Hibi ideals of lattice segments.

Every check returns a :class:`CriterionReport` whose witnesses explain a
false verdict. ``crosscheck=True`` recomputes the answer with the monomial
arithmetic or the Betti oracle and raises on disagreement.
"""
from dataclasses import dataclass, field
from math import comb

from ._bits import bits, mask_of, popcount
from .errors import (
    BadRank,
    CrosscheckFailure,
    NotCMBipartiteBase,
    NotDistributive,
    PreconditionViolated,
    SizeMismatch,
    TooLarge,
)
from .lattice import ideal_lattice, segment_witness
from .monomial import (
    BettiTable,
    MonomialIdeal,
    graded_betti_oracle,
    has_linear_resolution,
    hibi_ideal,
    hibi_monomial,
    ideal_sum,
    intersect,
)
from .poset import Poset, is_poset_coideal, is_poset_ideal
from .simplicial import SimplicialComplex, dual_star, minimal_vertex_covers


@dataclass
class CriterionReport:
    verdict: bool
    witnesses: list
    theorem: str
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict != (not self.witnesses):
            raise CrosscheckFailure(f"{self.theorem}: verdict and witnesses disagree")

    def __bool__(self):
        return self.verdict


def _check_split(L, I, J):
    if not L.is_distributive:
        raise NotDistributive("criteria need a distributive lattice")
    order = L.order
    if not is_poset_ideal(order, I):
        raise PreconditionViolated("first set is not a poset ideal of the lattice")
    if not is_poset_coideal(order, J):
        raise PreconditionViolated("second set is not a poset coideal of the lattice")
    if I | J != L.full:
        raise PreconditionViolated("ideal and coideal do not cover the lattice")


def equality_witnesses(L, I, J):
    """Cover pairs (p, q), q a lower neighbour of p, with p outside I and q outside J."""
    return [
        (p, q)
        for p in bits(L.full & ~I)
        for q in bits(L.lower_neighbors(p) & ~J)
    ]


def check_equal(L, I, J, crosscheck=False):
    """Does H_{I & J} equal H_I & H_J?  Requires I | J = L."""
    _check_split(L, I, J)
    wit = equality_witnesses(L, I, J)
    report = CriterionReport(not wit, wit, "equal")
    if crosscheck:
        actual = intersect(hibi_ideal(L, I), hibi_ideal(L, J)) == hibi_ideal(L, I & J)
        if actual != report.verdict:
            raise CrosscheckFailure("equality criterion disagrees with ideal arithmetic")
    return report


def linear_witnesses_down(L, I, J):
    """Elements p outside I whose lower-neighbour meet lies outside J."""
    return [p for p in bits(L.full & ~I) if not (J >> L.meet_of(L.lower_neighbors(p), empty=p)) & 1]


def linear_witnesses_up(L, I, J):
    """Elements r outside J whose upper-neighbour join lies outside I."""
    return [r for r in bits(L.full & ~J) if not (I >> L.join_of(L.upper_neighbors(r), empty=r)) & 1]


def check_linear(L, I, J, crosscheck=False):
    """Does H_I & H_J have a linear resolution?

    Requires the equality criterion to hold and I & J to be non-empty. The
    meet-side and join-side conditions are both evaluated and must agree.
    """
    _check_split(L, I, J)
    if not I & J:
        raise PreconditionViolated("ideal and coideal are disjoint; use empty_case")
    if equality_witnesses(L, I, J):
        raise PreconditionViolated("H_{I&J} differs from H_I & H_J")
    down = linear_witnesses_down(L, I, J)
    up = linear_witnesses_up(L, I, J)
    if (not down) != (not up):
        raise CrosscheckFailure("meet-side and join-side linearity conditions disagree")
    report = CriterionReport(
        not down,
        [(p, L.meet_of(L.lower_neighbors(p), empty=p)) for p in down],
        "linear",
        {"join_side": [(r, L.join_of(L.upper_neighbors(r), empty=r)) for r in up]},
    )
    if crosscheck and has_linear_resolution(hibi_ideal(L, I & J)) != report.verdict:
        raise CrosscheckFailure("linearity criterion disagrees with the Betti oracle")
    return report


@dataclass
class EmptySplit:
    ideal: MonomialIdeal
    certificate: list  # (p, q, lcm(u_p, u_q)) with p in J, q in I, q a lower neighbour of p
    degree: int


def empty_case(L, I, J, crosscheck=False):
    """H_I & H_J when I | J = L and I & J is empty, with its generator certificate."""
    _check_split(L, I, J)
    if I & J:
        raise PreconditionViolated("ideal and coideal intersect")
    cert = [
        (p, q, hibi_monomial(L, p) | hibi_monomial(L, q))
        for p in bits(J)
        for q in bits(L.lower_neighbors(p) & I)
    ]
    ideal = intersect(hibi_ideal(L, I), hibi_ideal(L, J))
    from_cert = MonomialIdeal(ideal.names, [m for _, _, m in cert])
    if from_cert != ideal or len(from_cert.gens) != len(cert):
        raise CrosscheckFailure("generator certificate does not match the intersection")
    degree = L.P.n + 1
    if any(popcount(g) != degree for g in ideal.gens):
        raise CrosscheckFailure("intersection generators are not of degree rank + 1")
    if crosscheck and not has_linear_resolution(ideal):
        raise CrosscheckFailure("oracle finds no linear resolution for the empty split")
    return EmptySplit(ideal, cert, degree)


def lemma_d_plus_1_property(I, J, char2=False):
    """I & J has a (d+1)-linear resolution when I, J, I + J are d-linear and G(I & J) sits in degree d+1.

    Inputs failing the hypotheses raise PreconditionViolated.
    """
    degs = set(I.degrees()) | set(J.degrees())
    if len(degs) != 1:
        raise PreconditionViolated("I and J must be generated in one common degree")
    d = degs.pop()
    for X in (I, J, ideal_sum(I, J)):
        if not has_linear_resolution(X, char2):
            raise PreconditionViolated("I, J and I + J must have linear resolutions")
    meet = intersect(I, J)
    if meet.is_zero() or meet.degrees() != [d + 1]:
        raise PreconditionViolated("generators of the intersection are not all of degree d + 1")
    return has_linear_resolution(meet, char2)


def boolean_band_betti(r):
    """Closed-form Betti table of H_{B_r minus bottom and top}."""
    if r < 2:
        raise BadRank("need rank at least 2")
    graded = {(i, r + i): comb(r, i) * (2 ** (r - i) - 2) for i in range(r - 1)}
    graded[(r - 1, 2 * r)] = 1
    return BettiTable(graded)


def band_is_linear(L):
    """Linearity of H_L without its bottom and top (|L| > 2)."""
    return has_linear_resolution(hibi_ideal(L, L.full & ~(1 << L.bottom) & ~(1 << L.top)))


# -- bipartite graphs and unmixed complexes ----------------------------------


@dataclass
class BipartiteGraph:
    """Edges (i, j) stand for {x_i, y_j}."""

    n: int
    edges: frozenset
    x_names: tuple = None
    y_names: tuple = None

    def __post_init__(self):
        self.edges = frozenset(self.edges)
        for i, j in self.edges:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise SizeMismatch(f"edge {(i, j)} outside the two vertex classes of size {self.n}")

    def isolated(self):
        xs = {i for i, _ in self.edges}
        ys = {j for _, j in self.edges}
        return [("x", i) for i in range(self.n) if i not in xs] + [("y", j) for j in range(self.n) if j not in ys]


def recognize_cm_bipartite(G, cap=10):
    """(P, match) with edge {x_i, y_match[j]} iff i <= j in P, or None.

    Perfect matchings are enumerated with antisymmetry pruning; transitivity
    is checked on complete matchings.
    """
    n = G.n
    if n > cap:
        raise TooLarge(f"recognition is capped at {cap} vertices per side")
    adj = [0] * n
    for i, j in G.edges:
        adj[i] |= 1 << j
    match = [-1] * n
    used = 0

    def transitive():
        rel = [mask_of(j for j in range(n) if (adj[i] >> match[j]) & 1) for i in range(n)]
        return all(rel[j] & ~rel[i] == 0 for i in range(n) for j in bits(rel[i]))

    def search(i):
        nonlocal used
        if i == n:
            return transitive()
        for y in bits(adj[i] & ~used):
            # antisymmetry against already matched k: not both x_i~y_match[k] and x_k~y
            if any((adj[i] >> match[k]) & 1 and (adj[k] >> y) & 1 for k in range(i)):
                continue
            match[i] = y
            used |= 1 << y
            if search(i + 1):
                return True
            used &= ~(1 << y)
            match[i] = -1
        return False

    if not search(0):
        return None
    rel = [(i, j) for i in range(n) for j in range(n) if i != j and (adj[i] >> match[j]) & 1]
    P = Poset.from_relations(n, rel, G.x_names)
    return P, tuple(match)


@dataclass
class UnmixedResult:
    segment: int  # mask of lattice elements, or None
    lattice: object
    poset: Poset
    x_vertex: tuple  # x_vertex[p] = vertex of Delta playing x_p
    y_vertex: tuple
    witness: tuple = None

    def vertex_generators(self):
        """The generators of H_S written as vertex masks of Delta."""
        if self.segment is None:
            return None
        out = []
        for q in bits(self.segment):
            lab = self.lattice.labels[q]
            m = 0
            for p in range(self.poset.n):
                m |= 1 << (self.x_vertex[p] if (lab >> p) & 1 else self.y_vertex[p])
            out.append(m)
        return sorted(out)


def mixed_graph(delta, left, right):
    """The facets meeting both vertex classes, as a bipartite graph (or raise)."""
    lm, rm = mask_of(left), mask_of(right)
    pos_l = {v: k for k, v in enumerate(left)}
    pos_r = {v: k for k, v in enumerate(right)}
    edges = set()
    for f in delta.facets:
        if f & lm and f & rm:
            if popcount(f) != 2:
                raise NotCMBipartiteBase("a facet meeting both classes is not an edge")
            a, b = bits(f)
            i, j = (pos_l[a], pos_r[b]) if a in pos_l else (pos_l[b], pos_r[a])
            edges.add((i, j))
    G = BipartiteGraph(len(left), edges)
    if G.isolated():
        raise NotCMBipartiteBase(f"isolated vertices {G.isolated()}")
    return G


def theorem_unmixed(delta, left, right, base=None):
    """The segment S of L(G) with H*_S = I(Delta), or a result with a witness.

    ``left``/``right`` list the vertices of the two classes. The base
    poset is recognised from the mixed facets; pass ``base=(P, x_vertex,
    y_vertex)`` to fix it instead. Witnesses: ("cover", C) for a minimal
    cover of the wrong size or shape, ("interval", (xi, gamma, delta)) for a
    violated interval, ("dual", S) if H*_S differs from I(Delta).
    """
    if len(left) != len(right):
        raise SizeMismatch("vertex classes have different sizes")
    if set(left) & set(right) or len(set(left) | set(right)) != delta.n:
        raise SizeMismatch("vertex classes must partition the vertex set")
    n = len(left)
    if base is None:
        G = mixed_graph(delta, left, right)
        found = recognize_cm_bipartite(G)
        if found is None:
            raise NotCMBipartiteBase("mixed facets do not form a Cohen-Macaulay bipartite graph")
        P, match = found
        xv = tuple(left)
        yv = tuple(right[match[p]] for p in range(n))
    else:
        P, xv, yv = base
        xv, yv = tuple(xv), tuple(yv)
    L = ideal_lattice(P)
    result = UnmixedResult(None, L, L.P, xv, yv)
    S = 0
    for C in minimal_vertex_covers(delta, cap=None):
        A = mask_of(p for p in range(n) if (C >> xv[p]) & 1)
        B = mask_of(p for p in range(n) if (C >> yv[p]) & 1)
        if popcount(C) != n or B != L.P.full & ~A or A not in L.index:
            result.witness = ("cover", C)
            return result
        S |= 1 << L.index[A]
    if not S:
        result.witness = ("cover", None)
        return result
    result.segment = S
    star = dual_star(MonomialIdeal(delta.names, result.vertex_generators()))
    if sorted(star.gens) != sorted(delta.facets):
        result.segment = None
        result.witness = ("dual", S)
        return result
    bad = segment_witness(L, S)
    if bad is not None:
        result.segment = None
        result.witness = ("interval", bad)
    return result


def complex_from_segment(L, S):
    """Delta with I(Delta) = H*_S, on vertices x_p = p and y_p = n + p."""
    H = hibi_ideal(L, S)
    star = dual_star(H)
    return SimplicialComplex(H.nvars, star.gens, H.names)


def graph_of_poset(P):
    """The bipartite graph with {x_i, y_j} an edge iff i <= j."""
    return BipartiteGraph(P.n, {(i, j) for i in range(P.n) for j in range(P.n) if P.leq(i, j)})
