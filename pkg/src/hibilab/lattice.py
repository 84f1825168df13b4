"""Finite lattices, the canonical embedding into J(P), duality and segments.

Every lattice carries its join-irreducible subposet ``P`` and the labels
``ell(q) = {p in P : p <= q}`` as bit masks over ``P``. Downstream code
(Hibi ideals, resolutions) only looks at labels.
"""
from collections import namedtuple
from functools import cached_property

from ._bits import bits, mask_of, popcount
from .errors import BadRange, HibiError, NotALattice, NotASegment, NotDistributive, TooLarge
from .poset import Poset, antichain, down_closure, heights, poset_ideals, rank_function, up_closure

Band = namedtuple("Band", "segment ideal coideal")


class Lattice:
    """A finite lattice.

    Build one from an order with ``Lattice(order)`` (join/meet tables are
    computed and checked) or as J(P) with :func:`ideal_lattice`.
    """

    def __init__(self, order, irreducibles=None, names=None):
        n = order.n
        if n == 0:
            raise NotALattice(None, None, "elements at all")
        self._order = order
        self.n = n
        self.names = tuple(names) if names is not None else order.names
        by_down = {order.down[i]: i for i in range(n)}
        by_up = {order.up[i]: i for i in range(n)}
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                m = by_down.get(_greatest(order.down, order.down[a] & order.down[b]))
                j = by_up.get(_least(order.up, order.up[a] & order.up[b]))
                if m is None:
                    raise NotALattice(a, b, "meet")
                if j is None:
                    raise NotALattice(a, b, "join")
                meet[a][b] = meet[b][a] = m
                join[a][b] = join[b][a] = j
        self._meet = meet
        self._join = join
        self.bottom = meet[0][0]
        for a in range(n):
            self.bottom = meet[self.bottom][a]
        self.top = 0
        for a in range(n):
            self.top = join[self.top][a]

        irr = [i for i in range(n) if popcount(order.lower[i]) == 1]
        if irreducibles is None:
            irreducibles = irr
        elif sorted(irreducibles) != irr:
            raise HibiError("given irreducible ordering does not list the join-irreducibles")
        self.irreducibles = tuple(irreducibles)
        rel = [
            (i, j)
            for i, a in enumerate(self.irreducibles)
            for j, b in enumerate(self.irreducibles)
            if a != b and order.leq(a, b)
        ]
        self.P = Poset.from_relations(len(self.irreducibles), rel, [order.name(a) for a in self.irreducibles])
        self.labels = tuple(
            mask_of(k for k, a in enumerate(self.irreducibles) if order.leq(a, q)) for q in range(n)
        )
        self.index = {lab: q for q, lab in enumerate(self.labels)}
        self._by_label = False

    @classmethod
    def _from_ideals(cls, P, ideals, names):
        self = cls.__new__(cls)
        self._order = None
        self.n = len(ideals)
        self.names = tuple(names)
        self.P = P
        self.labels = tuple(ideals)
        self.index = {lab: q for q, lab in enumerate(self.labels)}
        self.irreducibles = tuple(self.index[P.down[p]] for p in range(P.n))
        self.bottom = self.index[0]
        self.top = self.index[P.full]
        self._by_label = True
        self._meet = self._join = None
        return self

    # -- order structure ---------------------------------------------------

    @property
    def order(self):
        if self._order is None:
            covers = []
            for q in range(self.n):
                lab = self.labels[q]
                for p in bits(self.P.full & ~lab):
                    if self.P.down[p] & ~(1 << p) & ~lab == 0:
                        covers.append((q, self.index[lab | (1 << p)]))
            self._order = Poset(self.n, covers, self.names)
        return self._order

    def name(self, q):
        return self.names[q] if self.names is not None else str(q)

    @property
    def full(self):
        return (1 << self.n) - 1

    @property
    def rank_P(self):
        return self.P.n

    def leq(self, a, b):
        if self._by_label:
            return self.labels[a] & ~self.labels[b] == 0
        return self._order.leq(a, b)

    def meet(self, a, b):
        if self._by_label:
            return self.index[self.labels[a] & self.labels[b]]
        return self._meet[a][b]

    def join(self, a, b):
        if self._by_label:
            return self.index[self.labels[a] | self.labels[b]]
        return self._join[a][b]

    def meet_of(self, members, empty=None):
        """Meet of a mask of elements; ``empty`` is returned for the empty set."""
        it = bits(members)
        if not it:
            return self.top if empty is None else empty
        acc = it[0]
        for q in it[1:]:
            acc = self.meet(acc, q)
        return acc

    def join_of(self, members, empty=None):
        it = bits(members)
        if not it:
            return self.bottom if empty is None else empty
        acc = it[0]
        for q in it[1:]:
            acc = self.join(acc, q)
        return acc

    def lower_neighbors(self, q):
        if self._by_label:
            lab = self.labels[q]
            return mask_of(
                self.index[lab & ~(1 << p)] for p in bits(lab) if self.P.up[p] & lab == 1 << p
            )
        return self._order.lower[q]

    def upper_neighbors(self, q):
        if self._by_label:
            lab = self.labels[q]
            return mask_of(
                self.index[lab | (1 << p)]
                for p in bits(self.P.full & ~lab)
                if self.P.down[p] & ~(1 << p) & ~lab == 0
            )
        return self._order.upper[q]

    def down_set(self, q):
        if self._by_label:
            lab = self.labels[q]
            return mask_of(e for e in range(self.n) if self.labels[e] & ~lab == 0)
        return self._order.down[q]

    def up_set(self, q):
        if self._by_label:
            lab = self.labels[q]
            return mask_of(e for e in range(self.n) if lab & ~self.labels[e] == 0)
        return self._order.up[q]

    def degree(self, q):
        return popcount(self.labels[q])

    @cached_property
    def ranks(self):
        """Rank of each element, or None if the lattice is not graded."""
        if self._by_label:
            return tuple(popcount(lab) for lab in self.labels)
        r = rank_function(self._order)
        return tuple(r) if r is not None else None

    @property
    def rank(self):
        if self.ranks is None:
            return None
        return self.ranks[self.top]

    @cached_property
    def is_distributive(self):
        return is_distributive(self)

    def __repr__(self):
        return f"<Lattice |L|={self.n} |P|={self.P.n}>"


def _greatest(down, members):
    """The element whose down-set equals ``members`` if it exists, else -1 mask."""
    for i in bits(members):
        if down[i] == members:
            return members
    return -1


def _least(up, members):
    for i in bits(members):
        if up[i] == members:
            return members
    return -1


def build_lattice(order, names=None):
    return Lattice(order, names=names)


def ideal_name(P, ideal):
    if ideal == 0:
        return "∅"
    parts = [P.name(p) for p in bits(ideal)]
    if all(len(s) == 1 for s in parts):
        return "".join(parts)
    return "{" + ",".join(parts) + "}"


def ideal_lattice(P):
    """J(P): the poset ideals of ``P`` ordered by inclusion.

    Elements are indexed in :func:`poset_ideals` order and the label of an
    element is the ideal itself, so ``labels`` are masks over ``P``.
    """
    ideals = poset_ideals(P)
    if P.names is None:
        P = Poset(P.n, P.covers, [chr(ord("a") + i) if P.n <= 26 else f"p{i}" for i in range(P.n)])
    return Lattice._from_ideals(P, ideals, [ideal_name(P, I) for I in ideals])


def boolean_lattice(r, names=None):
    if r < 0:
        raise BadRange("rank must be non-negative")
    if r > 20:
        raise TooLarge("boolean_lattice is capped at rank 20")
    return ideal_lattice(antichain(r, names))


def birkhoff(L):
    """(P, ell): the join-irreducible subposet and the canonical embedding."""
    return L.P, L.labels


def is_distributive(L, crosscheck=False):
    """True iff the canonical embedding is onto J(P).

    ell is always injective, so it suffices to compare |L| with the number
    of poset ideals of P. With ``crosscheck`` the distributive law is also
    tested on all triples and must agree.
    """
    from .poset import count_antichains

    verdict = count_antichains(L.P) == L.n
    if crosscheck:
        law = all(
            L.meet(a, L.join(b, c)) == L.join(L.meet(a, b), L.meet(a, c))
            for a in range(L.n)
            for b in range(L.n)
            for c in range(L.n)
        )
        if law != verdict:
            raise HibiError("distributivity tests disagree")
    return verdict


def is_upper_semimodular(L):
    """Cover condition: if a, b cover a^b then a v b covers a and b.

    For graded lattices the rank inequality is also evaluated and the two
    must agree.
    """
    order = L.order
    covered = lambda lo, hi: (order.lower[hi] >> lo) & 1
    cover_cond = True
    for a in range(L.n):
        for b in range(a + 1, L.n):
            m = L.meet(a, b)
            if covered(m, a) and covered(m, b):
                j = L.join(a, b)
                if not (covered(a, j) and covered(b, j)):
                    cover_cond = False
                    break
        if not cover_cond:
            break
    ranks = rank_function(order)
    if ranks is not None:
        rank_cond = all(
            ranks[a] + ranks[b] >= ranks[L.meet(a, b)] + ranks[L.join(a, b)]
            for a in range(L.n)
            for b in range(L.n)
        )
        if rank_cond != cover_cond:
            raise HibiError("semimodularity conditions disagree")
    return cover_cond


def dual_lattice(L):
    """The dual lattice with labels ``P \\ ell(q)`` over the dual of ``P``.

    Returns ``(Ldual, iso)`` where ``iso[q]`` is the ideal of the dual poset
    that ``q`` maps to. Element ids are shared with ``L``.
    """
    if not L.is_distributive:
        raise NotDistributive("dual labelling needs a distributive lattice")
    order = L.order
    dual_order = Poset(L.n, [(b, a) for a, b in order.covers], L.names)
    full = L.P.full
    # the meet-irreducible attached to p: the largest element whose label misses p
    irr = []
    for p in range(L.P.n):
        best = None
        for q in range(L.n):
            if not (L.labels[q] >> p) & 1 and (best is None or L.leq(best, q)):
                best = q
        irr.append(best)
    D = Lattice(dual_order, irreducibles=irr, names=L.names)
    iso = tuple(full & ~L.labels[q] for q in range(L.n))
    if D.labels != iso:
        raise HibiError("dual labelling is not the complement labelling")
    return D, iso


def at_most_two_lower_neighbors(L):
    return all(popcount(L.lower_neighbors(q)) <= 2 for q in range(L.n))


def is_boolean(L):
    return L.is_distributive and not L.P.covers


def is_segment(L, S):
    """Interval-closed: p <= q in S implies [p, q] inside S."""
    for p in bits(S):
        up = L.up_set(p)
        for q in bits(S & up):
            between = up & L.down_set(q)
            if between & ~S:
                return False
    return True


def segment_witness(L, S):
    """A triple (p, g, q) with p <= g <= q, p, q in S, g not in S; or None."""
    for p in bits(S):
        up = L.up_set(p)
        for q in bits(S & up):
            missing = up & L.down_set(q) & ~S
            if missing:
                return (p, bits(missing)[0], q)
    return None


def segment_hull(L, S):
    """Minimal poset ideal I and coideal J of L with S = I & J."""
    if not is_segment(L, S):
        raise NotASegment("subset is not interval-closed")
    order = L.order
    return down_closure(order, S), up_closure(order, S)


def rank_band(L, i, j):
    """L_{i,j} = {p : i <= rank p <= j} with the ideal/coideal pair witnessing it."""
    ranks = L.ranks
    if ranks is None:
        raise BadRange("lattice is not graded")
    if not 0 <= i <= j <= L.rank:
        raise BadRange(f"need 0 <= i <= j <= {L.rank}, got ({i}, {j})")
    ideal = mask_of(q for q in range(L.n) if ranks[q] <= j)
    coideal = mask_of(q for q in range(L.n) if ranks[q] >= i)
    return Band(ideal & coideal, ideal, coideal)


def lattice_ideals(L):
    """Poset ideals of the lattice's own order (as element masks)."""
    return poset_ideals(L.order)


def lattice_coideals(L):
    return [L.full & ~I for I in lattice_ideals(L)]


def heights_of(L):
    return heights(L.order)
