"""Finite posets on the dense ground set ``0..n-1``.

Subsets (poset ideals, coideals, intervals) are represented as int bit masks.
"""
from functools import lru_cache
import warnings

from ._bits import bits, env_cap, mask_of, popcount
from .errors import HibiError, NotAnIdeal, NotComparable

DEFAULT_IDEAL_CAP = 1 << 20


class Poset:
    """A finite poset given by its cover relation.

    ``covers`` holds pairs ``(a, b)`` meaning b covers a. The constructor
    rejects cycles and pairs that are implied by transitivity (non-Hasse
    edges); use :meth:`from_relations` to reduce an arbitrary relation.
    """

    __slots__ = ("n", "covers", "names", "down", "up", "lower", "upper", "_hash")

    def __init__(self, n, covers=(), names=None):
        self.n = n
        covers = frozenset((int(a), int(b)) for a, b in covers)
        for a, b in covers:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise HibiError(f"bad cover pair {(a, b)} for a poset on {n} elements")
        self.covers = covers
        self.names = tuple(names) if names is not None else None
        if self.names is not None and len(self.names) != n:
            raise HibiError("names must have one entry per element")
        lower = [0] * n
        upper = [0] * n
        for a, b in covers:
            lower[b] |= 1 << a
            upper[a] |= 1 << b
        self.lower = tuple(lower)
        self.upper = tuple(upper)
        self.down = tuple(_closure(n, lower))
        self.up = tuple(_closure(n, upper))
        for a, b in covers:
            # b covers a iff nothing strictly between them
            between = self.up[a] & self.down[b] & ~((1 << a) | (1 << b))
            if between:
                c = bits(between)[0]
                raise HibiError(f"{a} < {b} is implied by {a} < {c} < {b}; not a cover")
        self._hash = None

    @classmethod
    def from_relations(cls, n, relations, names=None, warn=False):
        """Build from any set of strict relations ``a < b`` (transitive reduction applied)."""
        succ = [0] * n
        for a, b in relations:
            succ[a] |= 1 << b
        up = _closure(n, succ)
        covers = []
        for a in range(n):
            strict = up[a] & ~(1 << a)
            for b in bits(strict):
                # b is a cover iff not reachable through another successor
                if not any((up[c] >> b) & 1 for c in bits(strict) if c != b):
                    covers.append((a, b))
        if warn:
            dropped = set(relations) - set(covers)
            for a, b in sorted(dropped):
                mid = [c for c in bits(up[a] & ~(1 << a)) if c != b and (up[c] >> b) & 1]
                warnings.warn(f"relation {a} < {b} is not a cover (implied via {mid[0]}); dropped")
        return cls(n, covers, names)

    def name(self, i):
        return self.names[i] if self.names is not None else str(i)

    @property
    def full(self):
        return (1 << self.n) - 1

    def leq(self, a, b):
        return bool((self.down[b] >> a) & 1)

    def lt(self, a, b):
        return a != b and self.leq(a, b)

    def minimal_elements(self):
        return [i for i in range(self.n) if not self.lower[i]]

    def maximal_elements(self):
        return [i for i in range(self.n) if not self.upper[i]]

    def __eq__(self, other):
        return isinstance(other, Poset) and self.n == other.n and self.covers == other.covers

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.covers))
        return self._hash

    def __repr__(self):
        rels = ", ".join(f"{self.name(a)}<{self.name(b)}" for a, b in sorted(self.covers))
        return f"Poset({self.n}; {rels})"


def _closure(n, step):
    """Reflexive-transitive closure masks; raises on a cycle."""
    state = [0] * n  # 0 new, 1 active, 2 done
    result = [0] * n

    def visit(v):
        stack = [(v, iter(bits(step[v])))]
        state[v] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                acc = 1 << node
                for c in bits(step[node]):
                    acc |= result[c]
                result[node] = acc
                state[node] = 2
                stack.pop()
            elif state[nxt] == 1:
                raise HibiError(f"cover relation has a cycle through {nxt}")
            elif state[nxt] == 0:
                state[nxt] = 1
                stack.append((nxt, iter(bits(step[nxt]))))

    for v in range(n):
        if state[v] == 0:
            visit(v)
    return result


def chain(n, names=None):
    return Poset(n, [(i, i + 1) for i in range(n - 1)], names)


def antichain(n, names=None):
    return Poset(n, (), names)


def interval(p, a, b):
    """The interval [a, b] as a mask; requires a <= b."""
    if not p.leq(a, b):
        raise NotComparable(f"{p.name(a)} is not below {p.name(b)}")
    return p.up[a] & p.down[b]


def neighbors(p, a):
    """(lower neighbours, upper neighbours) of ``a`` as masks."""
    return p.lower[a], p.upper[a]


def induced_subposet(p, members):
    """The subposet on ``members`` with the induced order.

    Returns ``(Q, elements)`` where ``elements[i]`` is the element of ``p``
    that becomes ``i`` in ``Q``.
    """
    elems = bits(members)
    rel = []
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            if a != b and p.leq(a, b):
                rel.append((i, j))
    names = [p.name(e) for e in elems] if p.names is not None else None
    return Poset.from_relations(len(elems), rel, names), tuple(elems)


def join_irreducibles(p):
    """Elements with exactly one lower neighbour, with the induced order."""
    members = mask_of(i for i in range(p.n) if popcount(p.lower[i]) == 1)
    return induced_subposet(p, members)


def meet_irreducibles(p):
    members = mask_of(i for i in range(p.n) if popcount(p.upper[i]) == 1)
    return induced_subposet(p, members)


def rank_function(p):
    """Rank of every element, or None when the poset is not graded."""
    height = [0] * p.n
    for v in sorted(range(p.n), key=lambda i: popcount(p.down[i])):
        lows = bits(p.lower[v])
        if lows:
            height[v] = max(height[c] for c in lows) + 1
    for a, b in p.covers:
        if height[b] != height[a] + 1:
            return None
    tops = {height[m] for m in p.maximal_elements()}
    if len(tops) > 1:
        return None
    return height


def heights(p):
    """Length of the longest chain ending at each element."""
    height = [0] * p.n
    for v in sorted(range(p.n), key=lambda i: popcount(p.down[i])):
        lows = bits(p.lower[v])
        if lows:
            height[v] = max(height[c] for c in lows) + 1
    return height


def dual_poset(p):
    return Poset(p.n, [(b, a) for a, b in p.covers], p.names)


def is_poset_ideal(p, s):
    return all(p.down[i] & ~s == 0 for i in bits(s))


def is_poset_coideal(p, s):
    return all(p.up[i] & ~s == 0 for i in bits(s))


def ideal_generators(p, s, mode="ideal"):
    """Maximal elements of an ideal (``mode='ideal'``) or minimal elements of a coideal."""
    if mode == "ideal":
        if not is_poset_ideal(p, s):
            raise NotAnIdeal("subset is not a poset ideal")
        return mask_of(i for i in bits(s) if not (p.up[i] & s & ~(1 << i)))
    if mode == "coideal":
        if not is_poset_coideal(p, s):
            raise NotAnIdeal("subset is not a poset coideal")
        return mask_of(i for i in bits(s) if not (p.down[i] & s & ~(1 << i)))
    raise ValueError(f"unknown mode {mode!r}")


def down_closure(p, s):
    acc = 0
    for i in bits(s):
        acc |= p.down[i]
    return acc


def up_closure(p, s):
    acc = 0
    for i in bits(s):
        acc |= p.up[i]
    return acc


def poset_ideals(p, cap=None):
    """All poset ideals of ``p`` sorted by cardinality, then by bit pattern.

    Breadth-first over the ideal lattice: an ideal grows by one element
    whose strict down-set is already inside it.
    """
    cap = env_cap(DEFAULT_IDEAL_CAP) if cap is None else cap
    strict_down = [p.down[i] & ~(1 << i) for i in range(p.n)]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for ideal in frontier:
            for e in range(p.n):
                if not (ideal >> e) & 1 and strict_down[e] & ~ideal == 0:
                    grown = ideal | (1 << e)
                    if grown not in seen:
                        seen.add(grown)
                        nxt.append(grown)
                        if len(seen) > cap:
                            raise HibiError(f"more than {cap} poset ideals; raise HIBILAB_CAP")
        frontier = nxt
    return sorted(seen, key=lambda m: (popcount(m), m))


def count_antichains(p):
    """Number of antichains (= number of poset ideals), by memoised recursion."""

    @lru_cache(maxsize=None)
    def count(avail):
        if not avail:
            return 1
        e = (avail & -avail).bit_length() - 1
        without = count(avail & ~(1 << e))
        comparable = p.down[e] | p.up[e]
        return without + count(avail & ~comparable)

    return count(p.full)


def linear_extension(p):
    """Elements sorted by (height, index): a fixed linear extension."""
    h = heights(p)
    return sorted(range(p.n), key=lambda i: (h[i], i))


def canonical_form(p):
    """An isomorphism invariant that is complete: equal iff isomorphic.

    Colour refinement on the order relation, then individualisation with
    backtracking; the certificate is the lexicographically least relation
    matrix over all refined orderings.
    """
    n = p.n
    if n == 0:
        return (0, ())
    down = [bits(p.down[i] & ~(1 << i)) for i in range(n)]
    up = [bits(p.up[i] & ~(1 << i)) for i in range(n)]

    def refine(colors):
        while True:
            sig = [
                (colors[i], tuple(sorted(colors[j] for j in down[i])), tuple(sorted(colors[j] for j in up[i])))
                for i in range(n)
            ]
            order = sorted(set(sig))
            new = [order.index(s) for s in sig]
            if len(set(new)) == len(set(colors)):
                return new
            colors = new

    best = None

    def search(colors):
        nonlocal best
        colors = refine(colors)
        if len(set(colors)) == n:
            perm = sorted(range(n), key=lambda i: colors[i])
            pos = {v: k for k, v in enumerate(perm)}
            cert = tuple(sorted((pos[a], pos[b]) for a, b in p.covers))
            if best is None or cert < best:
                best = cert
            return
        counts = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(n):
            if colors[v] == target:
                split = [2 * c + (1 if c > target or (c == target and u != v) else 0) for u, c in enumerate(colors)]
                search(split)

    search([0] * n)
    return (n, best)


def is_isomorphic(p, q):
    return p.n == q.n and len(p.covers) == len(q.covers) and canonical_form(p) == canonical_form(q)
