"""The explicit multigraded resolution of Hibi ideals of meet-closed subsets.

Basis elements are ``(p, S)`` with ``p`` a lattice element and ``S`` a mask
of lower neighbours of ``p`` inside the subset; the multidegree is the lcm of
``u_p`` and the ``u_q`` for ``q`` in ``S``. Differential entries are stored
as ``(row, col, sign, var)``: column ``col`` of F_i maps to ``sign * var``
times row ``row`` of F_{i-1}, with ``var`` a variable index (x_p = p,
y_p = n + p).
"""
from dataclasses import dataclass, replace
from itertools import combinations

from . import kernels
from ._bits import bits, mask_of, popcount, submasks
from .errors import CrosscheckFailure, NotDistributive, NotMeetClosed, NotMinimal, TooLarge
from .monomial import BettiTable, dual_hibi_monomial, hibi_monomial, hibi_variable_names, lcm_lattice, swap_monomial
from .poset import linear_extension


@dataclass
class ResolutionComplex:
    lattice: object
    members: int
    kind: str  # "hhz" or "dual"
    order: tuple  # linear order on P used for the signs
    terms: list  # terms[i] = list of (p, S)
    mdegs: list  # mdegs[i][k] = multidegree mask of terms[i][k]
    diffs: list  # diffs[i] = entries of d_i : F_i -> F_{i-1}; None when not built
    neighbors: dict  # p -> mask of (lower or upper) neighbours inside members

    @property
    def nvars(self):
        return 2 * self.lattice.P.n

    @property
    def length(self):
        return len(self.terms) - 1

    def ranks(self):
        return [len(t) for t in self.terms]

    def index(self, i):
        return {b: k for k, b in enumerate(self.terms[i])}

    def has_differential(self):
        return self.diffs is not None

    def describe(self, i, k):
        L = self.lattice
        p, S = self.terms[i][k]
        inner = ",".join(L.name(q) for q in bits(S))
        tag = "b~" if self.kind == "dual" else "b"
        return f"{tag}({L.name(p)};{{{inner}}})"

    def to_json(self):
        """Terms and differential matrices in a plain JSON-ready structure."""
        L = self.lattice
        names = hibi_variable_names(L)
        out = {"kind": self.kind, "order": [L.P.name(e) for e in self.order], "terms": [], "differentials": []}
        for i, term in enumerate(self.terms):
            out["terms"].append(
                [
                    {
                        "symbol": self.describe(i, k),
                        "element": L.name(p),
                        "subset": [L.name(q) for q in bits(S)],
                        "multidegree": [names[v] for v in bits(self.mdegs[i][k])],
                    }
                    for k, (p, S) in enumerate(term)
                ]
            )
        if self.diffs is not None:
            for i in range(1, len(self.terms)):
                out["differentials"].append(
                    {
                        "index": i,
                        "entries": [
                            {"row": r, "col": c, "sign": s, "variable": names[v]} for r, c, s, v in self.diffs[i]
                        ],
                    }
                )
        return out


# -- helpers -----------------------------------------------------------------


def _check_meet_closed(L, members):
    for a in bits(members):
        for b in bits(members):
            if b > a and not (members >> L.meet(a, b)) & 1:
                raise NotMeetClosed(f"meet of {L.name(a)} and {L.name(b)} is outside the subset")


def _lower_within(L, members, p):
    below = L.down_set(p) & members & ~(1 << p)
    return mask_of(q for q in bits(below) if not (L.up_set(q) & below & ~(1 << q)))


def _upper_within(L, members, p):
    above = L.up_set(p) & members & ~(1 << p)
    return mask_of(q for q in bits(above) if not (L.down_set(q) & above & ~(1 << q)))


def _diff_element(L, hi, lo):
    """The P-element in ell(hi) - ell(lo) for a cover lo < hi, else None."""
    d = L.labels[hi] & ~L.labels[lo]
    if d and d & (d - 1) == 0:
        return d.bit_length() - 1
    return None


def _positions(L, order):
    if order is None:
        order = linear_extension(L.P)
    order = tuple(order)
    if sorted(order) != list(range(L.P.n)):
        raise ValueError("order must list every join-irreducible once")
    return order, {e: k for k, e in enumerate(order)}


def _lam(pos, a, T):
    """Number of elements of the P-mask T strictly before a."""
    return sum(1 for t in bits(T) if pos[t] < pos[a])


def _lcm_of(mono, p, S):
    acc = mono(p)
    for q in bits(S):
        acc |= mono(q)
    return acc


# -- the resolution of H_M ---------------------------------------------------


def hhz_resolution(L, members=None, order=None, check=True):
    """Resolution of H_M for a meet-closed subset M of a distributive lattice.

    The differential is built when the minimality criterion holds and all
    induced covers of M are covers of L (always the case for poset ideals);
    otherwise only the basis and multidegrees are produced.
    """
    if not L.is_distributive:
        raise NotDistributive("Hibi ideals need a distributive lattice")
    members = L.full if members is None else members
    if not members:
        raise NotMeetClosed("empty subset")
    _check_meet_closed(L, members)
    order, pos = _positions(L, order)
    nbrs = {p: _lower_within(L, members, p) for p in bits(members)}
    mono = lambda q: hibi_monomial(L, q)
    terms, mdegs = [], []
    for p in bits(members):
        for S in submasks(nbrs[p]):
            i = popcount(S)
            while len(terms) <= i:
                terms.append([])
                mdegs.append([])
            terms[i].append((p, S))
    for i in range(len(terms)):
        terms[i].sort()
        mdegs[i] = [_lcm_of(mono, p, S) for p, S in terms[i]]
    R = ResolutionComplex(L, members, "hhz", order, terms, mdegs, None, nbrs)
    covers_ok = all(_diff_element(L, p, q) is not None for p in nbrs for q in bits(nbrs[p]))
    if covers_ok and not minimality_witnesses(R):
        R.diffs = _hhz_differential(R, pos)
        if check and not d_squared_zero(R):
            raise CrosscheckFailure("d o d != 0 in the constructed resolution")
    return R


def _hhz_differential(R, pos):
    L = R.lattice
    n = L.P.n
    diffs = [[]]
    for i in range(1, len(R.terms)):
        target = R.index(i - 1)
        entries = []
        for col, (p, S) in enumerate(R.terms[i]):
            pS = mask_of(_diff_element(L, p, q) for q in bits(S))
            for q in bits(S):
                e = _diff_element(L, p, q)
                sign = -1 if _lam(pos, e, pS) & 1 else 1
                rest = S & ~(1 << q)
                entries.append((target[(p, rest)], col, sign, n + e))
                down = mask_of(L.meet(q, s) for s in bits(rest))
                if down & ~R.neighbors[q]:
                    raise NotMeetClosed(f"meets below {L.name(q)} leave the neighbour set")
                entries.append((target[(q, down)], col, -sign, e))
        diffs.append(entries)
    return diffs


def minimality_witnesses(R):
    """Pairs (p, S) with S a proper subset of N(p) and meet(S) = meet(N(p)).

    The meet of the empty set is taken to be p itself.
    """
    L = R.lattice
    if R.kind != "hhz":
        return []
    out = []
    for p, N in R.neighbors.items():
        bottom = L.meet_of(N, empty=p)
        for S in submasks(N):
            if S != N and L.meet_of(S, empty=p) == bottom:
                out.append((p, S))
    return out


def unit_pairs(R):
    """Basis pairs (p, S), (p, S - q) with equal multidegree.

    In any multigraded complex on this basis such a pair can only be joined
    by a constant entry, so a non-empty list rules out minimality.
    """
    out = []
    for i in range(1, len(R.terms)):
        idx = {b: k for k, b in enumerate(R.terms[i - 1])}
        for k, (p, S) in enumerate(R.terms[i]):
            for q in bits(S):
                j = idx[(p, S & ~(1 << q))]
                if R.mdegs[i][k] == R.mdegs[i - 1][j]:
                    out.append(((p, S), (p, S & ~(1 << q))))
    return out


def is_minimal(R):
    """Minimality criterion, cross-checked against the basis and differential.

    A failing criterion must come with an equal-multidegree pair; a built
    differential must have only variable entries and homogeneous degrees.
    """
    verdict = not minimality_witnesses(R)
    if not verdict and not unit_pairs(R):
        raise CrosscheckFailure("criterion fails but no unit entry is forced")
    if R.diffs is not None:
        if not verdict:
            raise CrosscheckFailure("differential built for a non-minimal subset")
        if not homogeneous(R):
            raise CrosscheckFailure("differential is not homogeneous")
    return verdict


def homogeneous(R):
    for i in range(1, len(R.terms)):
        for r, c, s, v in R.diffs[i]:
            if s not in (1, -1):
                return False
            if R.mdegs[i - 1][r] | (1 << v) != R.mdegs[i][c] or (R.mdegs[i - 1][r] >> v) & 1:
                return False
    return True


def _compose(d_hi, d_lo):
    """Symbolic product d_lo o d_hi with entries keyed by (row, col, monomial)."""
    by_row = {}
    for r, c, s, v in d_lo:
        by_row.setdefault(c, []).append((r, s, v))
    acc = {}
    for mid, col, s1, v1 in d_hi:
        for row, s2, v2 in by_row.get(mid, ()):
            key = (row, col, tuple(sorted((v1, v2))))
            acc[key] = acc.get(key, 0) + s1 * s2
    return {k: v for k, v in acc.items() if v}


def d_squared_zero(R):
    if R.diffs is None:
        raise NotMinimal("no differential was built")
    return all(not _compose(R.diffs[i], R.diffs[i - 1]) for i in range(2, len(R.terms)))


def betti_from_resolution(R):
    """Betti numbers read off the basis of a minimal resolution."""
    if not is_minimal(R):
        raise NotMinimal("resolution is not minimal; use the oracle")
    mg = {}
    for i, mdegs in enumerate(R.mdegs):
        for m in mdegs:
            mg[(i, m)] = mg.get((i, m), 0) + 1
    return BettiTable.from_multigraded(mg)


def resolved_ideal(R):
    from .monomial import MonomialIdeal

    return MonomialIdeal(hibi_variable_names(R.lattice), R.mdegs[0] if R.terms else [])


def exactness_check(R, ideal=None, char2=False, max_vars=20):
    """Strand-wise check that R resolves ``ideal``.

    Every multigraded strand of a complex with squarefree shifts coincides
    with the strand at a degree of the lcm lattice of F_0, so only those are
    inspected. In each strand: d o d = 0, homology vanishes in positive
    positions, and H_0 is the one-dimensional piece of the ideal.
    """
    if R.nvars > max_vars:
        raise TooLarge(f"{R.nvars} variables exceed the cap of {max_vars}")
    if R.diffs is None:
        return False
    if ideal is not None and set(ideal.gens) != set(R.mdegs[0]):
        return False
    if not d_squared_zero(R):
        return False
    top = len(R.terms)
    cols = [[[] for _ in R.terms[i]] for i in range(top)]
    for i in range(1, top):
        for r, c, s, v in R.diffs[i]:
            cols[i][c].append((r, s))
    for m in lcm_lattice(list(R.mdegs[0])):
        sel = [[k for k, d in enumerate(R.mdegs[i]) if d & ~m == 0] for i in range(top)]
        ranks = [0] * (top + 1)
        for i in range(1, top):
            if not sel[i] or not sel[i - 1]:
                continue
            where = {k: j for j, k in enumerate(sel[i - 1])}
            rows = []
            for k in sel[i]:
                row = [0] * len(sel[i - 1])
                for r, s in cols[i][k]:
                    row[where[r]] += s
                rows.append(row)
            if i == 1 and any(sum(row) for row in rows):
                return False  # augmentation does not vanish on boundaries
            ranks[i] = kernels.rank(rows, len(sel[i - 1]), char2)
        if len(sel[0]) - ranks[1] != 1:
            return False
        for i in range(1, top):
            if len(sel[i]) - ranks[i] - ranks[i + 1]:
                return False
    return True


def corrupt_sign(R, i=1, k=0):
    """A copy of R with the sign of one entry of d_i flipped (negative control)."""
    diffs = [list(d) for d in R.diffs]
    r, c, s, v = diffs[i][k]
    diffs[i][k] = (r, c, -s, v)
    return replace(R, diffs=diffs)


# -- the dual resolution and the comparison map ------------------------------


def dual_resolution(L, members=None, order=None, check=True):
    """Resolution of the Hibi ideal of the dual lattice, basis b~(r; T), T in M(r).

    ``members`` restricts to a poset coideal of L (an ideal of the dual).
    """
    if not L.is_distributive:
        raise NotDistributive("dual resolution needs a distributive lattice")
    members = L.full if members is None else members
    order, pos = _positions(L, order)
    nbrs = {r: _upper_within(L, members, r) for r in bits(members)}
    for r in nbrs:
        if nbrs[r] != L.upper_neighbors(r):
            raise NotMeetClosed("dual resolution needs a poset coideal")
    mono = lambda q: dual_hibi_monomial(L, q)
    terms, mdegs = [], []
    for r in bits(members):
        for T in submasks(nbrs[r]):
            i = popcount(T)
            while len(terms) <= i:
                terms.append([])
                mdegs.append([])
            terms[i].append((r, T))
    for i in range(len(terms)):
        terms[i].sort()
        mdegs[i] = [_lcm_of(mono, r, T) for r, T in terms[i]]
    R = ResolutionComplex(L, members, "dual", order, terms, mdegs, None, nbrs)
    n = L.P.n
    diffs = [[]]
    for i in range(1, len(terms)):
        target = R.index(i - 1)
        entries = []
        for col, (r, T) in enumerate(terms[i]):
            Tr = mask_of(_diff_element(L, s, r) for s in bits(T))
            for s in bits(T):
                e = _diff_element(L, s, r)
                sign = -1 if _lam(pos, e, Tr) & 1 else 1
                rest = T & ~(1 << s)
                entries.append((target[(r, rest)], col, sign, n + e))
                up = mask_of(L.join(s, t) for t in bits(rest))
                entries.append((target[(s, up)], col, -sign, e))
        diffs.append(entries)
    R.diffs = diffs
    if check and not d_squared_zero(R):
        raise CrosscheckFailure("d~ o d~ != 0 in the dual resolution")
    return R


def top_and_lower(L, r, T):
    """(r^T, T_r): the join of T and the lower neighbours of r^T in [r, r^T]."""
    top = L.join_of(T, empty=r)
    inside = L.up_set(r) & L.down_set(top)
    return top, _lower_within(L, inside, top)


def lcm_partner(L, p, S):
    """(r, T): r = meet(S) and T = upper neighbours of r in [r, p]."""
    r = L.meet_of(S, empty=p)
    inside = L.up_set(r) & L.down_set(p)
    return r, _upper_within(L, inside, r)


@dataclass
class ComparisonMap:
    """pi(sigma b~(r;T)) = (-1)^|T| b(r^T; T_r), stored per homological index."""

    source: ResolutionComplex
    target: ResolutionComplex
    images: list  # images[i][k] = (sign, index in target.terms[i])

    def is_bijective(self):
        for i, imgs in enumerate(self.images):
            hit = sorted(j for _, j in imgs)
            if i >= len(self.target.terms) or hit != list(range(len(self.target.terms[i]))):
                return False
        return len(self.images) == len(self.target.terms)

    def is_injective(self):
        return all(len({j for _, j in imgs}) == len(imgs) for imgs in self.images)

    def preserves_degrees(self):
        n = self.source.lattice.P.n
        return all(
            swap_monomial(self.source.mdegs[i][k], n) == self.target.mdegs[i][j]
            for i, imgs in enumerate(self.images)
            for k, (_, j) in enumerate(imgs)
        )

    def is_chain_map(self):
        """pi o sigma(d~) = d o pi, compared entry by entry in every index."""
        n = self.source.lattice.P.n
        swap = lambda v: v - n if v >= n else v + n
        for i in range(1, len(self.images)):
            lhs, rhs = {}, {}
            for r, c, s, v in self.source.diffs[i]:
                sgn_r, j_r = self.images[i - 1][r]
                sgn_c, j_c = self.images[i][c]
                key = (j_r, j_c, swap(v))
                lhs[key] = lhs.get(key, 0) + s * sgn_r
            by_col = {}
            for r, c, s, v in self.target.diffs[i]:
                by_col.setdefault(c, []).append((r, s, v))
            for c, (sgn_c, j_c) in enumerate(self.images[i]):
                for r, s, v in by_col.get(j_c, ()):
                    key = (r, j_c, v)
                    rhs[key] = rhs.get(key, 0) + s * sgn_c
            clean = lambda d: {k: v for k, v in d.items() if v}
            if clean(lhs) != clean(rhs):
                return False
        return True


def iso_pi(L, order=None, members=None):
    """The comparison map from sigma of the dual resolution to the resolution of H_L.

    With ``members`` a poset coideal J, the source is the resolution of the
    dual Hibi ideal of J and the map is the composite used for injectivity.
    """
    if not L.is_distributive:
        raise NotDistributive("comparison map needs a distributive lattice")
    src = dual_resolution(L, members=members, order=order)
    tgt = hhz_resolution(L, order=order)
    images = []
    for i, term in enumerate(src.terms):
        idx = tgt.index(i)
        row = []
        for r, T in term:
            top, Tr = top_and_lower(L, r, T)
            row.append((-1 if i & 1 else 1, idx[(top, Tr)]))
        images.append(row)
    return ComparisonMap(src, tgt, images)


def lcm_law_holds(L, p, S):
    """|T| = |S|, join(T) = p and equal lcms for (r, T) = lcm_partner(p, S); T unique."""
    r, T = lcm_partner(L, p, S)
    if popcount(T) != popcount(S) or L.join_of(T, empty=r) != p:
        return False
    mono = lambda q: hibi_monomial(L, q)
    m = _lcm_of(mono, p, S)
    if _lcm_of(mono, r, T) != m:
        return False
    for r2 in range(L.n):
        for T2 in submasks(L.upper_neighbors(r2)):
            if r2 != r and _lcm_of(mono, r2, T2) == m:
                return False
    return True


def meet_closed_subsets(L):
    """All non-empty meet-closed subsets of L (for small L only)."""
    if L.n > 10:
        raise TooLarge("exhaustive subset search is limited to 10 elements")
    out = []
    for M in range(1, 1 << L.n):
        if all((M >> L.meet(a, b)) & 1 for a, b in combinations(bits(M), 2)):
            out.append(M)
    return out
