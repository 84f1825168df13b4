"""Squarefree monomial ideals over named variables.

A squarefree monomial is an int mask over the variables. For Hibi ideals of
a lattice with join-irreducible poset P (|P| = n) bit ``p`` is ``x_p`` and
bit ``n + p`` is ``y_p``.
"""
from dataclasses import dataclass, field
import json

from . import kernels
from ._bits import bits, popcount
from .errors import GroundSetMismatch, NotEquigenerated, SearchLimitExceeded, TooManyGenerators


def lcm(u, v):
    return u | v


def gcd(u, v):
    return u & v


def divides(u, v):
    return u & ~v == 0


def minimalize(gens):
    """Minimal generators of the ideal generated by ``gens``, canonically sorted."""
    kept = []
    for g in sorted(set(gens), key=lambda m: (popcount(m), m)):
        if not any(k & ~g == 0 for k in kept):
            kept.append(g)
    return kept


class MonomialIdeal:
    """A squarefree monomial ideal given by its minimal generators."""

    __slots__ = ("names", "gens")

    def __init__(self, names, gens=(), minimal=False):
        self.names = tuple(names)
        gens = list(gens)
        top = 1 << len(self.names)
        for g in gens:
            if not 0 <= g < top:
                raise GroundSetMismatch(f"monomial {g:#x} uses undeclared variables")
        if minimal:
            gens = sorted(set(gens), key=lambda m: (popcount(m), m))
        else:
            gens = minimalize(gens)
        self.gens = tuple(gens)

    @property
    def nvars(self):
        return len(self.names)

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        return self.gens == (0,)

    def degrees(self):
        return sorted({popcount(g) for g in self.gens})

    def is_equigenerated(self):
        return len(self.degrees()) <= 1

    def contains(self, m):
        return any(g & ~m == 0 for g in self.gens)

    def support(self):
        acc = 0
        for g in self.gens:
            acc |= g
        return acc

    def format_monomial(self, m):
        if m == 0:
            return "1"
        parts = [self.names[v] for v in bits(m)]
        if all(len(n) == 1 for n in self.names):
            return "".join(parts)
        return "*".join(parts)

    def formatted(self):
        return [self.format_monomial(g) for g in self.gens]

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.names == other.names and self.gens == other.gens

    def __hash__(self):
        return hash((self.names, self.gens))

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        return "(" + ", ".join(self.formatted()) + ")"


def _same_ring(a, b):
    if a.names != b.names:
        raise GroundSetMismatch("ideals live in different polynomial rings")


def intersect(a, b):
    """A ∩ B via pairwise lcms of generators."""
    _same_ring(a, b)
    return MonomialIdeal(a.names, [g | h for g in a.gens for h in b.gens])


def ideal_sum(a, b):
    _same_ring(a, b)
    return MonomialIdeal(a.names, a.gens + b.gens)


# -- Hibi ideals -------------------------------------------------------------


def hibi_variable_names(L, x_names=None, y_names=None):
    pn = [L.P.name(p) for p in range(L.P.n)]
    xs = list(x_names) if x_names is not None else [f"x{n}" for n in pn]
    ys = list(y_names) if y_names is not None else [f"y{n}" for n in pn]
    if len(xs) != L.P.n or len(ys) != L.P.n:
        raise GroundSetMismatch("need one x and one y name per join-irreducible")
    return xs + ys


def hibi_monomial(L, q):
    """u_q = x_{ell(q)} y_{P - ell(q)}."""
    lab = L.labels[q]
    return lab | ((L.P.full & ~lab) << L.P.n)


def dual_hibi_monomial(L, q):
    """x_{P - ell(q)} y_{ell(q)}: the Hibi monomial of q in the dual lattice."""
    lab = L.labels[q]
    return (L.P.full & ~lab) | (lab << L.P.n)


def hibi_ideal(L, members=None, x_names=None, y_names=None):
    """H_S for a subset S of L (a mask of elements; the whole lattice by default).

    The empty subset gives the zero ideal.
    """
    if members is None:
        members = L.full
    names = hibi_variable_names(L, x_names, y_names)
    return MonomialIdeal(names, [hibi_monomial(L, q) for q in bits(members)])


def sigma(ideal):
    """The involution x_p <-> y_p on an ideal over variables x_0..x_{n-1}, y_0..y_{n-1}."""
    n = ideal.nvars // 2
    low = (1 << n) - 1
    return MonomialIdeal(ideal.names, [((g & low) << n) | (g >> n) for g in ideal.gens])


def swap_monomial(m, n):
    low = (1 << n) - 1
    return ((m & low) << n) | (m >> n)


# -- linear quotients --------------------------------------------------------


def has_linear_quotients(ideal, cap=12):
    """An ordering of G(I) with linear quotients, or None if none exists.

    Only for equigenerated ideals. Whether u_i can follow a set Q of already
    placed generators depends only on Q, so dead sets are memoised and the
    search is exhaustive. Above ``cap`` generators a failed search raises
    SearchLimitExceeded instead of answering None.
    """
    gens = list(ideal.gens)
    if not ideal.is_equigenerated():
        raise NotEquigenerated(f"generator degrees {ideal.degrees()}")
    m = len(gens)
    if m <= 1:
        return gens
    budget = None if m <= cap else 1 << cap

    def admissible(placed, i):
        u = gens[i]
        var = 0
        for k in placed:
            d = gens[k] & ~u
            if d & (d - 1) == 0:
                var |= d
        return all((gens[j] & ~u) & var for j in placed)

    dead = set()
    visited = 0

    def extend(state, placed):
        nonlocal visited
        if len(placed) == m:
            return placed
        if state in dead:
            return None
        visited += 1
        if budget is not None and visited > budget:
            raise SearchLimitExceeded(f"no linear-quotient order found within {budget} states")
        for i in range(m):
            if not (state >> i) & 1 and admissible(placed, i):
                found = extend(state | (1 << i), placed + [i])
                if found is not None:
                    return found
        dead.add(state)
        return None

    for first in range(m):
        order = extend(1 << first, [first])
        if order is not None:
            return [gens[i] for i in order]
    return None


def check_linear_quotients(gens):
    """True iff the given ordering has linear quotients (squarefree criterion)."""
    for i in range(1, len(gens)):
        u = gens[i]
        var = 0
        for k in range(i):
            d = gens[k] & ~u
            if d & (d - 1) == 0:
                var |= d
        if not all((gens[j] & ~u) & var for j in range(i)):
            return False
    return True


# -- Betti numbers -----------------------------------------------------------


@dataclass
class BettiTable:
    """Graded Betti numbers beta_{i,j}; i = 0 counts generators.

    ``multigraded`` maps (i, monomial mask) to beta when known.
    """

    graded: dict
    multigraded: dict = field(default=None, compare=False)

    @classmethod
    def from_multigraded(cls, mg):
        graded = {}
        for (i, m), beta in mg.items():
            if beta:
                key = (i, popcount(m))
                graded[key] = graded.get(key, 0) + beta
        return cls(graded, {k: v for k, v in mg.items() if v})

    def __post_init__(self):
        self.graded = {k: v for k, v in self.graded.items() if v}

    def __getitem__(self, key):
        return self.graded.get(key, 0)

    def totals(self):
        if not self.graded:
            return []
        top = max(i for i, _ in self.graded)
        return [sum(v for (i, _), v in self.graded.items() if i == k) for k in range(top + 1)]

    def is_linear(self):
        shifts = {j - i for i, j in self.graded}
        return len(shifts) <= 1

    def records(self):
        return [{"i": i, "j": j, "beta": v} for (i, j), v in sorted(self.graded.items())]

    def to_json(self):
        return json.dumps(self.records())

    def format(self):
        """Aligned text in the usual layout: columns i, rows j - i."""
        if not self.graded:
            return "(zero)"
        top = max(i for i, _ in self.graded)
        shifts = sorted({j - i for i, j in self.graded})
        totals = self.totals()
        cells = [[str(i) for i in range(top + 1)], [str(t) for t in totals]]
        labels = ["", "total:"]
        for s in shifts:
            labels.append(f"{s}:")
            cells.append([str(self.graded.get((i, i + s), 0)) if self.graded.get((i, i + s)) else "." for i in range(top + 1)])
        width = max(len(c) for row in cells for c in row)
        lw = max(len(x) for x in labels)
        lines = []
        for lab, row in zip(labels, cells):
            lines.append(lab.rjust(lw) + " " + " ".join(c.rjust(width) for c in row))
        return "\n".join(lines)


def lcm_lattice(gens):
    """All lcms of non-empty subsets of ``gens``."""
    seen = set(gens)
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = a | g
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(seen, key=lambda m: (popcount(m), m))


def graded_betti_oracle(ideal, char2=False, max_gens=20, method="koszul"):
    """Multigraded and graded Betti numbers of a squarefree monomial ideal.

    ``koszul`` (default): beta_{i,b} = dim H~_{i-1}(K^b) for b in the lcm
    lattice, where K^b = {t subset of b : x^(b-t) in I}.
    ``taylor``: homology of the strands of the Taylor complex; exponential
    in the number of generators, kept as an independent cross-check.
    """
    gens = list(ideal.gens)
    if len(gens) > max_gens:
        raise TooManyGenerators(f"{len(gens)} generators exceed the cap of {max_gens}")
    if not gens:
        return BettiTable({}, {})
    if method == "taylor":
        return BettiTable.from_multigraded(taylor_betti(gens, char2))
    if method != "koszul":
        raise ValueError(f"unknown method {method!r}")
    return BettiTable.from_multigraded(kernels.koszul_betti(gens, lcm_lattice(gens), char2))


def taylor_betti(gens, char2=False, max_gens=16):
    """Betti numbers from the Taylor complex, strand by strand.

    The strand at m has basis the generator subsets F with lcm(F) = m, in
    homological position |F| - 1; the boundary keeps faces F - {f} whose
    lcm is still m.
    """
    m = len(gens)
    if m > max_gens:
        raise TooManyGenerators(f"Taylor complex on {m} generators is too large")
    lcms = [0] * (1 << m)
    strands = {}
    for F in range(1, 1 << m):
        low = F & -F
        lcms[F] = lcms[F ^ low] | gens[low.bit_length() - 1]
        strands.setdefault(lcms[F], []).append(F)
    out = {}
    for mdeg, subsets in strands.items():
        by_pos = {}
        for F in subsets:
            by_pos.setdefault(popcount(F) - 1, []).append(F)
        top = max(by_pos)
        ranks = [0] * (top + 2)
        for i in range(1, top + 1):
            lower = by_pos.get(i - 1, [])
            upper = by_pos.get(i, [])
            if not lower or not upper:
                continue
            index = {F: k for k, F in enumerate(lower)}
            rows = []
            for F in upper:
                row = [0] * len(lower)
                sign = 1
                for f in bits(F):
                    face = F & ~(1 << f)
                    if face in index:
                        row[index[face]] = sign
                    sign = -sign
                rows.append(row)
            ranks[i] = kernels.rank(rows, len(lower), char2)
        for i in range(top + 1):
            beta = len(by_pos.get(i, [])) - ranks[i] - ranks[i + 1]
            if beta:
                out[(i, mdeg)] = beta
    return out


def has_linear_resolution(ideal, char2=False, table=None):
    """All generators of one degree d and beta_{i,j} = 0 unless j = i + d.

    The zero ideal counts as linear (vacuously).
    """
    if not ideal.is_equigenerated():
        return False
    if ideal.is_zero():
        return True
    if table is None:
        table = graded_betti_oracle(ideal, char2)
    d = ideal.degrees()[0]
    return all(j == i + d for i, j in table.graded)


def has_linear_relations(ideal, char2=False, table=None):
    """First syzygies concentrated in degree d + 1 (d the generator degree)."""
    if not ideal.is_equigenerated():
        return False
    if ideal.is_zero():
        return True
    if table is None:
        table = graded_betti_oracle(ideal, char2)
    d = ideal.degrees()[0]
    return all(j == d + 1 for i, j in table.graded if i == 1)
