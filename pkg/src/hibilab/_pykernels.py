"""Pure-Python kernels. Same API as the compiled ``_kernels`` module.

rank            exact rank of an integer matrix over Q (or GF(2))
reduced_betti   reduced Betti numbers of a simplicial complex given by its faces
koszul_betti    multigraded Betti numbers of a squarefree monomial ideal
"""
from math import gcd


def rank(rows, ncols, char2=False):
    """Rank of the matrix whose rows are sequences of ints."""
    if char2:
        vecs = []
        for row in rows:
            v = 0
            for j, a in enumerate(row):
                if a & 1:
                    v |= 1 << j
            vecs.append(v)
        return _rank_gf2(vecs)
    sparse = []
    for row in rows:
        d = {j: a for j, a in enumerate(row) if a}
        if d:
            sparse.append(d)
    return rank_sparse(sparse)


def _rank_gf2(vecs):
    pivots = {}
    r = 0
    for v in vecs:
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                r += 1
                break
    return r


def rank_sparse(rows):
    """Fraction-free elimination on rows given as {column: int} dicts."""
    pivots = {}
    r = 0
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = _normalize(row)
                r += 1
                break
            a, b = row[col], piv[col]
            new = {}
            for j in row.keys() | piv.keys():
                v = b * row.get(j, 0) - a * piv.get(j, 0)
                if v:
                    new[j] = v
            row = _normalize(new) if new else new
    return r


def _normalize(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {j: v // g for j, v in row.items()}


def _boundary_rank(lower, upper, char2):
    """Rank of the simplicial boundary from faces ``upper`` to faces ``lower``."""
    index = {f: k for k, f in enumerate(lower)}
    if char2:
        vecs = []
        for f in upper:
            v = 0
            g = f
            while g:
                low = g & -g
                v |= 1 << index[f ^ low]
                g ^= low
            vecs.append(v)
        return _rank_gf2(vecs)
    rows = []
    for f in upper:
        row = {}
        sign = 1
        g = f
        while g:
            low = g & -g
            row[index[f ^ low]] = sign
            sign = -sign
            g ^= low
        rows.append(row)
    return rank_sparse(rows)


def reduced_betti(faces, char2=False):
    """Reduced Betti numbers [b~_{-1}, b~_0, ...] of a simplicial complex.

    ``faces`` must be closed under taking subsets (the empty face included
    unless the complex is void). The void complex gives an empty list.
    """
    by_size = {}
    for f in faces:
        by_size.setdefault(f.bit_count(), []).append(f)
    if not by_size:
        return []
    top = max(by_size)
    groups = [sorted(by_size.get(k, [])) for k in range(top + 1)]
    ranks = [0] * (top + 2)
    for k in range(1, top + 1):
        if groups[k] and groups[k - 1]:
            ranks[k] = _boundary_rank(groups[k - 1], groups[k], char2)
    return [len(groups[k]) - ranks[k] - ranks[k + 1] for k in range(top + 1)]


def koszul_faces(b, gens):
    """Faces of the upper Koszul complex K^b(I): subsets t of b with b - t in I."""
    below = [g for g in gens if g & ~b == 0]
    faces = []
    t = b
    while True:
        for g in below:
            if g & t == 0:
                faces.append(t)
                break
        if t == 0:
            break
        t = (t - 1) & b
    return faces


def koszul_betti(gens, degrees, char2=False):
    """Multigraded Betti numbers beta_{i,b} = dim H~_{i-1}(K^b(I)).

    Returns a dict ``{(i, b): beta}`` over the given squarefree degrees ``b``.
    """
    out = {}
    for b in degrees:
        faces = koszul_faces(b, gens)
        for k, beta in enumerate(reduced_betti(faces, char2)):
            if beta:
                out[(k, b)] = beta
    return out
