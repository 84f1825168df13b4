# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Same API and results as ``_pykernels``.

Ranks over Q use fraction-free elimination in int64 with overflow
detection. On overflow the rank modulo the prime 2^61 - 1 is computed; it
never exceeds the rank over Q, so a full rank mod p is exact. Otherwise
(and for complexes too large for dense matrices) the call is delegated to
the pure-Python implementation, which uses big ints.
"""
from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memset
from libc.stdint cimport uint64_t, uint32_t, int32_t

from hibilab import _pykernels

cdef extern from *:
    """
    static inline int hl_mul(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static inline int hl_sub(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    static inline int hl_popcount(unsigned long long x) { return __builtin_popcountll(x); }
    static inline int hl_ctz(unsigned long long x) { return __builtin_ctzll(x); }
    static inline unsigned long long hl_mulmod(unsigned long long a, unsigned long long b) {
        const unsigned long long p = (1ULL << 61) - 1;
        unsigned __int128 t = (unsigned __int128)a * b;
        unsigned long long r = (unsigned long long)(t & p) + (unsigned long long)(t >> 61);
        return r >= p ? r - p : r;
    }
    """
    int hl_mul(long long a, long long b, long long *r) nogil
    int hl_sub(long long a, long long b, long long *r) nogil
    int hl_popcount(unsigned long long x) nogil
    int hl_ctz(unsigned long long x) nogil
    uint64_t hl_mulmod(uint64_t a, uint64_t b) nogil

cdef enum:
    # dense matrices above this many entries go to the sparse Python path
    DENSE_LIMIT = 1 << 24
    MAX_COMPACT = 24


cdef inline long long _gcd(long long a, long long b) nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef int _rank_q(long long* a, int rows, int cols) nogil:
    """Rank of a dense row-major int64 matrix; -1 on overflow. Destroys ``a``."""
    cdef int r = 0
    cdef int c, i, j, p
    cdef long long v, best, absv, g, f, t1, t2, gg
    cdef long long* rowr
    cdef long long* rowi
    for c in range(cols):
        if r == rows:
            break
        p = -1
        best = 0
        for i in range(r, rows):
            v = a[<long>i * cols + c]
            if v != 0:
                absv = v if v > 0 else -v
                if p < 0 or absv < best:
                    p = i
                    best = absv
                    if best == 1:
                        break
        if p < 0:
            continue
        if p != r:
            for j in range(c, cols):
                v = a[<long>p * cols + j]
                a[<long>p * cols + j] = a[<long>r * cols + j]
                a[<long>r * cols + j] = v
        rowr = a + <long>r * cols
        g = rowr[c]
        for i in range(r + 1, rows):
            rowi = a + <long>i * cols
            f = rowi[c]
            if f == 0:
                continue
            gg = 0
            if g == 1 or g == -1:
                # row_i -= (f/g) * row_r keeps entries small
                f = f * g
                for j in range(c, cols):
                    if rowr[j] != 0:
                        if hl_mul(f, rowr[j], &t2) or hl_sub(rowi[j], t2, &v):
                            return -1
                        rowi[j] = v
                    if rowi[j] != 0 and gg != 1:
                        gg = _gcd(gg, rowi[j])
            else:
                for j in range(c, cols):
                    if hl_mul(g, rowi[j], &t1) or hl_mul(f, rowr[j], &t2) or hl_sub(t1, t2, &v):
                        return -1
                    rowi[j] = v
                    if v != 0 and gg != 1:
                        gg = _gcd(gg, v)
            if gg > 1:
                for j in range(c, cols):
                    rowi[j] = rowi[j] // gg
        r += 1
    return r


cdef uint64_t MODP = (<uint64_t>1 << 61) - 1


cdef inline uint64_t _powmod(uint64_t a, uint64_t e) nogil:
    cdef uint64_t r = 1
    while e:
        if e & 1:
            r = hl_mulmod(r, a)
        a = hl_mulmod(a, a)
        e >>= 1
    return r


cdef int _rank_modp(uint64_t* a, int rows, int cols) nogil:
    """Rank modulo 2^61 - 1 of a dense row-major matrix of residues. Destroys ``a``."""
    cdef int r = 0
    cdef int c, i, j, p
    cdef uint64_t inv, f, t
    cdef uint64_t* rowr
    cdef uint64_t* rowi
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if a[<long>i * cols + c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(c, cols):
                t = a[<long>p * cols + j]
                a[<long>p * cols + j] = a[<long>r * cols + j]
                a[<long>r * cols + j] = t
        rowr = a + <long>r * cols
        inv = _powmod(rowr[c], MODP - 2)
        for i in range(r + 1, rows):
            rowi = a + <long>i * cols
            if rowi[c] == 0:
                continue
            f = hl_mulmod(rowi[c], inv)
            for j in range(c, cols):
                if rowr[j]:
                    t = hl_mulmod(f, rowr[j])
                    rowi[j] = rowi[j] - t if rowi[j] >= t else rowi[j] + MODP - t
        r += 1
    return r


cdef int _rank_gf2(uint64_t* a, int rows, int words) nogil:
    """Rank of a dense bit matrix (``words`` 64-bit words per row). Destroys ``a``."""
    cdef int r = 0
    cdef int c, i, j, p, w
    cdef uint64_t bit, t
    cdef int cols = words * 64
    for c in range(cols):
        if r == rows:
            break
        w = c >> 6
        bit = (<uint64_t>1) << (c & 63)
        p = -1
        for i in range(r, rows):
            if a[<long>i * words + w] & bit:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(words):
                t = a[<long>p * words + j]
                a[<long>p * words + j] = a[<long>r * words + j]
                a[<long>r * words + j] = t
        for i in range(r + 1, rows):
            if a[<long>i * words + w] & bit:
                for j in range(w, words):
                    a[<long>i * words + j] ^= a[<long>r * words + j]
        r += 1
    return r


def rank(rows, int ncols, bint char2=False):
    """Rank of the matrix whose rows are sequences of ints."""
    cdef int nrows = len(rows)
    cdef int i, j, r, words
    cdef long long* a
    cdef uint64_t* b
    if nrows == 0 or ncols == 0:
        return 0
    if <long>nrows * ncols > DENSE_LIMIT:
        return _pykernels.rank(rows, ncols, char2)
    if char2:
        words = (ncols + 63) // 64
        b = <uint64_t*>calloc(<size_t>nrows * words, sizeof(uint64_t))
        if b == NULL:
            raise MemoryError()
        try:
            for i in range(nrows):
                row = rows[i]
                for j in range(ncols):
                    if row[j] & 1:
                        b[<long>i * words + (j >> 6)] |= (<uint64_t>1) << (j & 63)
            return _rank_gf2(b, nrows, words)
        finally:
            free(b)
    a = <long long*>malloc(<size_t>nrows * ncols * sizeof(long long))
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                v = row[j]
                if v > 4611686018427387903 or v < -4611686018427387903:
                    return _pykernels.rank(rows, ncols, char2)
                a[<long>i * ncols + j] = v
        r = _rank_q(a, nrows, ncols)
    finally:
        free(a)
    if r < 0:
        r = _rank_residues(rows, nrows, ncols)
        if r < min(nrows, ncols):
            return _pykernels.rank(rows, ncols, char2)
    return r


cdef int _rank_residues(rows, int nrows, int ncols):
    cdef int i, j, r
    cdef uint64_t* m = <uint64_t*>malloc(<size_t>nrows * ncols * sizeof(uint64_t))
    if m == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                m[<long>i * ncols + j] = row[j] % MODP
        r = _rank_modp(m, nrows, ncols)
    finally:
        free(m)
    return r


cdef int _boundary_rank(uint32_t* lower, int nl, uint32_t* upper, int nu,
                        int32_t* index, bint char2) nogil:
    """Rank of the boundary map from faces ``upper`` to ``lower``; -1 = overflow, -2 = no memory."""
    cdef int i, k, words, r
    cdef uint32_t f, g, low
    cdef long long sign
    cdef long long* a
    cdef uint64_t* b
    if nl == 0 or nu == 0:
        return 0
    if char2:
        words = (nl + 63) // 64
        b = <uint64_t*>calloc(<size_t>nu * words, sizeof(uint64_t))
        if b == NULL:
            return -2
        for i in range(nu):
            f = upper[i]
            g = f
            while g:
                low = g & (~g + 1)
                k = index[f ^ low]
                b[<long>i * words + (k >> 6)] |= (<uint64_t>1) << (k & 63)
                g ^= low
        r = _rank_gf2(b, nu, words)
        free(b)
        return r
    a = <long long*>calloc(<size_t>nu * nl, sizeof(long long))
    if a == NULL:
        return -2
    for i in range(nu):
        f = upper[i]
        g = f
        sign = 1
        while g:
            low = g & (~g + 1)
            a[<long>i * nl + index[f ^ low]] = sign
            sign = -sign
            g ^= low
    r = _rank_q(a, nu, nl)
    free(a)
    return r


cdef int _reduced_betti_compact(uint32_t* faces, int nf, int nv, bint char2,
                                long long* out) nogil:
    """Reduced Betti numbers of a complex on compact vertices 0..nv-1.

    ``out`` must hold nv + 1 entries; returns the number written, or a
    negative code when the caller must fall back to Python.
    """
    cdef int k, i, top, r
    cdef int* counts
    cdef int* starts
    cdef int* fill
    cdef uint32_t* sorted_faces
    cdef int32_t* index
    cdef long long* ranks
    cdef uint32_t f
    if nf == 0:
        return 0
    counts = <int*>calloc(nv + 2, sizeof(int))
    starts = <int*>calloc(nv + 2, sizeof(int))
    fill = <int*>calloc(nv + 2, sizeof(int))
    ranks = <long long*>calloc(nv + 3, sizeof(long long))
    sorted_faces = <uint32_t*>malloc(nf * sizeof(uint32_t))
    index = <int32_t*>malloc((<size_t>1 << nv) * sizeof(int32_t))
    if counts == NULL or starts == NULL or fill == NULL or ranks == NULL or sorted_faces == NULL or index == NULL:
        free(counts); free(starts); free(fill); free(ranks); free(sorted_faces); free(index)
        return -2
    top = 0
    for i in range(nf):
        k = hl_popcount(faces[i])
        counts[k] += 1
        if k > top:
            top = k
    for k in range(1, top + 1):
        starts[k] = starts[k - 1] + counts[k - 1]
    for i in range(nf):
        f = faces[i]
        k = hl_popcount(f)
        sorted_faces[starts[k] + fill[k]] = f
        index[f] = fill[k]
        fill[k] += 1
    r = 0
    for k in range(1, top + 1):
        if counts[k] and counts[k - 1]:
            if <long>counts[k] * counts[k - 1] > DENSE_LIMIT:
                r = -3
                break
            r = _boundary_rank(sorted_faces + starts[k - 1], counts[k - 1],
                               sorted_faces + starts[k], counts[k], index, char2)
            if r < 0:
                break
            ranks[k] = r
    if r >= 0:
        for k in range(top + 1):
            out[k] = counts[k] - ranks[k] - ranks[k + 1]
        r = top + 1
    free(counts); free(starts); free(fill); free(ranks); free(sorted_faces); free(index)
    return r


def reduced_betti(faces, bint char2=False):
    """Reduced Betti numbers [b~_{-1}, b~_0, ...] of a complex given by all its faces."""
    cdef int nf = len(faces)
    cdef int nv, i, j, written
    cdef uint32_t* buf
    cdef long long* out
    if nf == 0:
        return []
    union = 0
    for f in faces:
        union |= f
    verts = []
    u = union
    while u:
        low = u & -u
        verts.append(low.bit_length() - 1)
        u ^= low
    nv = len(verts)
    if nv > MAX_COMPACT:
        return _pykernels.reduced_betti(faces, char2)
    pos = {v: k for k, v in enumerate(verts)}
    buf = <uint32_t*>malloc(nf * sizeof(uint32_t))
    out = <long long*>calloc(nv + 2, sizeof(long long))
    try:
        for i in range(nf):
            f = faces[i]
            c = 0
            while f:
                low = f & -f
                c |= 1 << pos[low.bit_length() - 1]
                f ^= low
            buf[i] = c
        written = _reduced_betti_compact(buf, nf, nv, char2, out)
        if written < 0:
            return _pykernels.reduced_betti(faces, char2)
        return [out[j] for j in range(written)]
    finally:
        free(buf)
        free(out)


def koszul_betti(gens, degrees, bint char2=False):
    """Multigraded Betti numbers beta_{i,b} = dim H~_{i-1}(K^b(I)), over ``degrees``."""
    cdef int ng = len(gens)
    cdef int nb, k, i, j, nf, written, nbelow
    cdef uint64_t b, t, low
    cdef uint64_t* g = <uint64_t*>malloc((ng + 1) * sizeof(uint64_t))
    cdef uint64_t* below = <uint64_t*>malloc((ng + 1) * sizeof(uint64_t))
    cdef uint64_t* expand = NULL
    cdef uint32_t* faces = NULL
    cdef long long out[MAX_COMPACT + 2]
    cdef uint64_t posbits[64]
    cdef uint32_t c
    result = {}
    if g == NULL or below == NULL:
        free(g); free(below)
        raise MemoryError()
    try:
        for i in range(ng):
            if gens[i] >= (1 << 64):
                return _pykernels.koszul_betti(gens, degrees, char2)
            g[i] = gens[i]
        for pyb in degrees:
            if pyb >= (1 << 64):
                return _pykernels.koszul_betti(gens, degrees, char2)
            b = pyb
            k = hl_popcount(b)
            if k > MAX_COMPACT:
                result.update(_pykernels.koszul_betti(gens, [pyb], char2))
                continue
            nbelow = 0
            for i in range(ng):
                if g[i] & ~b == 0:
                    below[nbelow] = g[i]
                    nbelow += 1
            t = b
            j = 0
            while t:
                low = t & (~t + 1)
                posbits[j] = low
                j += 1
                t ^= low
            expand = <uint64_t*>malloc((<size_t>1 << k) * sizeof(uint64_t))
            faces = <uint32_t*>malloc((<size_t>1 << k) * sizeof(uint32_t))
            if expand == NULL or faces == NULL:
                raise MemoryError()
            expand[0] = 0
            nf = 0
            for c in range(<uint32_t>1 << k):
                if c:
                    expand[c] = expand[c & (c - 1)] | posbits[hl_ctz(c)]
                t = expand[c]
                for i in range(nbelow):
                    if below[i] & t == 0:
                        faces[nf] = c
                        nf += 1
                        break
            written = _reduced_betti_compact(faces, nf, k, char2, out)
            if written < 0:
                flist = [faces[i] for i in range(nf)]
                betti = _pykernels.reduced_betti(flist, char2)
            else:
                betti = [out[i] for i in range(written)]
            free(expand)
            free(faces)
            expand = NULL
            faces = NULL
            for i, beta in enumerate(betti):
                if beta:
                    result[(i, pyb)] = beta
        return result
    finally:
        free(g)
        free(below)
        free(expand)
        free(faces)
