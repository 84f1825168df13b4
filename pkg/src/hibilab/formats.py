"""Text formats for posets, lattices, segments, ideals and complexes.

Blank lines and ``#`` comments are ignored everywhere. Element tokens are
either integer indices or names declared on a ``names`` line.

poset::

    poset 4
    names a b c d
    b < d
    c < d

lattice (explicit covers, or J(P) of a poset file relative to this one)::

    lattice 5            lattice-from-poset p.txt
    0 < 1
    ...

ring (one generator per line, ``a*v*w`` or compact ``avw``)::

    ring a b c u v w
    avw

complex (one facet per line; ``{}`` is the empty facet; optional split)::

    complex 4
    split 0 1 | 2 3
    0 2
    1 3
"""
from pathlib import Path
import re
import warnings

from ._bits import bits
from .errors import ParseError
from .lattice import Lattice, ideal_lattice
from .monomial import MonomialIdeal
from .poset import Poset
from .simplicial import SimplicialComplex


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _header(lines, keyword):
    try:
        no, line = next(lines)
    except StopIteration:
        raise ParseError(f"empty input, expected '{keyword} n'", 1, "")
    parts = line.split()
    if parts[0] != keyword or len(parts) != 2:
        raise ParseError(f"expected '{keyword} n'", no, parts[0])
    try:
        n = int(parts[1])
    except ValueError:
        raise ParseError("size must be an integer", no, parts[1])
    if n < 0:
        raise ParseError("size must be non-negative", no, parts[1])
    return n


def _element(token, n, names, no):
    if names is not None and token in names:
        return names.index(token)
    try:
        k = int(token)
    except ValueError:
        raise ParseError("unknown element", no, token)
    if not 0 <= k < n:
        raise ParseError(f"element out of range 0..{n - 1}", no, token)
    return k


def _order_body(lines, n):
    names = None
    rels = []
    for no, line in lines:
        parts = line.split()
        if parts[0] == "names":
            if len(parts) - 1 != n:
                raise ParseError(f"need {n} names", no, line)
            names = parts[1:]
            continue
        if len(parts) != 3 or parts[1] != "<":
            raise ParseError("expected 'a < b'", no, line)
        a = _element(parts[0], n, names, no)
        b = _element(parts[2], n, names, no)
        if a == b:
            raise ParseError("an element is not below itself", no, parts[0])
        rels.append((a, b, no))
    return names, rels


def parse_poset(text):
    """A Poset; relations that are not covers are dropped with a warning."""
    lines = _lines(text)
    n = _header(lines, "poset")
    names, rels = _order_body(lines, n)
    P = _reduce(n, rels, names)
    return P


def _reduce(n, rels, names):
    from .errors import HibiError

    try:
        P = Poset.from_relations(n, [(a, b) for a, b, _ in rels], names)
    except HibiError as exc:
        no = rels[-1][2] if rels else 1
        raise ParseError(str(exc), no, "")
    for a, b, no in rels:
        if (a, b) not in P.covers:
            mid = [c for c in bits(P.up[a] & P.down[b]) if c not in (a, b)]
            warnings.warn(
                f"line {no}: {P.name(a)} < {P.name(b)} is not a cover "
                f"(implied by {P.name(a)} < {P.name(mid[0])} < {P.name(b)}); dropped"
            )
    return P


def parse_lattice(text, base=None):
    """A Lattice from explicit covers, or J(P) via ``lattice-from-poset``."""
    lines = _lines(text)
    try:
        no, first = next(lines)
    except StopIteration:
        raise ParseError("empty lattice input", 1, "")
    parts = first.split()
    if parts[0] == "lattice-from-poset":
        if len(parts) != 2:
            raise ParseError("expected 'lattice-from-poset <file>'", no, first)
        path = Path(parts[1])
        if base is not None and not path.is_absolute():
            path = Path(base) / path
        try:
            return ideal_lattice(parse_poset(path.read_text()))
        except OSError as exc:
            raise ParseError(f"cannot read poset file: {exc.strerror}", no, parts[1])
    if parts[0] != "lattice" or len(parts) != 2:
        raise ParseError("expected 'lattice n' or 'lattice-from-poset <file>'", no, parts[0])
    try:
        n = int(parts[1])
    except ValueError:
        raise ParseError("size must be an integer", no, parts[1])
    names, rels = _order_body(lines, n)
    order = _reduce(n, rels, names)
    from .errors import NotALattice

    try:
        return Lattice(order)
    except NotALattice as exc:
        raise ParseError(str(exc), 0, "")


def parse_segment(spec, L):
    """A mask of elements from ``all``, indices, element names or label sets ``{a,c}``."""
    spec = spec.strip()
    if spec.startswith("segment"):
        spec = spec[len("segment"):].strip()
    if spec == "all":
        return L.full
    if spec in ("", "none"):
        return 0
    mask = 0
    pnames = [L.P.name(p) for p in range(L.P.n)]
    for token in re.findall(r"\{[^}]*\}|[^\s,{}]+", spec):
        if token.startswith("{"):
            inner = [t for t in re.split(r"[\s,]+", token[1:-1]) if t]
            lab = 0
            for t in inner:
                if t not in pnames:
                    raise ParseError("unknown join-irreducible in label set", 1, t)
                lab |= 1 << pnames.index(t)
            if lab not in L.index:
                raise ParseError("label set is not an element of the lattice", 1, token)
            mask |= 1 << L.index[lab]
        elif L.names is not None and token in L.names:
            mask |= 1 << L.names.index(token)
        else:
            try:
                k = int(token)
            except ValueError:
                raise ParseError("unknown lattice element", 1, token)
            if not 0 <= k < L.n:
                raise ParseError(f"element out of range 0..{L.n - 1}", 1, token)
            mask |= 1 << k
    return mask


def format_segment(L, mask):
    return " ".join(L.name(q) for q in bits(mask))


def parse_monomial(token, names, no=1):
    if token == "1":
        return 0
    if "*" in token:
        parts = token.split("*")
    elif token in names:
        parts = [token]
    elif all(len(n) == 1 for n in names):
        parts = list(token)
    else:
        raise ParseError("multi-character variables must be joined with '*'", no, token)
    m = 0
    for p in parts:
        if p not in names:
            raise ParseError("undeclared variable", no, p)
        bit = 1 << names.index(p)
        if m & bit:
            raise ParseError("monomial is not squarefree", no, token)
        m |= bit
    return m


def parse_ideal(text):
    lines = _lines(text)
    try:
        no, first = next(lines)
    except StopIteration:
        raise ParseError("empty input, expected 'ring <variables>'", 1, "")
    parts = first.split()
    if parts[0] != "ring":
        raise ParseError("expected 'ring <variables>'", no, parts[0])
    names = parts[1:]
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable name", no, first)
    gens = []
    for no, line in lines:
        for token in line.split():
            gens.append(parse_monomial(token, names, no))
    return MonomialIdeal(names, gens)


def format_ideal(ideal):
    return "\n".join(["ring " + " ".join(ideal.names)] + ideal.formatted()) + "\n"


def parse_complex(text):
    """(SimplicialComplex, split) where split is None or (left, right) vertex lists."""
    lines = _lines(text)
    n = _header(lines, "complex")
    names = None
    split = None
    facets = []
    for no, line in lines:
        parts = line.split()
        if parts[0] == "names":
            if len(parts) - 1 != n:
                raise ParseError(f"need {n} names", no, line)
            names = parts[1:]
            continue
        if parts[0] == "split":
            body = " ".join(parts[1:])
            if body.count("|") != 1:
                raise ParseError("expected 'split <left> | <right>'", no, line)
            left, right = body.split("|")
            split = (
                [_element(t, n, names, no) for t in left.split()],
                [_element(t, n, names, no) for t in right.split()],
            )
            continue
        if line == "{}":
            facets.append(0)
            continue
        f = 0
        for t in parts:
            f |= 1 << _element(t, n, names, no)
        facets.append(f)
    return SimplicialComplex(n, facets, names), split


def format_complex(delta, split=None):
    out = [f"complex {delta.n}", "names " + " ".join(delta.names)]
    if split is not None:
        out.append("split " + " ".join(map(str, split[0])) + " | " + " ".join(map(str, split[1])))
    for f in delta.facets:
        out.append(" ".join(delta.names[v] for v in bits(f)) if f else "{}")
    return "\n".join(out) + "\n"
