"""Command-line front end.

Exit status: 0 success / true, 1 a mathematical "false" (with witness),
2 usage, parse or precondition errors.
"""
import argparse
import json
from pathlib import Path
import sys
import time
import warnings

from . import analysis, corpus, formats, monomial, resolution, simplicial
from ._bits import bits
from .errors import CrosscheckFailure, HibiError, ParseError
from .lattice import dual_lattice, ideal_lattice, rank_band

TRUE, FALSE, ERROR = 0, 1, 2


class Failure(Exception):
    pass


def _emit(args, out, text, obj):
    if args.json:
        out.write(json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def _read(path):
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise Failure(f"cannot read {path}: {exc.strerror}")


def _lattice(args):
    if getattr(args, "poset", None):
        return ideal_lattice(formats.parse_poset(_read(args.poset)))
    if getattr(args, "lattice", None):
        return formats.parse_lattice(_read(args.lattice), base=Path(args.lattice).parent)
    raise Failure("give --poset FILE or --lattice FILE")


def _names(L, mask):
    return [L.name(q) for q in bits(mask)]


def _split(args, L):
    if args.band is not None:
        i, j = args.band
        band = rank_band(L, i, j)
        return band.ideal, band.coideal
    if args.ideal is None or args.coideal is None:
        raise Failure("give --band I J or both --ideal and --coideal")
    return formats.parse_segment(args.ideal, L), formats.parse_segment(args.coideal, L)


# -- subcommands -------------------------------------------------------------


def cmd_ideals(args, out):
    P = formats.parse_poset(_read(args.poset))
    L = ideal_lattice(P)
    rows = [L.name(q) for q in range(L.n)]
    _emit(args, out, f"{L.n} ideals\n" + "\n".join(rows), {"count": L.n, "ideals": rows})
    return TRUE


def cmd_birkhoff(args, out):
    L = _lattice(args)
    P = L.P
    covers = sorted((P.name(a), P.name(b)) for a, b in P.covers)
    labels = {L.name(q): [P.name(p) for p in bits(L.labels[q])] for q in range(L.n)}
    text = [
        f"distributive: {'yes' if L.is_distributive else 'no'}",
        "join-irreducibles: " + " ".join(P.name(p) for p in range(P.n)),
        "covers: " + ", ".join(f"{a} < {b}" for a, b in covers),
        "labels:",
    ]
    text += [f"  {L.name(q)}: {{{','.join(labels[L.name(q)])}}}" for q in range(L.n)]
    obj = {
        "distributive": L.is_distributive,
        "irreducibles": [P.name(p) for p in range(P.n)],
        "covers": covers,
        "labels": labels,
    }
    _emit(args, out, "\n".join(text), obj)
    return TRUE


def _hibi(args):
    L = _lattice(args)
    seg = formats.parse_segment(args.segment, L)
    xs = args.x_names.split(",") if args.x_names else None
    ys = args.y_names.split(",") if args.y_names else None
    return L, seg, monomial.hibi_ideal(L, seg, xs, ys)


def cmd_hibi(args, out):
    L, seg, H = _hibi(args)
    if not seg:
        warnings.warn("empty segment: the Hibi ideal is zero")
    _emit(args, out, formats.format_ideal(H), {"variables": list(H.names), "generators": H.formatted()})
    return TRUE


def cmd_betti(args, out):
    lattice_input = bool(args.poset or args.lattice)
    if lattice_input:
        L, seg, H = _hibi(args)
    else:
        H = formats.parse_ideal(_read(args.file))
    table = monomial.graded_betti_oracle(H, args.char2, method=args.method, max_gens=args.max_gens)
    if args.debug_crosscheck:
        other = "taylor" if args.method == "koszul" else "koszul"
        if len(H.gens) <= 14 and monomial.graded_betti_oracle(H, args.char2, method=other).multigraded != table.multigraded:
            raise CrosscheckFailure("Koszul and Taylor oracles disagree")
        if lattice_input:
            R = _maybe_resolution(L, seg)
            if R is not None and R.has_differential():
                if resolution.betti_from_resolution(R).multigraded != table.multigraded:
                    raise CrosscheckFailure("resolution basis disagrees with the oracle")
    if args.emit_complex:
        if not lattice_input:
            raise Failure("--emit-complex needs --poset/--lattice and --segment")
        R = resolution.hhz_resolution(L, seg)
        out.write(json.dumps(R.to_json(), sort_keys=True, ensure_ascii=False) + "\n")
        return TRUE
    _emit(args, out, table.format(), table.records())
    return TRUE


def _maybe_resolution(L, seg):
    try:
        return resolution.hhz_resolution(L, seg)
    except HibiError:
        return None


def cmd_dual(args, out):
    L = _lattice(args)
    D, iso = dual_lattice(L)
    P = D.P
    covers = sorted((P.name(a), P.name(b)) for a, b in P.covers)
    labels = {L.name(q): [L.P.name(p) for p in bits(iso[q])] for q in range(L.n)}
    text = ["dual poset covers: " + ", ".join(f"{a} < {b}" for a, b in covers), "labels:"]
    text += [f"  {k}: {{{','.join(v)}}}" for k, v in labels.items()]
    _emit(args, out, "\n".join(text), {"covers": covers, "labels": labels})
    return TRUE


def cmd_covers(args, out):
    delta, _ = formats.parse_complex(_read(args.complex))
    cap = None if args.no_cap else simplicial.DEFAULT_COVER_CAP
    covers = simplicial.minimal_vertex_covers(delta, cap=cap)
    rows = [[delta.names[v] for v in bits(c)] for c in covers]
    unmixed = len({len(r) for r in rows}) <= 1
    text = "\n".join(" ".join(r) if r else "{}" for r in rows) + f"\nunmixed: {'yes' if unmixed else 'no'}"
    _emit(args, out, text, {"covers": rows, "unmixed": unmixed})
    return TRUE


def _report(args, out, L, report, label):
    if report.theorem == "equal":
        wit = [{"p": L.name(p), "q": L.name(q)} for p, q in report.witnesses]
        lines = [f"  p={w['p']} covers q={w['q']}: p not in I and q not in J" for w in wit]
    else:
        wit = [{"p": L.name(p), "meet": L.name(m)} for p, m in report.witnesses]
        lines = [f"  p={w['p']} not in I and meet of N(p) = {w['meet']} not in J" for w in wit]
    text = f"{label}: {'true' if report.verdict else 'false'}"
    if lines:
        text += "\n" + "\n".join(lines)
    _emit(args, out, text, {"verdict": report.verdict, "witnesses": wit})
    return TRUE if report.verdict else FALSE


def cmd_check_equal(args, out):
    L = _lattice(args)
    I, J = _split(args, L)
    report = analysis.check_equal(L, I, J, crosscheck=args.debug_crosscheck)
    return _report(args, out, L, report, "H_{I&J} = H_I & H_J")


def cmd_check_linear(args, out):
    L = _lattice(args)
    I, J = _split(args, L)
    report = analysis.check_linear(L, I, J, crosscheck=args.debug_crosscheck)
    return _report(args, out, L, report, "linear resolution")


def cmd_empty_split(args, out):
    L = _lattice(args)
    I, J = _split(args, L)
    res = analysis.empty_case(L, I, J, crosscheck=args.debug_crosscheck)
    H = res.ideal
    rows = [(L.name(p), L.name(q), H.format_monomial(m)) for p, q, m in res.certificate]
    text = [f"degree: {res.degree}", "generators:"]
    text += [f"  {m} = lcm(u_{p}, u_{q})" for p, q, m in rows]
    obj = {"degree": res.degree, "generators": [{"p": p, "q": q, "lcm": m} for p, q, m in rows]}
    _emit(args, out, "\n".join(text), obj)
    return TRUE


def cmd_band_betti(args, out):
    table = analysis.boolean_band_betti(args.rank)
    if args.debug_crosscheck:
        from .lattice import boolean_lattice

        B = boolean_lattice(args.rank)
        H = monomial.hibi_ideal(B, B.full & ~(1 << B.bottom) & ~(1 << B.top))
        if monomial.graded_betti_oracle(H, args.char2, max_gens=1 << args.rank) != table:
            raise CrosscheckFailure("closed form disagrees with the oracle")
    _emit(args, out, table.format(), table.records())
    return TRUE


def _complex_with_split(args):
    delta, split = formats.parse_complex(_read(args.complex))
    if split is None:
        raise Failure("complex file needs a 'split <left> | <right>' line")
    return delta, split


def cmd_classify_graph(args, out):
    delta, (left, right) = _complex_with_split(args)
    G = analysis.mixed_graph(delta, left, right)
    found = analysis.recognize_cm_bipartite(G)
    if found is None:
        _emit(args, out, "cohen-macaulay bipartite: no", {"cm_bipartite": False})
        return FALSE
    P, match = found
    pairs = [(delta.names[left[i]], delta.names[right[match[i]]]) for i in range(len(left))]
    rels = sorted((delta.names[left[a]], delta.names[left[b]]) for a, b in P.covers)
    text = ["cohen-macaulay bipartite: yes", "matching: " + ", ".join(f"{a}-{b}" for a, b in pairs)]
    text.append("order: " + ", ".join(f"{a} < {b}" for a, b in rels))
    _emit(args, out, "\n".join(text), {"cm_bipartite": True, "matching": pairs, "covers": rels})
    return TRUE


def cmd_segment_of_complex(args, out):
    delta, (left, right) = _complex_with_split(args)
    res = analysis.theorem_unmixed(delta, left, right)
    L = res.lattice
    xname = lambda p: delta.names[res.x_vertex[p]]
    if res.segment is None:
        kind, data = res.witness
        if kind == "interval":
            data = [L.name(q) for q in data]
        elif kind == "cover" and data is not None:
            data = [delta.names[v] for v in bits(data)]
        elif kind == "dual":
            data = _names(L, data)
        _emit(args, out, f"no segment: {kind} witness {data}", {"segment": None, "witness": [kind, data]})
        return FALSE
    elems = [
        "{" + ",".join(xname(p) for p in bits(L.labels[q])) + "}" for q in bits(res.segment)
    ]
    text = f"segment ({len(elems)} elements): " + " ".join(elems)
    _emit(args, out, text, {"segment": elems})
    return TRUE


def cmd_sweep(args, out):
    only = set(args.only.split(",")) if args.only else None
    checks = {
        "equal": _sweep_equal,
        "linear": _sweep_linear,
        "empty": _sweep_empty,
        "resolution": _sweep_resolution,
        "unmixed": _sweep_unmixed,
        "top-bottom": _sweep_top_bottom,
    }
    lattices = corpus.corpus_lattices(args.max_size)
    results = {}
    lines = []
    for name, fn in checks.items():
        if only is not None and name not in only:
            continue
        start = time.perf_counter()
        cases, bad = fn(lattices)
        results[name] = {"cases": cases, "mismatches": bad}
        lines.append(f"{name}: {cases} cases, {bad} mismatches")
        # timings go to stderr so stdout stays byte-identical across runs
        sys.stderr.write(f"{name}: {time.perf_counter() - start:.2f}s\n")
    _emit(args, out, "\n".join(lines), results)
    return TRUE if all(v["mismatches"] == 0 for v in results.values()) else FALSE


def _sweep_equal(lattices):
    cases = bad = 0
    for _, L in lattices:
        for I, J in corpus.splits(L):
            cases += 1
            truth = monomial.intersect(monomial.hibi_ideal(L, I), monomial.hibi_ideal(L, J)) == monomial.hibi_ideal(L, I & J)
            bad += analysis.check_equal(L, I, J).verdict != truth
    return cases, bad


def _sweep_linear(lattices):
    cases = bad = 0
    for _, L in lattices:
        memo = {}
        for I, J in corpus.splits(L):
            if not I & J or analysis.equality_witnesses(L, I, J):
                continue
            cases += 1
            S = I & J
            if S not in memo:
                memo[S] = monomial.has_linear_resolution(monomial.hibi_ideal(L, S))
            down = not analysis.linear_witnesses_down(L, I, J)
            up = not analysis.linear_witnesses_up(L, I, J)
            bad += not (down == up == memo[S])
    return cases, bad


def _sweep_empty(lattices):
    cases = bad = 0
    for _, L in lattices:
        for I, J in corpus.splits(L):
            if I & J:
                continue
            cases += 1
            try:
                res = analysis.empty_case(L, I, J)
                ok = res.ideal.is_zero() or monomial.has_linear_resolution(res.ideal)
            except CrosscheckFailure:
                ok = False
            bad += not ok
    return cases, bad


def _sweep_resolution(lattices):
    from .lattice import lattice_ideals

    cases = bad = 0
    for _, L in lattices:
        for I in lattice_ideals(L):
            if not I:
                continue
            cases += 1
            H = monomial.hibi_ideal(L, I)
            R = resolution.hhz_resolution(L, I)
            ok = (
                resolution.is_minimal(R)
                and resolution.exactness_check(R, H)
                and resolution.betti_from_resolution(R).multigraded == monomial.graded_betti_oracle(H).multigraded
            )
            bad += not ok
    return cases, bad


def _sweep_unmixed(lattices):
    cases = bad = 0
    for P, L in lattices:
        for S in corpus.segments(L):
            cases += 1
            bad += not unmixed_round_trip(P, L, S)
    return cases, bad


def unmixed_round_trip(P, L, S):
    """Delta from H*_S must give back exactly S (compared as generator sets)."""
    delta = analysis.complex_from_segment(L, S)
    n = P.n
    left, right = list(range(n)), list(range(n, 2 * n))
    try:
        res = analysis.theorem_unmixed(delta, left, right)
    except HibiError:
        res = analysis.theorem_unmixed(delta, left, right, base=(L.P, left, right))
    return res.segment is not None and res.vertex_generators() == sorted(monomial.hibi_ideal(L, S).gens)


def _sweep_top_bottom(lattices):
    from .lattice import is_boolean

    cases = bad = 0
    for _, L in lattices:
        if L.n <= 2:
            continue
        cases += 1
        bad += analysis.band_is_linear(L) == is_boolean(L)
    return cases, bad


# -- argument parsing --------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--char2", action="store_true", help="compute ranks over GF(2) instead of Q")
    common.add_argument("--debug-crosscheck", action="store_true", help="recompute with an independent route")

    lat = argparse.ArgumentParser(add_help=False)
    g = lat.add_mutually_exclusive_group()
    g.add_argument("--poset", "--lattice-from-poset", dest="poset", metavar="FILE", help="use J(P) for the poset in FILE")
    g.add_argument("--lattice", metavar="FILE", help="lattice file")

    split = argparse.ArgumentParser(add_help=False)
    split.add_argument("--ideal", metavar="SEG", help="poset ideal of the lattice")
    split.add_argument("--coideal", metavar="SEG", help="poset coideal of the lattice")
    split.add_argument("--band", nargs=2, type=int, metavar=("I", "J"), help="ranks <= J and ranks >= I")

    hibi = argparse.ArgumentParser(add_help=False)
    hibi.add_argument("--segment", default="all", metavar="SEG", help="'all', indices, names or {a,c} labels")
    hibi.add_argument("--x-names", help="comma-separated names for the x variables")
    hibi.add_argument("--y-names", help="comma-separated names for the y variables")

    parser = argparse.ArgumentParser(prog="hibilab", description="Hibi ideals of lattice segments")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ideals", parents=[common], help="list the poset ideals of a poset")
    p.add_argument("--poset", required=True, metavar="FILE")
    p.set_defaults(func=cmd_ideals)

    p = sub.add_parser("birkhoff", parents=[common, lat], help="join-irreducibles and labels")
    p.set_defaults(func=cmd_birkhoff)

    p = sub.add_parser("hibi", parents=[common, lat, hibi], help="Hibi ideal of a segment")
    p.set_defaults(func=cmd_hibi)

    p = sub.add_parser("betti", parents=[common, lat, hibi], help="graded Betti numbers")
    p.add_argument("file", nargs="?", help="ring file (default: stdin)")
    p.add_argument("--method", choices=["koszul", "taylor"], default="koszul")
    p.add_argument("--max-gens", type=int, default=20)
    p.add_argument("--emit-complex", action="store_true", help="dump the explicit resolution as JSON")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("dual", parents=[common, lat], help="dual lattice labels")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("covers", parents=[common], help="minimal vertex covers of a complex")
    p.add_argument("--complex", required=True, metavar="FILE")
    p.add_argument("--no-cap", action="store_true", help="allow more than 25 facets")
    p.set_defaults(func=cmd_covers)

    for name, func in (("check-equal", cmd_check_equal), ("check-linear", cmd_check_linear), ("empty-split", cmd_empty_split)):
        p = sub.add_parser(name, parents=[common, lat, split])
        p.set_defaults(func=func)

    p = sub.add_parser("band-betti", parents=[common], help="closed-form table for B_r minus bottom and top")
    p.add_argument("--rank", type=int, required=True)
    p.set_defaults(func=cmd_band_betti)

    for name, func in (("classify-graph", cmd_classify_graph), ("segment-of-complex", cmd_segment_of_complex)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--complex", required=True, metavar="FILE")
        p.set_defaults(func=func)

    p = sub.add_parser("sweep", parents=[common], help="biconditional sweeps over small posets")
    p.add_argument("--max-size", type=int, default=4)
    p.add_argument("--only", help="comma-separated subset of equal,linear,empty,resolution,unmixed,top-bottom")
    p.set_defaults(func=cmd_sweep)
    return parser


def run(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = lambda msg, *a, **k: sys.stderr.write(f"warning: {msg}\n")
            return args.func(args, out)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
    except CrosscheckFailure as exc:
        sys.stderr.write(f"crosscheck failed: {exc}\n")
    except (HibiError, Failure) as exc:
        sys.stderr.write(f"error: {exc}\n")
    return ERROR


def main(argv=None):
    try:
        code = run(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else ERROR
    sys.exit(code)


if __name__ == "__main__":
    main()
