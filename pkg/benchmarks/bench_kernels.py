"""Compare the compiled and pure-Python kernels on representative workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload runs on every importable backend; results must agree before
timings are reported.
"""
import argparse
import random
import timeit

from hibilab import kernels
from hibilab.lattice import boolean_lattice, ideal_lattice
from hibilab.monomial import hibi_ideal, lcm_lattice
from hibilab.poset import Poset
from hibilab.simplicial import SimplicialComplex


def rank_workload(rng):
    rows = [[rng.randint(-3, 3) for _ in range(40)] for _ in range(60)]
    return lambda k: (k.rank(rows, 40), k.rank(rows, 40, True))


def homology_workload(rng):
    # faces of a random 2-complex on 9 vertices
    facets = [sum(1 << v for v in rng.sample(range(9), 3)) for _ in range(25)]
    faces = SimplicialComplex(9, facets).faces()
    return lambda k: k.reduced_betti(faces)


def koszul_workload(L, members=None):
    gens = list(hibi_ideal(L, members).gens)
    degrees = lcm_lattice(gens)
    return lambda k: k.koszul_betti(gens, degrees)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    rng = random.Random(0)
    fig = ideal_lattice(Poset(4, [(1, 3), (2, 3)]))
    workloads = [
        ("rank 60x40 (Q and GF(2))", rank_workload(rng)),
        ("reduced homology, 9 vertices", homology_workload(rng)),
        ("koszul betti, H of B_3", koszul_workload(boolean_lattice(3))),
        ("koszul betti, H of J(P), |P|=4", koszul_workload(fig)),
        ("koszul betti, H of B_4", koszul_workload(boolean_lattice(4))),
    ]
    backends = kernels.available_backends()
    names = sorted(backends)
    print(f"default backend: {kernels.BACKEND}")
    print(f"{'workload':34}" + "".join(f"{n:>12}" for n in names) + "     speedup")
    for title, work in workloads:
        results = {n: work(backends[n]) for n in names}
        if len({repr(r) for r in results.values()}) != 1:
            raise SystemExit(f"backends disagree on {title}")
        times = {n: min(timeit.repeat(lambda: work(backends[n]), number=1, repeat=args.repeat)) for n in names}
        speed = f"{times['python'] / times['cython']:9.1f}x" if "cython" in times else "        -"
        print(f"{title:34}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names) + "  " + speed)


if __name__ == "__main__":
    main()
