"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py --n 20000 --communities 1500
"""

import argparse
import time

from nucleus import _backend
from nucleus.cliques import _oriented, enumerate_r_cliques
from nucleus.generators import planted_communities
from nucleus.peel import link_source, set_k


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def stages(g, kern, r, s, idx):
    op, oi = _oriented(g)
    ka = {}

    def peel():
        ka["v"] = set_k(g, r, s, index=idx, backend=kern.NAME, strategy="on-demand", check=False)

    def forest():
        src = link_source(g, idx, s, "on-demand", kern=kern)
        kern.forest(src, ka["v"].kappa, ka["v"].processing_order)

    return [
        ("degeneracy order", lambda: kern.degeneracy_order(g.indptr, g.indices)),
        (f"enumerate K{r}", lambda: kern.enumerate_cliques(op, oi, r) if r >= 3 else None),
        (f"peel ({r},{s})", peel),
        (f"forest ({r},{s})", forest),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=20000)
    ap.add_argument("--communities", type=int, default=1500)
    ap.add_argument("--background", type=int, default=20000)
    ap.add_argument("--r", type=int, default=3)
    ap.add_argument("--s", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    g = planted_communities(args.n, args.communities, (8, 30), 0.5, args.background, seed=args.seed)
    idx = enumerate_r_cliques(g, args.r)
    print(f"graph: n={g.n} m={g.m} K{args.r}={len(idx)}")
    names = _backend.available()
    results = {}
    for name in names:
        kern = _backend.get(name)
        for stage, fn in stages(g, kern, args.r, args.s, idx):
            results[stage, name] = timed(fn, args.repeat)

    header = f"{'stage':<20}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else "")
    print(header)
    for stage, _ in stages(g, _backend.get(names[0]), args.r, args.s, idx):
        row = f"{stage:<20}" + "".join(f"{results[stage, n]:>11.3f}s" for n in names)
        if len(names) > 1:
            base = results[stage, "cython"]
            row += f"{results[stage, 'python'] / base:>11.1f}x" if base > 0 else f"{'-':>12}"
        print(row)


if __name__ == "__main__":
    main()
