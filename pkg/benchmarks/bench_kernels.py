"""Compare the compiled and pure-Python BDD kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 1]

Each workload runs on a fresh Manager per repetition; the best time is
reported.  Workloads cover the three hot paths: cube/apply construction
(PLA style), cofactor + model counting (entropy profiles), and the full
symmetry detection loop.
"""

import argparse
import random
import time

from infosym.bdd import KERNELS, Manager
from infosym.entropy import profile
from infosym.symmetry import detect


def random_cover(rng, n, cubes):
    return [[(v, rng.getrandbits(1)) for v in range(1, n + 1) if rng.random() < 0.4] for _ in range(cubes)]


def build_cover(mgr, cover):
    f = mgr.false
    for lits in cover:
        f = f | mgr.cube(lits)
    return f


def wl_apply(backend, data):
    n, covers = data
    for cover in covers:
        build_cover(Manager(n, backend=backend), cover)


def wl_profile(backend, data):
    n, covers = data
    for cover in covers:
        profile(build_cover(Manager(n, backend=backend), cover))


def wl_detect(backend, data):
    n, tables = data
    for bits in tables:
        detect(Manager(n, backend=backend).from_truth_table(bits), use_filter=False)


def workloads(seed):
    rng = random.Random(seed)
    return [
        ("apply: 20 covers, n=24, 60 cubes", wl_apply, (24, [random_cover(rng, 24, 60) for _ in range(20)])),
        ("profile: 20 covers, n=20, 40 cubes", wl_profile, (20, [random_cover(rng, 20, 40) for _ in range(20)])),
        ("detect: 30 tables, n=10", wl_detect,
         (10, [[rng.getrandbits(1) for _ in range(1 << 10)] for _ in range(30)])),
    ]


def best_of(fn, backend, data, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(backend, data)
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    backends = sorted(KERNELS)
    if "cython" not in backends:
        print("compiled kernel not built; timing the Python kernel only")
    print(f"{'workload':<38}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for label, fn, data in workloads(args.seed):
        times = {b: best_of(fn, b, data, args.repeat) for b in backends}
        row = f"{label:<38}" + "".join(f"{times[b] * 1e3:>10.1f}ms" for b in backends)
        if len(backends) > 1:
            row += f"{times['python'] / times['cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
