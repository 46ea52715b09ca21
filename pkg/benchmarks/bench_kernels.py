"""Benchmark the compiled descent-profile kernel against the numpy fallback.

The kernel is the inner loop of N-table accumulation: for one coset prefix it
multiplies every tail element, tests column positivity, and bins the
(#left ascents, #right ascents) profile.  Run:

    python benchmarks/bench_kernels.py [FAMILY RANK]
"""

import sys
import time

import numpy as np

from metamatrix import _kernels
from metamatrix.coxeter import build_system, tower_plan
from metamatrix.engine import _plain_layers


def bench(kernel, prefixes, tails, tails_inv, n, repeats=3):
    best = float("inf")
    out = np.zeros((n + 1, n + 1), dtype=np.int64)
    for _ in range(repeats):
        out[:] = 0
        start = time.perf_counter()
        for mat, inv in prefixes:
            kernel(mat, inv, tails, tails_inv, out)
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    family, rank = ("E", 6) if len(sys.argv) < 3 else (sys.argv[1], int(sys.argv[2]))
    system = build_system(family, rank)
    plan = tower_plan(system)
    tails, tails_inv, trans = _plain_layers(plan)
    n = system.rank
    if trans:
        top_mats, top_invs = trans[0]
        prefixes = list(zip(top_mats, top_invs))
    else:
        eye = np.ascontiguousarray(np.eye(n, dtype=np.int64))
        prefixes = [(eye, eye)]
    elements = len(prefixes) * len(tails)
    print(f"{system.label()}: {len(prefixes)} prefixes x {len(tails)} tail elements "
          f"= {elements} profiles per pass")

    results = {}
    for name, kernel in [
        ("active  (" + _kernels.IMPLEMENTATION + ")", _kernels.count_profiles_batch),
        ("fallback (python)", _kernels.count_profiles_python),
    ]:
        elapsed, out = bench(kernel, prefixes, tails, tails_inv, n)
        rate = elements / elapsed / 1e6
        results[name] = (elapsed, out)
        print(f"  {name:24s} {elapsed * 1e3:9.1f} ms   {rate:6.2f} M elem/s")

    tables = [out for _, out in results.values()]
    assert all(np.array_equal(tables[0], t) for t in tables[1:]), "kernels disagree"
    times = [t for t, _ in results.values()]
    print(f"  speedup: {times[1] / times[0]:.1f}x")


if __name__ == "__main__":
    main()
