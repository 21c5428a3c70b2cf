"""Compare the compiled kernels with the pure-Python reference.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times each hot kernel on the same inputs under both backends and checks that
the outputs agree.
"""

import argparse
import time

import numpy as np

from geninv import _pykernels
from geninv.enumeration import random_transformation_semigroup
from geninv.semigroup import build_from_transformations

try:
    from geninv import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(x, y):
    if isinstance(x, dict):
        return all(np.array_equal(x[k], y[k]) for k in x)
    if isinstance(x, tuple):
        return all(np.array_equal(a, b) for a, b in zip(x, y))
    return np.array_equal(np.asarray(x), np.asarray(y))


def workloads():
    full_t4 = build_from_transformations(4, [[1, 2, 3, 0], [1, 0, 2, 3], [0, 0, 2, 3]])
    mid = random_transformation_semigroup(4, 3, seed=6)
    for S, name in ((full_t4, "T4 (256 elements)"), (mid, f"random degree 4 ({mid.order} elements)")):
        t = S.table
        L, R = _pykernels.green_matrices(t)
        sharp = _pykernels.group_inverses(t, L, R)
        yield f"green_matrices  {name}", lambda k, t=t: k.green_matrices(t)
        yield f"group_inverses  {name}", lambda k, t=t, L=L, R=R: k.group_inverses(t, L, R)
        yield f"pair_sweep      {name}", lambda k, t=t, L=L, R=R, s=sharp: k.pair_sweep(t, L, R, s)
        yield f"associativity   {name}", lambda k, t=t: k.first_nonassociative(t)
    for n in (3, 4):
        yield f"enumerate_tables order {n}", lambda k, n=n: np.concatenate(
            [k.enumerate_tables(n, row) for row in np.ndindex(*(n,) * n)]
        )


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    if _ckernels is None:
        print("compiled kernels are not built; only the Python backend is available")
    print(f"{'kernel':45s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, run in workloads():
        tp, op = best_of(lambda: run(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:45s} {tp:10.4f}")
            continue
        tc, oc = best_of(lambda: run(_ckernels), args.repeat)
        if not same(op, oc):
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:45s} {tp:10.4f} {tc:10.4f} {tp / max(tc, 1e-9):7.1f}x")


if __name__ == "__main__":
    main()
