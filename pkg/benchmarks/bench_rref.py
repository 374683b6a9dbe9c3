"""Compare the numba and numpy row-reduction kernels over F_p.

    python3 benchmarks/bench_rref.py [--sizes 20 60 150] [--primes 3 7 101] [--repeat 5]

Each case checks that both kernels agree before timing them. The second table
times an end-to-end workload (derivation space of a catalog algebra) with the
kernel chosen by RESLIE_DISABLE_NUMBA, run in a subprocess per setting.
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from reslie import _kernels


def bench_kernels(sizes, primes, repeat):
    if not _kernels.HAVE_NUMBA:
        print("numba unavailable (or disabled); only the numpy kernel can run")
        return
    rng = np.random.default_rng(0)
    print(f"{'p':>5} {'shape':>11} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for p in primes:
        inv = _kernels.inverse_table(p)
        for n in sizes:
            A = rng.integers(0, p, size=(n, n + n // 2))
            A[:, n // 3] = 0  # a zero column and a repeated row keep the rank deficient
            A[-1] = A[0]
            Rn, pn = _kernels.rref_numpy(A, p, inv)
            Rj, pj = _kernels.rref_numba(A, p, inv)  # also triggers compilation
            assert np.array_equal(Rn, Rj) and np.array_equal(pn, pj), "kernels disagree"
            t_np = min(timeit.repeat(lambda: _kernels.rref_numpy(A, p, inv), number=1, repeat=repeat))
            t_nb = min(timeit.repeat(lambda: _kernels.rref_numba(A, p, inv), number=1, repeat=repeat))
            print(f"{p:>5} {str(A.shape):>11} {1e3 * t_np:>10.2f} {1e3 * t_nb:>10.2f} {t_np / t_nb:>7.1f}x")


_WORKLOAD = """
import time
from reslie.catalog import load_example
from reslie.liesuper import derivation_space
e = load_example("K2m_odd", p=5, m=5)
derivation_space(e.alg, 0)  # warm-up, includes jit compilation
t = time.perf_counter()
for _ in range(3):
    derivation_space(e.alg, 0)
print((time.perf_counter() - t) / 3)
"""


def bench_workload():
    print("\nend-to-end: even derivation space of K(2,5) odd at p = 5")
    for label, flag in (("numba", ""), ("numpy", "1")):
        env = dict(os.environ, RESLIE_DISABLE_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", _WORKLOAD], env=env, capture_output=True, text=True, check=True)
        print(f"  {label:>6}: {1e3 * float(out.stdout.strip()):.1f} ms")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 60, 150])
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 7, 101])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--no-workload", action="store_true")
    args = ap.parse_args()
    bench_kernels(args.sizes, args.primes, args.repeat)
    if not args.no_workload:
        bench_workload()


if __name__ == "__main__":
    main()
