"""Time the compiled and pure-Python kernels on the workloads the CLI runs.

    python3 benchmarks/bench_kernels.py [--limit 3000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from supercong import _kernels
from supercong.binomsums import FAMILIES
from supercong.modp2 import primes_between

EXPS = [f.exps for f in FAMILIES.values()]


def sweep_sums(k, primes):
    # the claim sweep's inner loop: six fused series per prime
    for p in primes:
        k.family_sums(p, EXPS, [(i + 2) * 7 % (p * p) for i in range(len(EXPS))], p - 1)


def polynomials(k, primes):
    for p in primes:
        p2 = p * p
        w = k.family_terms(p, (2, 1, 0, 0), p)
        k.kernel_expand(w, 27, p2)
        k.poly_square(k.family_terms(p, (1, 1, 0, 0), p), p2)


WORKLOADS = {"family_sums": sweep_sums, "poly identity": polynomials}


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=3000, help="largest prime for family_sums")
    ap.add_argument("--poly-limit", type=int, default=300, help="largest prime for polynomials")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = _kernels.available()
    print(f"active backend: {_kernels.BACKEND}; comparing {', '.join(backends)}")
    limits = {"family_sums": args.limit, "poly identity": args.poly_limit}
    for name, work in WORKLOADS.items():
        primes = [p for p in primes_between(5, limits[name])]
        timings = {
            b: best_of(lambda: work(_kernels.load(b), primes), args.repeat) for b in backends
        }
        row = "  ".join(f"{b}={t:.3f}s" for b, t in timings.items())
        speedup = ""
        if "cython" in timings:
            speedup = f"  speedup x{timings['python'] / timings['cython']:.1f}"
        print(f"{name:<14} p<={limits[name]:<6} {row}{speedup}")


if __name__ == "__main__":
    main()
