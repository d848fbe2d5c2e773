"""Timing of the exact rank kernel on random matrices of prescribed rank.

    python3 scripts/bench_rank.py --sizes 1000x1500 2292x3024 3312x13248
"""
import argparse
import time

import numpy as np

from submax.exactalg import DEFAULT_PRIME, matmul_mod, rank


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", nargs="+", default=["1000x1500", "2292x3024"])
    ap.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    p = args.prime
    for spec in args.sizes:
        rows, cols = (int(x) for x in spec.split("x"))
        r = min(rows, cols) * 9 // 10
        a = matmul_mod(rng.integers(0, p, (rows, r)), rng.integers(0, p, (r, cols)), p)
        start = time.perf_counter()
        got = rank(a, p)
        took = time.perf_counter() - start
        status = "ok" if got == r else f"WRONG (expected {r})"
        print(f"{rows:6d} x {cols:6d}  rank {got:6d}  {took:7.2f} s  {status}", flush=True)


if __name__ == "__main__":
    main()
