"""Compute values that have no stated reference and check them at two spans.

Currently: 0h^2(R,A,A) for every example instance, plus the ext^1(N_B, A)
term.  Prints one JSON object per quantity.

    python3 scripts/pin_values.py [--spans 5 7] [--cases 1,4 3,5]
"""
import argparse
import json
import time

from submax.degmat import example_matrix
from submax.invariants import Computation, ext2_term, h2_RAA


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--spans", type=int, nargs="+", default=[5, 7])
    ap.add_argument("--cases", nargs="+", default=["1,4"],
                    help="example,s pairs (default 1,4)")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for case in args.cases:
        ex, s = (int(x) for x in case.split(","))
        values = {}
        for span in args.spans:
            comp = Computation(example_matrix(ex, s), seeds=(args.seed,), span=span)
            for fn in (h2_RAA, ext2_term):
                start = time.perf_counter()
                q = fn(comp)
                values.setdefault(q.name, []).append(q.value)
                print(json.dumps({"example": ex, "s": s, "span": span, "quantity": q.name,
                                  **q.to_json(), "seconds": round(time.perf_counter() - start, 1)}),
                      flush=True)
        for name, vals in values.items():
            verdict = "stable" if len(set(vals)) == 1 else "CHANGES WITH SPAN"
            print(f"# example {ex} s={s} {name}: {vals} {verdict}", flush=True)


if __name__ == "__main__":
    main()
