#!/usr/bin/env python3
"""Tabulate realize_pm(n, k) over a grid: realized size and timing, or the refusal."""
import argparse
import time

from hurwitz_alex.alexmod import alexander_polynomial
from hurwitz_alex.errors import NotRealizable
from hurwitz_alex.realize import pm_target, realize_pm


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--max-k", type=int, default=3)
    args = ap.parse_args()
    print(f"{'n':>2} {'k':>2}  {'target':<34} {'result':<34} seconds")
    for n in range(args.max_n + 1):
        for k in range(args.max_k + 1):
            t0 = time.perf_counter()
            try:
                cert = realize_pm(n, k)
                again = alexander_polynomial(cert.presentation).delta
                ok = "ok" if again == cert.computed_delta and cert.verified else "MISMATCH"
                result = f"{cert.presentation.num_generators} generators, {ok}"
            except NotRealizable as exc:
                result = f"refused ({exc.condition})"
            print(f"{n:>2} {k:>2}  {str(pm_target(n, k)):<34} {result:<34} {time.perf_counter() - t0:.2f}")


if __name__ == "__main__":
    main()
