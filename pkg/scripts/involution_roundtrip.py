#!/usr/bin/env python3
"""Conjugate random block involutions by random unimodular matrices and
check that decompose() recovers the block counts and a valid basis."""
import argparse
import random
import time

from hurwitz_alex.involution import canonical_block, decompose, random_involution


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--max-rank", type=int, default=10)
    ap.add_argument("--bound", type=int, default=3, help="entry bound for the conjugating matrix")
    ap.add_argument("--seed", type=int, default=20240601)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    t0 = time.perf_counter()
    bad = 0
    for i in range(args.count):
        h, counts = random_involution(rng, args.max_rank, args.bound)
        dec = decompose(h)
        if dec.counts != counts or dec.basis.inverse() @ h @ dec.basis != canonical_block(*counts):
            bad += 1
            print(f"case {i}: expected {counts}, got {dec.counts}")
    print(f"{args.count - bad}/{args.count} roundtrips in {time.perf_counter() - t0:.2f}s (seed {args.seed})")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
