#!/usr/bin/env python3
"""Print per-weight Hall basis sizes next to the Witt formula."""
import argparse
import time

from prohall.lie import build_hall_basis, witt_number


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-gens", type=int, default=4)
    ap.add_argument("--max-class", type=int, default=6)
    args = ap.parse_args()

    header = "n  " + " ".join(f"w={w:<5d}" for w in range(1, args.max_class + 1)) + "  seconds"
    print(header)
    for n in range(1, args.max_gens + 1):
        t0 = time.perf_counter()
        counts = build_hall_basis(n, args.max_class).weight_counts()
        dt = time.perf_counter() - t0
        cells = []
        for w, k in enumerate(counts, start=1):
            mark = "" if k == witt_number(n, w) else "!"
            cells.append(f"{k}{mark}".ljust(7))
        print(f"{n:<2d} " + " ".join(cells) + f"  {dt:.3f}")


if __name__ == "__main__":
    main()
