#!/usr/bin/env python3
"""Run the separation pipeline on seeded random problems and summarise K, alpha and timing."""
import argparse
import collections
import json
import random
import time

from prohall.discriminate import random_problem, separate
from prohall.errors import ProHallError


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--problems", type=int, default=100)
    ap.add_argument("--primes", type=int, nargs="+", default=[5, 7])
    ap.add_argument("--prec", type=int, default=12)
    ap.add_argument("--cap", type=int, default=4)
    ap.add_argument("--size", type=int, default=4)
    ap.add_argument("--degree", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="print the summary as JSON")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    levels, alphas, failures = collections.Counter(), collections.Counter(), []
    t0 = time.perf_counter()
    for i in range(args.problems):
        p = args.primes[i % len(args.primes)]
        problem = random_problem(rng, p=p, precision=args.prec, cap=args.cap, size=args.size, degree=args.degree)
        try:
            cert = separate(problem)
        except ProHallError as exc:
            failures.append({"index": i, "p": p, "error": f"{type(exc).__name__}: {exc}"})
            continue
        levels[cert.K] += 1
        alphas[str(cert.alpha)] += 1
    elapsed = time.perf_counter() - t0

    summary = {
        "problems": args.problems,
        "certified": args.problems - len(failures),
        "K": dict(sorted(levels.items())),
        "alpha": dict(sorted(alphas.items(), key=lambda kv: int(kv[0]) if kv[0].lstrip("-").isdigit() else 0)),
        "failures": failures,
        "seconds": round(elapsed, 3),
    }
    if args.json:
        print(json.dumps(summary, indent=2))
        return
    print(f"certified {summary['certified']}/{args.problems} in {elapsed:.2f} s")
    print("K distribution:     " + ", ".join(f"{k}: {v}" for k, v in summary["K"].items()))
    print("alpha distribution: " + ", ".join(f"{k}: {v}" for k, v in summary["alpha"].items()))
    for f in failures:
        print(f"  problem {f['index']} (p = {f['p']}): {f['error']}")


if __name__ == "__main__":
    main()
