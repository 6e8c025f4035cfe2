#!/usr/bin/env python3
"""Evaluate the generators a, b, w^t of a centralizer extension at t -> alpha.

For each word w and each alpha the script prints the image of w^t in the
truncation where w first becomes nontrivial.
"""
import argparse

from prohall.discriminate import centralizer_demo, problem_ring
from prohall.syntax import exponent_ast, parse_term, print_rexpr

WORDS = ["[a,b]", "a", "a b", "[[a,b],a]", "[a,b]^2 b"]


def readable(g) -> str:
    # symmetric residues: -1 rather than p^k - 1
    parts = [f"{g.group.basis.label(j)}^{print_rexpr(exponent_ast(e))}"
             for j, e in enumerate(g.exponents) if e.compare(0).value != "equal"]
    return " ".join(parts) or "1"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("words", nargs="*", default=WORDS)
    ap.add_argument("--alphas", type=int, nargs="+", default=[0, 1, 2, 3, -1])
    ap.add_argument("--p", type=int, default=7)
    ap.add_argument("--prec", type=int, default=12)
    ap.add_argument("--cap", type=int, default=4)
    args = ap.parse_args()

    ring = problem_ring(args.p, args.prec)
    for text in args.words:
        w = parse_term(text, ring, ("a", "b"))
        for alpha in args.alphas:
            rep = centralizer_demo(w, ring, alpha, cap=args.cap)
            status = "nontrivial" if rep.nontrivial[0] else "trivial"
            print(f"w = {text:<12} alpha = {alpha:>3}  class {rep.witness_class}  "
                  f"w^alpha = {readable(rep.powers[0])}  ({status})")


if __name__ == "__main__":
    main()
