"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (for example an equality that
cannot be separated below the class cap), 2 on usage or parse errors.  With
``--format json`` exactly one JSON document is written to standard output;
diagnostics always go to standard error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass

from .collect import naive_collect
from .discriminate import DiscriminationProblem, centralizer_demo, separate
from .elements import ProHallElement, SubstitutionMap, element_equal, substitute, subgroup_truncation_gens
from .errors import ProHallError, UnboundGenerator
from .group import axiom_suite, free_hall_group
from .lie import assoc_oracle, build_hall_basis, generator_names, lie_algebra
from .rings import INTEGERS, PadicRing, PolyRing, closure_generate
from .syntax import ParseError, eval_rexpr, parse, parse_rexpr, parse_term, to_term

RINGS = ("z", "zp", "zt", "zpt")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    p: int = 7
    precision: int = 12
    c: int = 3
    ring: str = "z"
    mode: str = "strict"
    seed: int = 0
    format: str = "text"
    gens: int | None = None

    def __post_init__(self):
        if self.ring not in RINGS:
            raise UsageError(f"unknown ring {self.ring!r}")
        if self.c < 1:
            raise UsageError("--class must be at least 1")
        if self.ring in ("zp", "zpt") and self.mode == "strict" and self.p <= self.c:
            raise UsageError(f"strict mode needs p > class (p={self.p}, class={self.c}); use --mode tracked")

    def exponent_ring(self, kind: str | None = None):
        kind = kind or self.ring
        if kind == "z":
            return INTEGERS
        if kind == "zt":
            return PolyRing(INTEGERS)
        try:
            base = PadicRing(self.p, self.precision, self.mode)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return base if kind == "zp" else PolyRing(base)


# -- helpers ----------------------------------------------------------------------------

def _alphabet(cfg: RunConfig, sources) -> tuple:
    if cfg.gens is not None:
        return tuple(generator_names(cfg.gens))
    names = set()
    for s in sources:
        names |= _names(parse(s))
    letters = [n for n in names if len(n) == 1 and n.islower()]
    if letters and len(letters) == len(names):
        top = max(ord(n) for n in letters) - ord("a") + 1
        return tuple(generator_names(max(2, top)))
    return tuple(sorted(names)) or ("a", "b")


def _names(node) -> set:
    from .syntax import AComm, AGen, APow, AWord
    if isinstance(node, AGen):
        return {node.name}
    if isinstance(node, AWord):
        return set().union(*(_names(x) for x in node.items))
    if isinstance(node, AComm):
        return _names(node.left) | _names(node.right)
    if isinstance(node, APow):
        return _names(node.base)
    return set()


def _element(text: str, cfg: RunConfig, ring, alphabet) -> ProHallElement:
    return ProHallElement(parse_term(text, ring, alphabet), alphabet, ring)


def _read_lines(path: str) -> list:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                out.append(line)
    return out


def _exprs(args) -> list:
    exprs = list(getattr(args, "exprs", []) or [])
    if getattr(args, "file", None):
        exprs += _read_lines(args.file)
    return exprs


# -- commands ---------------------------------------------------------------------------

def cmd_basis(args, cfg):
    basis = build_hall_basis(cfg.gens or 2, cfg.c)
    if cfg.format == "json":
        return json.loads(basis.to_json())
    return "\n".join(basis.dump())


def cmd_normalize(args, cfg):
    exprs = _exprs(args)
    if not exprs:
        raise UsageError("normalize needs at least one expression")
    ring = cfg.exponent_ring()
    alphabet = _alphabet(cfg, exprs)
    out = [_element(s, cfg, ring, alphabet).truncate(cfg.c) for s in exprs]
    if cfg.format == "json":
        return out[0].to_dict() if len(out) == 1 else [g.to_dict() for g in out]
    return "\n".join(str(g) for g in out)


def cmd_eq(args, cfg):
    ring = cfg.exponent_ring()
    alphabet = _alphabet(cfg, [args.left, args.right])
    r = element_equal(_element(args.left, cfg, ring, alphabet), _element(args.right, cfg, ring, alphabet), cfg.c)
    if cfg.format == "json":
        return {"result": str(r), "outcome": r.outcome.value, "class": r.witness_class, "cap": r.cap}
    return str(r)


def cmd_power(args, cfg):
    ring = cfg.exponent_ring()
    alphabet = _alphabet(cfg, [args.expr])
    g = _element(args.expr, cfg, ring, alphabet).truncate(cfg.c)
    var = ring.var if isinstance(ring, PolyRing) else "t"
    lam = eval_rexpr(parse_rexpr(args.exponent, var), ring, args.exponent)
    h = g.group.power(g, lam)
    return h.to_dict() if cfg.format == "json" else str(h)


def cmd_commutator(args, cfg):
    ring = cfg.exponent_ring()
    alphabet = _alphabet(cfg, [args.left, args.right])
    g = _element(args.left, cfg, ring, alphabet).truncate(cfg.c)
    h = _element(args.right, cfg, ring, alphabet).truncate(cfg.c)
    k = g.group.commutator(g, h)
    return k.to_dict() if cfg.format == "json" else str(k)


def cmd_petresco(args, cfg):
    ring = cfg.exponent_ring()
    exprs = args.exprs or ["a", "b"]
    alphabet = _alphabet(cfg, exprs)
    xs = [_element(s, cfg, ring, alphabet).truncate(cfg.c) for s in exprs]
    G = xs[0].group
    taus = G.petresco_words(xs, args.index)
    if cfg.format == "json":
        return {"index": args.index, "tau": [t.to_dict() for t in taus]}
    return "\n".join(f"tau_{i + 1} = {t}" for i, t in enumerate(taus))


def cmd_axioms(args, cfg):
    ring = cfg.exponent_ring()
    G = free_hall_group(cfg.gens or 2, cfg.c, ring)
    report = axiom_suite(G, args.trials, cfg.seed, bound=args.bound)
    if cfg.format == "json":
        return report.to_dict()
    lines = [f"{fam}: {p}/{t} passed" for fam, (p, t) in report.counts.items()]
    lines += [f"FAIL {f.family} {f.law}: {f.witness}" for f in report.failures[:10]]
    return "\n".join(lines)


def cmd_closure(args, cfg):
    kind = cfg.ring if cfg.ring in ("zt", "zpt") else "zt"
    ring = cfg.exponent_ring(kind)
    gens = [eval_rexpr(parse_rexpr(s, ring.var), ring, s) for s in (args.gen or ["t"])]
    tower = closure_generate(gens, args.depth, args.nmax, max_elements=args.max_elements)
    levels = [len(tower.level(i)) for i in range(args.depth + 1)]
    elems = list(tower)
    integral = all(e.value.is_integral() for e in elems)
    if cfg.format == "json":
        return {
            "depth": args.depth, "n_max": args.nmax, "level_sizes": levels, "integral": integral,
            "elements": [{"value": str(e.value), "derivation": str(e.derivation)} for e in elems[: args.show]],
        }
    lines = [f"level sizes: {levels}", f"all integral: {integral}"]
    lines += [f"{e.value}    <- {e.derivation}" for e in elems[: args.show]]
    return "\n".join(lines)


def cmd_discriminate(args, cfg):
    exprs = _exprs(args)
    if len(exprs) < 2:
        raise UsageError("discriminate needs at least two expressions (arguments or --file)")
    ring = cfg.exponent_ring("zpt")
    alphabet = _alphabet(cfg, exprs)
    M = [_element(s, cfg, ring, alphabet) for s in exprs]
    problem = DiscriminationProblem(M, cfg.p, cfg.precision, cfg.c, budget=args.budget, seed=cfg.seed, mode=cfg.mode)
    cert = separate(problem)
    if cfg.format == "json":
        return cert.to_dict()
    lines = [f"K = {cert.K}", f"alpha = {cert.alpha}", "N = {" + ", ".join(str(x) for x in cert.N) + "}"]
    lines += [f"{s}  ->  {g}" for s, g in zip(exprs, cert.images)]
    lines.append("verified")
    return "\n".join(lines)


def cmd_subst(args, cfg):
    ring = cfg.exponent_ring()
    assignment = {}
    for item in args.assign:
        name, sep, rhs = item.partition("=")
        if not sep:
            raise UsageError(f"--assign expects NAME=EXPR, got {item!r}")
        assignment[name.strip()] = rhs.strip()
    target = _alphabet(cfg, list(assignment.values()))
    var = ring.var if isinstance(ring, PolyRing) else "t"
    source = tuple(sorted(assignment))
    theta = SubstitutionMap(source, target, {x: parse_term(h, ring, target) for x, h in assignment.items()}, ring)
    w = to_term(parse(args.word, var), ring, None, args.word)
    try:
        image = substitute(theta, w)
    except UnboundGenerator as exc:
        raise UsageError(str(exc)) from None
    nf = image.truncate(cfg.c)
    data = subgroup_truncation_gens(theta, cfg.c)
    if cfg.format == "json":
        return {
            "image": nf.to_dict(),
            "subgroup_generators": [g.to_dict() for g in data.generators],
            "zp_exponents": data.zp_exponents,
            "note": data.note,
        }
    lines = [f"image: {nf}"] + [f"h_{x} = {g}" for x, g in zip(source, data.generators)]
    if data.note:
        lines.append(f"note: {data.note}")
    return "\n".join(lines)


def cmd_centralizer(args, cfg):
    ring = cfg.exponent_ring("zpt" if cfg.ring in ("zp", "zpt") else "zt")
    w = parse_term(args.word, ring, ("a", "b"))
    report = centralizer_demo(w, ring, args.alpha, cap=cfg.c)
    if cfg.format == "json":
        return report.to_dict()
    d = report.to_dict()
    return "\n".join(f"{k}: {v}" for k, v in d.items())


def cmd_oracle_check(args, cfg):
    from gmpy2 import mpq
    rng = random.Random(cfg.seed)
    n = cfg.gens or 2
    t0 = time.perf_counter()
    alg = lie_algebra(n, cfg.c)
    bch_ok = 0
    for _ in range(args.trials):
        x = [mpq(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(alg.dim)]
        y = [mpq(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(alg.dim)]
        bch_ok += alg.bch(x, y) == assoc_oracle(x, y, n, cfg.c)
    G = free_hall_group(n, cfg.c)
    coll_ok = 0
    for _ in range(args.trials):
        word = [(rng.randrange(n), rng.randint(-3, 3)) for _ in range(rng.randint(1, 8))]
        g = G.product([G.generator(i, e) for i, e in word])
        coll_ok += list(g.exponents) == naive_collect(word, n, cfg.c)
    result = {
        "n": n, "class": cfg.c, "trials": args.trials,
        "bch_vs_associative": bch_ok, "group_vs_collection": coll_ok,
        "passed": bch_ok == coll_ok == args.trials, "seconds": round(time.perf_counter() - t0, 3),
    }
    if cfg.format == "json":
        return result
    return "\n".join(f"{k}: {v}" for k, v in result.items())


# -- driver --------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=7, help="prime for zp / zpt")
    common.add_argument("--prec", type=int, default=12, help="p-adic precision (digits)")
    common.add_argument("--class", dest="c", type=int, default=3, help="nilpotency class / class cap")
    common.add_argument("--ring", choices=RINGS, default="z")
    common.add_argument("--mode", choices=("strict", "tracked"), default="strict")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--gens", type=int, default=None, help="number of generators")
    common.add_argument("--file", default=None, help="expressions, one per line, '#' comments")

    ap = argparse.ArgumentParser(prog="prohall", description="Free nilpotent Hall groups over binomial rings.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    add("basis", cmd_basis, "list the Hall basis")
    p = add("normalize", cmd_normalize, "normal form of expressions")
    p.add_argument("exprs", nargs="*")
    p = add("eq", cmd_eq, "compare two elements up to the class cap")
    p.add_argument("left")
    p.add_argument("right")
    p = add("power", cmd_power, "raise an element to a ring exponent")
    p.add_argument("expr")
    p.add_argument("exponent")
    p = add("commutator", cmd_commutator, "[g, h] = g^-1 h^-1 g h")
    p.add_argument("left")
    p.add_argument("right")
    p = add("petresco", cmd_petresco, "Petresco words tau_1..tau_i of a tuple")
    p.add_argument("index", type=int)
    p.add_argument("exprs", nargs="*")
    p = add("axioms", cmd_axioms, "run the Hall R-group axiom suite")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--bound", type=int, default=20)
    p = add("closure", cmd_closure, "generate the binomial closure tower")
    p.add_argument("--gen", action="append", help="generator (ring expression); default t")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--nmax", type=int, default=2)
    p.add_argument("--show", type=int, default=20)
    p.add_argument("--max-elements", type=int, default=5000)
    p = add("discriminate", cmd_discriminate, "separate elements by an evaluation t -> alpha")
    p.add_argument("exprs", nargs="*")
    p.add_argument("--budget", type=int, default=200)
    p = add("subst", cmd_subst, "apply a substitution map x -> h")
    p.add_argument("word")
    p.add_argument("--assign", action="append", default=[], metavar="X=EXPR")
    p = add("centralizer", cmd_centralizer, "images of a, b, w^t under t -> alpha")
    p.add_argument("word")
    p.add_argument("--alpha", type=int, default=2)
    p = add("oracle-check", cmd_oracle_check, "BCH and group arithmetic against independent oracles")
    p.add_argument("--trials", type=int, default=50)
    return ap


def emit(result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, sort_keys=True)
    return str(result)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(args.p, args.prec, args.c, args.ring, args.mode, args.seed, args.format, args.gens)
        result = args.fn(args, cfg)
    except (UsageError, ParseError, UnboundGenerator, OSError) as exc:
        print(f"usage error: {exc}" if not isinstance(exc, ParseError) else str(exc), file=stderr)
        return 2
    except (ProHallError, ArithmeticError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=stderr)
        return 1
    print(emit(result, cfg.format), file=stdout)
    return 0


def main():
    sys.exit(run())


__all__ = ["RunConfig", "build_parser", "run", "emit", "main"]
