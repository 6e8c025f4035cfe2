"""Text and JSON forms of ring elements and normal forms."""
from __future__ import annotations

import json
import re

from .group import NormalForm, free_hall_group
from .rings import INTEGERS, IntegerRing, PadicRing, PolyRing, PrecisionReduce
from .syntax import eval_rexpr, parse_rexpr

_MOD_SUFFIX = re.compile(r"^\s*\((?P<body>.*)\)\s*mod\s*(?P<p>\d+)\s*\^\s*(?P<k>\d+)\s*$")


def ring_from_dict(d: dict):
    kind = d.get("ring", "z")
    if kind == "z":
        return INTEGERS
    if kind == "zt":
        return PolyRing(INTEGERS, d.get("variable", "t"))
    base = PadicRing(int(d["p"]), int(d["precision"]), d.get("mode", "strict"))
    if kind == "zp":
        return base
    if kind == "zpt":
        return PolyRing(base, d.get("variable", "t"))
    raise ValueError(f"unknown ring kind {kind!r}")


def format_element(x, ring) -> str:
    return ring.format(x)


def parse_element(text: str, ring):
    """Inverse of ``format_element``."""
    if isinstance(ring, IntegerRing):
        return int(text)
    if isinstance(ring, PadicRing):
        return ring.parse(text)
    m = _MOD_SUFFIX.match(text)
    if m and ring.padic and int(m.group("p")) == ring.base.p:
        value = eval_rexpr(parse_rexpr(m.group("body"), ring.var), ring)
        return PrecisionReduce(int(m.group("k")))(value)
    return eval_rexpr(parse_rexpr(text, ring.var), ring)


def element_to_dict(x, ring) -> dict:
    d = dict(ring.describe())
    d["kind"] = d.pop("ring")
    d["value"] = ring.format(x)
    return d


def element_from_dict(d: dict):
    info = dict(d)
    info["ring"] = info.pop("kind")
    ring = ring_from_dict(info)
    return parse_element(d["value"], ring)


def normal_form_from_dict(d: dict) -> NormalForm:
    ctx = d["context"]
    ring = ring_from_dict(ctx)
    names = ctx["generators"]
    group = free_hall_group(len(names), int(ctx["class"]), ring, names)
    exps = [0] * group.dim
    for j, text in d["exponents"].items():
        exps[int(j)] = parse_element(text, ring)
    return group.element(exps)


def normal_form_from_json(text: str) -> NormalForm:
    return normal_form_from_dict(json.loads(text))


__all__ = [
    "ring_from_dict", "format_element", "parse_element", "element_to_dict", "element_from_dict",
    "normal_form_from_dict", "normal_form_from_json",
]
