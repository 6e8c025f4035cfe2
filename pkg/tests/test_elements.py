import random
import threading

import pytest

from prohall.discriminate import random_term
from prohall.elements import (Comm, Gen, Inv, Mul, One, Outcome, Pow, ProHallElement, SubstitutionMap,
                              element_equal, evaluate, product, subgroup_truncation_gens, substitute)
from prohall.errors import ContextMismatch, UnboundGenerator
from prohall.rings import INTEGERS, PadicRing, PolyRing, binomial_coeff

ZT = PolyRing(INTEGERS)
ZPT = PolyRing(PadicRing(7, 12))
a, b, c_ = Gen("a"), Gen("b"), Gen("c")
AB = ("a", "b")


def el(term, ring=INTEGERS, alphabet=AB):
    return ProHallElement(term, alphabet, ring)


def int_term(rng, alphabet=AB, depth=3):
    """Random term over Z using every constructor."""
    gens = [Gen(x) for x in alphabet]
    if depth == 0 or rng.random() < 0.3:
        return rng.choice(gens)
    k = rng.randrange(5)
    if k == 0:
        return Mul(int_term(rng, alphabet, depth - 1), int_term(rng, alphabet, depth - 1))
    if k == 1:
        return Inv(int_term(rng, alphabet, depth - 1))
    if k == 2:
        return Pow(int_term(rng, alphabet, depth - 1), rng.randint(-4, 4))
    if k == 3:
        return Comm(int_term(rng, alphabet, depth - 1), int_term(rng, alphabet, depth - 1))
    return One()


# -- truncation ---------------------------------------------------------------------

def test_weight_two_factor_dies_at_class_one():
    t = ZT.variable()
    e = el(Mul(Pow(a, t), Pow(Comm(a, b), binomial_coeff(t, 2))), ZT)
    g = e.truncate(1)
    assert g.group.c == 1
    assert g.exponents[0] == t and g.exponents[1].is_exact_zero()
    assert g == el(Pow(a, t), ZT).truncate(1)


def test_generator_is_basis_vector_at_every_class():
    e = el(a)
    for c in range(1, 6):
        g = e.truncate(c)
        assert g.exponents == tuple([1] + [0] * (g.group.dim - 1))


def test_class_must_be_positive():
    with pytest.raises(ValueError):
        el(a).truncate(0)


@pytest.mark.parametrize("seed", range(20))
def test_truncation_commutes_with_constructors(seed):
    rng = random.Random(seed)
    u, v = el(int_term(rng)), el(int_term(rng))
    n = rng.randint(-3, 3)
    for c in range(1, 5):
        G = u.group(c)
        tu, tv = u.truncate(c), v.truncate(c)
        assert (u * v).truncate(c) == G.multiply(tu, tv)
        assert u.inverse().truncate(c) == G.inverse(tu)
        assert (u ** n).truncate(c) == G.power(tu, n)
        assert u.commutator(v).truncate(c) == G.commutator(tu, tv)


def test_truncation_commutes_with_constructors_over_polynomials():
    rng = random.Random(3)
    for _ in range(10):
        u = el(random_term(rng, AB, ZPT, degree=2), ZPT)
        v = el(random_term(rng, AB, ZPT, degree=2), ZPT)
        f = ZPT.from_coefficients([rng.randint(-2, 2) for _ in range(3)])
        G = u.group(3)
        tu, tv = u.truncate(3), v.truncate(3)
        assert (u * v).truncate(3) == G.multiply(tu, tv)
        assert (u ** f).truncate(3) == G.power(tu, f)
        assert u.commutator(v).truncate(3) == G.commutator(tu, tv)


def test_unbound_generator_rejected():
    with pytest.raises(UnboundGenerator):
        el(Mul(a, c_))


def test_mixed_alphabets_rejected():
    with pytest.raises(ContextMismatch):
        el(a) * el(a, alphabet=("a", "b", "c"))


def test_evaluate_shares_subterms():
    x = Mul(a, b)
    big = x
    for _ in range(40):
        big = Mul(big, big)  # 2^40 leaves, but only 41 distinct nodes
    g = evaluate(big, el(a).group(2), {"a": 0, "b": 1})
    assert g.exponents[:2] == (2 ** 40, 2 ** 40)


def test_product_of_nothing_is_one():
    assert el(product([])).truncate(3).is_identity()


# -- coherence ----------------------------------------------------------------------

def test_generator_coherent():
    for c in range(1, 6):
        assert el(a).coherence_check(c)


def test_random_terms_coherent():
    rng = random.Random(11)
    for i in range(100):
        ring = ZT if i % 2 else INTEGERS
        term = random_term(rng, AB, ZT, degree=2) if ring is ZT else int_term(rng)
        e = el(term, ring)
        assert all(e.coherence_check(c) for c in range(1, 4)), term
    assert e.memoized_classes() == [1, 2, 3, 4]


def test_corrupted_memo_detected():
    e = el(Mul(a, b))
    assert e.coherence_check(2)
    e._memo[3] = e.group(3).element([1, 1, 5, 0, 0])
    assert not e.coherence_check(2)


def test_concurrent_truncation_is_consistent():
    e = el(Comm(Mul(a, b), Pow(a, 3)))
    out = []
    threads = [threading.Thread(target=lambda: out.append(e.truncate(4))) for _ in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert all(g is out[0] for g in out)


# -- equality -------------------------------------------------------------------------

def test_equal_to_itself():
    e = el(Comm(a, b))
    r = element_equal(e, e, 4)
    assert r.outcome is Outcome.EQUAL and str(r) == "equal-up-to-cap"


def test_at_vs_a2t_distinct_at_class_one():
    t = ZT.variable()
    r = element_equal(el(Pow(a, t), ZT), el(Pow(a, 2 * t), ZT), 4)
    assert str(r) == "distinct-at-class-1"


def test_ab_vs_ba_distinct_at_class_two():
    r = element_equal(el(Mul(a, b)), el(Mul(b, a)), 4)
    assert r.outcome is Outcome.DISTINCT and r.witness_class == 2
    assert str(r) == "distinct-at-class-2"


def test_low_precision_gives_unknown():
    R = PadicRing(7, 2, "tracked")
    blind = R(49) / 49  # every digit lost
    r = element_equal(el(Pow(a, blind), R), el(Pow(a, R(1)), R), 2)
    assert r.outcome is Outcome.UNKNOWN and r.witness_class == 1


# -- substitution ---------------------------------------------------------------------

def test_identity_substitution():
    theta = SubstitutionMap.identity(AB)
    w = Comm(Mul(a, b), Inv(a))
    assert substitute(theta, w).term == w


def test_direct_replacement():
    t = ZT.variable()
    theta = SubstitutionMap(("x1", "x2"), AB, {"x1": Pow(a, t), "x2": b}, ZT)
    e = substitute(theta, Mul(Gen("x1"), Gen("x2")))
    assert e.term == Mul(Pow(a, t), b)


def test_substitution_rejects_foreign_generator():
    theta = SubstitutionMap(("x",), AB, {"x": a})
    with pytest.raises(UnboundGenerator):
        substitute(theta, Gen("y"))
    with pytest.raises(UnboundGenerator):
        SubstitutionMap(("x",), AB, {"x": c_})
    with pytest.raises(UnboundGenerator):
        SubstitutionMap(("x", "y"), AB, {"x": a})


def random_theta(rng, ring=INTEGERS):
    X = ("x", "y", "z")[: rng.randint(1, 3)]
    if ring is INTEGERS:
        images = {x: int_term(rng, depth=2) for x in X}
    else:
        images = {x: random_term(rng, AB, ring, degree=2, length=2) for x in X}
    return SubstitutionMap(X, AB, images, ring)


def test_substitution_is_homomorphism():
    rng = random.Random(5)
    for i in range(100):
        ring = ZT if i % 3 == 0 else INTEGERS
        theta = random_theta(rng, ring)
        w1, w2 = int_term(rng, theta.source, 2), int_term(rng, theta.source, 2)
        lhs = substitute(theta, Mul(w1, w2))
        rhs = substitute(theta, w1) * substitute(theta, w2)
        for c in range(1, 5):
            assert lhs.truncate(c) == rhs.truncate(c)


# -- subgroup data --------------------------------------------------------------------

def test_identity_assignment_gives_basis_vectors():
    data = subgroup_truncation_gens(SubstitutionMap.identity(AB), 2)
    assert [g.exponents for g in data.generators] == [(1, 0, 0), (0, 1, 0)]
    assert data.zp_exponents


def test_commutator_squared_generator():
    theta = SubstitutionMap(("x1", "x2"), AB, {"x1": a, "x2": Pow(Comm(a, b), 2)})
    data = subgroup_truncation_gens(theta, 2)
    # [a,b] = [b,a]^-1 in the Hall basis
    assert [g.exponents for g in data.generators] == [(1, 0, 0), (0, 0, -2)]


def test_polynomial_exponent_is_flagged():
    theta = SubstitutionMap(("x1",), AB, {"x1": Pow(a, ZPT.variable())}, ZPT)
    data = subgroup_truncation_gens(theta, 2)
    assert not data.zp_exponents
    assert "not in Z_p" in data.note
    assert data.generators[0].exponents[0] == ZPT.variable()


def test_constant_polynomial_exponents_are_zp():
    theta = SubstitutionMap(("x1",), AB, {"x1": Pow(a, ZPT(3))}, ZPT)
    assert subgroup_truncation_gens(theta, 2).zp_exponents
