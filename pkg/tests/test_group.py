import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from prohall.collect import naive_collect
from prohall.errors import IntegralityFailure, SizeCap, StrictModeViolation
from prohall.group import FreeHallGroup, axiom_suite, free_hall_group, mutated_bch
from prohall.rings import INTEGERS, Equality, PadicRing, PolyRing, binomial_coeff

Z7 = PadicRing(7, 12)


def word_product(G, word):
    return G.product([G.generator(i, e) for i, e in word])


# -- multiplication -----------------------------------------------------------------

def test_ordered_product():
    G = free_hall_group(2, 3)
    a, b = G.gens()
    assert (a * b).exponents == (1, 1, 0, 0, 0)


def test_ba_collects_to_ab_commutator():
    G = free_hall_group(2, 2)
    a, b = G.gens()
    assert list((b * a).exponents) == [1, 1, 1] == naive_collect([(1, 1), (0, 1)], 2, 2)


def test_inverse_law():
    G = free_hall_group(3, 4)
    g = G.random_element(random.Random(5))
    assert (g * g.inverse()).is_identity()
    assert G.inverse(G.identity()).is_identity()


def test_group_laws_random():
    rng = random.Random(11)
    for n, c in [(2, 5), (3, 4)]:
        G = free_hall_group(n, c)
        for _ in range(5):
            x, y, z = (G.random_element(rng, 5) for _ in range(3))
            assert (x * y) * z == x * (y * z)
            assert x * G.identity() == x == G.identity() * x


# -- powers -----------------------------------------------------------------------------

def test_power_zero():
    G = free_hall_group(2, 3)
    assert G.power(G.random_element(random.Random(0)), 0).is_identity()


def test_power_of_ab_polynomial():
    ZT = PolyRing()
    t = ZT.variable()
    G = free_hall_group(2, 2, ZT)
    a, b = G.gens()
    g = G.power(a * b, t)
    assert g.exponents == (t, t, t.binomial(2))
    Gz = free_hall_group(2, 2)
    az, bz = Gz.gens()
    for lam in range(6):
        assert list(Gz.int_power(az * bz, lam).exponents) == [lam, lam, binomial_coeff(lam, 2)]


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6), st.integers(-6, 6))
def test_integer_power_matches_iteration(seed, k):
    G = free_hall_group(2, 4)
    g = G.random_element(random.Random(seed), 4)
    assert G.power(g, k) == G.int_power(g, k)


def test_power_laws_over_each_ring():
    rng = random.Random(2)
    for ring in (INTEGERS, Z7, PolyRing(), PolyRing(Z7)):
        G = free_hall_group(2, 3, ring)
        for _ in range(3):
            g = G.random_element(rng, 5)
            a, b = G.random_exponent(rng, 5), G.random_exponent(rng, 5)
            assert G.power(G.power(g, a), b) == G.power(g, a * b)
            assert G.power(g, a + b) == G.power(g, a) * G.power(g, b)


# -- commutators and projections ---------------------------------------------------------

def test_commutator_examples():
    G = free_hall_group(2, 2)
    a, b = G.gens()
    assert G.commutator(a, a).is_identity()
    assert list(G.commutator(a, b).exponents) == [0, 0, -1] == naive_collect([(0, -1), (1, -1), (0, 1), (1, 1)], 2, 2)


def test_class_project_examples():
    G = free_hall_group(2, 2)
    a, b = G.gens()
    g = a * b * G.basis_element(2)
    low = G.class_project(g, 1)
    assert low.exponents == (1, 1) and low.group.c == 1
    assert G.class_project(g, 2) is g


def test_class_project_is_homomorphism():
    rng = random.Random(4)
    G = free_hall_group(2, 4)
    for _ in range(20):
        g, h = G.random_element(rng), G.random_element(rng)
        for c in (1, 2, 3):
            assert G.class_project(g * h, c) == G.class_project(g, c) * G.class_project(h, c)


# -- Petresco words ------------------------------------------------------------------------

def test_petresco_examples():
    G = free_hall_group(2, 2)
    a, b = G.gens()
    assert G.petresco(1, [a, b]) == a * b
    tau2 = G.petresco(2, [a, b])
    assert list(tau2.exponents) == [0, 0, -1]
    # a^2 b^2 = (ab)^2 [b,a]^-1, cross-checked with the collection oracle
    assert naive_collect([(0, 2), (1, 2)], 2, 2) == list((G.int_power(a * b, 2) * tau2).exponents)


def test_petresco_weight_property():
    rng = random.Random(8)
    G = free_hall_group(2, 4)
    for _ in range(5):
        xs = [G.random_element(rng, 5) for _ in range(rng.randint(2, 3))]
        for i, tau in enumerate(G.petresco_words(xs), start=1):
            assert all(w >= i for w in tau.weight_support())


def test_hall_petresco_against_iteration():
    rng = random.Random(9)
    G = free_hall_group(2, 4)
    xs = [G.random_element(rng, 4) for _ in range(2)]
    taus = G.petresco_words(xs)
    for lam in range(7):
        brute = G.product([G.int_power(x, lam) for x in xs])
        lhs, rhs = G.hall_petresco_sides(xs, lam, taus)
        assert lhs == brute == rhs


# -- axiom suite --------------------------------------------------------------------------

def test_axioms_abelian():
    assert axiom_suite(free_hall_group(1, 3), trials=10).passed


def test_axioms_integers_class_four():
    report = axiom_suite(free_hall_group(2, 4), trials=15, seed=1)
    assert report.passed, report.failures[:1]


def test_axioms_padic_strict():
    assert axiom_suite(free_hall_group(2, 4, Z7), trials=10, seed=2).passed


def test_axioms_polynomial_exponents():
    assert axiom_suite(free_hall_group(2, 3, PolyRing(Z7)), trials=4, seed=3, bound=2).passed


def test_mutated_bch_is_caught():
    G = free_hall_group(2, 4)
    broken = FreeHallGroup(2, 4, algebra=mutated_bch(G.algebra))
    report = axiom_suite(broken, trials=10, seed=0)
    assert not report.passed
    conj = [f for f in report.failures if f.family == "conjugation"]
    assert conj and "g" in conj[0].witness


def test_strict_mode_requires_large_prime():
    with pytest.raises(StrictModeViolation):
        FreeHallGroup(2, 5, PadicRing(5, 10))
    FreeHallGroup(2, 5, PadicRing(5, 10, "tracked"))


def test_tracked_small_prime_charges_precision():
    R = PadicRing(2, 10, "tracked")
    G = FreeHallGroup(2, 3, R)
    a, b = G.gens()
    g = G.power(a * b, R(3))
    # the [b,a] exponent of (ab)^3 is C(3,2); the 1/2 in BCH costs a binary digit
    assert g.exponents[2].compare(3) is Equality.EQUAL
    assert min(e.precision for e in g.exponents) < 10


def test_integrality_failure_is_reported():
    G = free_hall_group(2, 2)
    with pytest.raises(IntegralityFailure):
        G.lie_to_grp([mpq(1, 2), 0, 0])
    assert G.lie_to_grp([1, 1, mpq(-1, 2)]) == (1, 1, 0)


# -- collection oracle ------------------------------------------------------------------------

def test_collect_examples():
    assert naive_collect([(1, 1), (0, 1)], 2, 2) == [1, 1, 1]
    assert naive_collect([(0, 1), (1, 1), (0, 1), (1, 1)], 2, 2) == [2, 2, 1]


def test_collect_cap():
    with pytest.raises(SizeCap):
        naive_collect([(0, 1)], 2, 5)


@pytest.mark.parametrize("n,c", [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4)])
def test_collect_agrees_with_bch_arithmetic(n, c):
    rng = random.Random(n * 10 + c)
    G = free_hall_group(n, c)
    for _ in range(25):
        word = [(rng.randrange(n), rng.randint(-3, 3)) for _ in range(rng.randint(1, 8))]
        assert list(word_product(G, word).exponents) == naive_collect(word, n, c)


# -- text and JSON -------------------------------------------------------------------------------

def test_identity_prints_as_one():
    assert str(free_hall_group(2, 3).identity()) == "1"


def test_normal_form_text():
    G = free_hall_group(2, 2)
    a, b = G.gens()
    assert str(b * a) == "a^{1} b^{1} [b,a]^{1}"
