import math
from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from prohall.errors import (BudgetExceeded, ContextMismatch, InsufficientPrecision, IntegralityFailure,
                            NotDistinct, StrictModeViolation)
from prohall.rings import (INTEGERS, Equality, Evaluation, Identity, Padic, PadicRing, PolyRing, PrecisionReduce,
                           apply_hom, binomial_coeff, binomial_poly, closure_generate, compose, evaluate_grid,
                           factorial_valuation, finite_differences, poly_binomial, poly_mul, ring_arith,
                           ring_discriminate)

Z7 = PadicRing(7, 12)
Z5 = PadicRing(5, 6)
ZT = PolyRing()
T = ZT.variable()


def brute_binomial(lam, n):
    num = 1
    for k in range(n):
        num *= lam - k
    return Fraction(num, math.factorial(n))


# -- ring_arith ---------------------------------------------------------------

def test_add_integers():
    assert ring_arith(3, 4, "add") == 7


@pytest.mark.parametrize("x", [5, Z7(3), T + 1])
def test_mul_by_zero(x):
    assert ring_arith(x, 0, "mul") == 0


def test_padic_precision_is_min():
    R = PadicRing(5, 6)
    out = ring_arith(R.element(2, 3), R.element(3, 2), "mul")
    assert out.num == 6 % 25 and out.precision == 2
    # full-precision oracle reduced mod 5^2
    assert (2 * 3) % 5 ** 2 == out.residue


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        ring_arith(Z7(1), Z5(1), "add")


# -- binomial_coeff -------------------------------------------------------------

def test_binomial_small():
    assert binomial_coeff(5, 2) == 10
    assert binomial_coeff(-1, 3) == -1


def test_binomial_padic_loses_digit():
    R = PadicRing(5, 6, "tracked")
    out = binomial_coeff(R(12), 5)
    assert factorial_valuation(5, 5) == 1
    assert out.residue == 792 and out.precision == 5
    assert str(out) == "792 mod 5^5"


def test_binomial_strict_rejects_loss():
    with pytest.raises(StrictModeViolation):
        binomial_coeff(PadicRing(5, 6)(12), 5)


def test_binomial_runs_out_of_precision():
    R = PadicRing(5, 1, "tracked")
    with pytest.raises(InsufficientPrecision):
        binomial_coeff(R(12), 5)


def test_small_primes_need_tracked_mode():
    with pytest.raises(ValueError):
        PadicRing(3, 10)
    assert PadicRing(3, 10, "tracked").p == 3


@given(st.integers(-50, 50), st.integers(0, 8))
def test_integer_binomial_matches_falling_factorial(lam, n):
    assert binomial_coeff(lam, n) == brute_binomial(lam, n)


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(0, 8))
def test_tracked_padic_binomial_matches_integer(lam, n):
    R = PadicRing(7, 10, "tracked")
    out = binomial_coeff(R(lam), n)
    assert out.precision == 10 - factorial_valuation(n, 7)
    assert out.compare(brute_binomial(lam, n).numerator) is Equality.EQUAL


# -- polynomials ------------------------------------------------------------------

def test_poly_mul_examples():
    assert poly_mul(T, T).coefficients == (0, 1, 2)
    f = binomial_poly([3, -1, 4])
    assert poly_mul(f, ZT.one()) == f
    assert poly_mul(ZT.basis(1), ZT.basis(2)).coefficients == (0, 0, 2, 3)


def test_poly_binomial_examples():
    assert poly_binomial(ZT.basis(1), 2) == ZT.basis(2)
    assert poly_binomial(2 * T, 2).coefficients == (0, 1, 4)
    assert poly_binomial(binomial_poly([1, 5, 7]), 0) == ZT.one()


def test_apply_hom_examples():
    f = binomial_poly([0, 1, 4])
    assert apply_hom(Evaluation(3), f) == 15
    assert apply_hom(Evaluation(3), f) == apply_hom(Evaluation(3), poly_binomial(2 * T, 2))
    assert apply_hom(Identity(), f) is f
    assert apply_hom(Evaluation(0), binomial_poly([7, 1, 4])) == 7


def test_finite_differences_examples():
    assert finite_differences([0, 1, 4, 9]) == [0, 1, 2, 0]
    assert finite_differences([5, 5, 5]) == [5, 0, 0]
    values = [math.comb(x, 3) for x in range(6)]
    assert finite_differences(values) == [0, 0, 0, 1, 0, 0]


@given(st.lists(st.integers(-100, 100), min_size=1, max_size=9))
def test_differences_invert_evaluation(coeffs):
    assert finite_differences(evaluate_grid(coeffs, len(coeffs))) == coeffs


def test_polynomial_over_zp_keeps_precision():
    R = PolyRing(PadicRing(5, 6, "tracked"))
    t = R.variable()
    assert t.binomial(5).precision == 6 and t.binomial(5) == R.basis(5)
    # a general argument goes through the grid and pays v_5(5!) = 1 digit
    g = (t + 1).binomial(5)
    assert g.precision == 5
    assert g == R.basis(5) + R.basis(4)


def test_integrality_check():
    half = T / 2
    with pytest.raises(IntegralityFailure):
        ZT.to_ring(half)
    assert ZT.to_ring(T * (T - 1) / 2) == ZT.basis(2)


def test_padic_text_round_trip():
    x = Z7.element(123, 5)
    assert Z7.parse(str(x)).compare(x) is Equality.EQUAL
    assert str(x) == "123 mod 7^5"


def test_evaluation_at_padic_point_costs_precision():
    R = PadicRing(5, 8, "tracked")
    P = PolyRing(R)
    f = P.basis(5)
    v = Evaluation(R(7))(f)
    assert v.precision == 8 - 1
    assert v.compare(math.comb(7, 5)) is Equality.EQUAL


def test_precision_reduce_and_compose():
    h = compose(Evaluation(2), PrecisionReduce(3))
    v = h(PolyRing(Z7).basis(2) * 100)
    assert v.precision == 3 and v.compare(100) is Equality.EQUAL


# -- properties over each ring instance ----------------------------------------------

RINGS = {
    "z": (INTEGERS, st.integers(-40, 40)),
    "zp": (PadicRing(11, 10), st.integers(0, 11 ** 10 - 1)),
    "zt": (ZT, st.lists(st.integers(-5, 5), min_size=1, max_size=3)),
}


def _element(ring, raw):
    if ring is INTEGERS:
        return raw
    return ring.coerce(raw)


@pytest.mark.parametrize("kind", sorted(RINGS))
@given(data=st.data())
def test_pascal_and_vandermonde(kind, data):
    ring, strategy = RINGS[kind]
    lam = _element(ring, data.draw(strategy))
    mu = _element(ring, data.draw(strategy))
    n = data.draw(st.integers(0, 7))
    assert binomial_coeff(lam, 0) == 1
    assert binomial_coeff(lam, n) + binomial_coeff(lam, n + 1) == binomial_coeff(lam + 1, n + 1)
    rhs = sum((binomial_coeff(lam, k) * binomial_coeff(mu, n - k) for k in range(n + 1)), 0 * lam)
    assert binomial_coeff(lam + mu, n) == rhs


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4),
       st.lists(st.integers(-4, 4), min_size=1, max_size=4),
       st.integers(-20, 20), st.integers(0, 4))
def test_evaluation_is_a_homomorphism(fc, gc, alpha, n):
    f, g = binomial_poly(fc), binomial_poly(gc)
    ev = Evaluation(alpha)
    assert ev(f * g) == ev(f) * ev(g)
    assert ev(f + g) == ev(f) + ev(g)
    assert ev(f.binomial(n)) == binomial_coeff(ev(f), n)


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4), st.integers(0, 3))
def test_values_of_binomial_polys_are_integers(coeffs, n):
    f = binomial_poly(coeffs).binomial(n)
    for x in range(-5, 6):
        v = f.evaluate(x)
        assert isinstance(v, int)
        assert Fraction(v) == brute_binomial(binomial_poly(coeffs).evaluate(x), n)


# -- closure tower --------------------------------------------------------------------

def test_closure_base_level():
    tower = closure_generate([T], 0, 2)
    assert len(tower.levels) == 1
    assert any(e.value == T for e in tower.level(0))
    assert all(e.value.degree <= 2 for e in tower.level(0))


def test_closure_contains_binomial():
    tower = closure_generate([T], 1, 2)
    assert any(e.value == ZT.basis(2) for e in tower.level(1))


def test_closure_is_integral_and_nested():
    tower = closure_generate([T], 2, 3)
    keys = [{e.value.key() for e in tower.level(i)} for i in range(3)]
    assert keys[0] <= keys[1] <= keys[2]
    for e in tower:
        assert all(isinstance(c, int) for c in e.value.coefficients)


def test_closure_budget():
    with pytest.raises(BudgetExceeded):
        closure_generate([T], 2, 3, max_elements=10)


# -- ring discrimination ---------------------------------------------------------------

def test_discriminate_examples():
    assert ring_discriminate([T, 2 * T, T + 1]).alpha == 2
    assert ring_discriminate([T]).alpha == 1
    assert ring_discriminate([ZT.basis(2), T]).alpha == 1


def test_discriminate_rejects_equal_inputs():
    with pytest.raises(NotDistinct):
        ring_discriminate([T, T])


def test_discriminate_budget():
    # t(t-1)...(t-4) vanishes on 1..4 so the first candidates collide with 0
    f = ZT.basis(5) * 120
    with pytest.raises(BudgetExceeded):
        ring_discriminate([f, ZT.zero()], budget=4)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=1, max_size=4), min_size=2, max_size=5, unique_by=tuple),
       st.integers(0, 100))
def test_discriminate_images_are_distinct(raw, seed):
    polys = [binomial_poly(c) for c in raw]
    keys = {p.key() for p in polys}
    if len(keys) < len(polys):
        return
    hom = ring_discriminate(polys, seed=seed)
    assert hom.alpha != 0
    images = [hom(p) for p in polys]
    assert len(set(images)) == len(images)


def test_padic_discriminate_uses_units_after_small_candidates():
    P = PolyRing(PadicRing(7, 6))
    f = P.variable()
    # every small integer collides: difference is prod_{k=-16..16, k != 0} (t - k)
    g = P.one()
    for k in list(range(1, 17)) + list(range(-16, 0)):
        g = g * (f - k)
    hom = ring_discriminate([g, P.zero()], budget=40, seed=3)
    assert abs(hom.alpha) > 16 and hom.alpha % 7 != 0
