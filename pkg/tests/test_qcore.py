from fractions import Fraction
from math import comb

import pytest

from qhankel.exactalg import MPoly, QLaurent, QRational, TruncSeries
from qhankel.qcore import (
    e_series,
    p_poly,
    p_poly_expansion,
    q_binomial,
    q_derivative,
    q_derivative_difference,
    q_factorial,
    q_int,
    q_pochhammer,
)

from oracles import q_binomial_value, q_int_value

q = QLaurent.q(1)
one = QLaurent(1)
x, a = MPoly.x(), MPoly.a()


def test_q_int_examples():
    assert q_int(0) == QLaurent()
    assert q_int(3) == QLaurent({0: 1, 1: 1, 2: 1})
    assert q_int(-2) == QLaurent({-2: -1, -1: -1})


@pytest.mark.parametrize("m", range(-8, 9))
def test_q_int_addition_law(m):
    for n in range(-8, 9):
        assert q_int(m + n) == q_int(m) + q_int(n).shift(m)


@pytest.mark.parametrize("n", range(-6, 7))
def test_q_int_matches_quotient(n):
    for t in (Fraction(1, 2), Fraction(3), Fraction(-2, 3)):
        assert q_int(n).evaluate(t) == q_int_value(n, t)
    assert q_int(n).evaluate(1) == n


def test_q_factorial_examples():
    assert q_factorial(0) == one
    assert q_factorial(2) == one + q
    assert q_factorial(3) == QLaurent({0: 1, 1: 2, 2: 2, 3: 1})


def test_q_binomial_examples():
    assert q_binomial(5, 0) == one
    assert q_binomial(2, 1) == one + q
    assert q_binomial(4, 2) == QLaurent({0: 1, 1: 1, 2: 2, 3: 1, 4: 1})
    assert q_binomial(3, -1).is_zero() and q_binomial(3, 4).is_zero()


def test_q_binomial_symmetry_and_factorial_form():
    for n in range(13):
        for k in range(n + 1):
            assert q_binomial(n, k) == q_binomial(n, n - k)
    for n in range(11):
        for k in range(n + 1):
            assert q_binomial(n, k) * q_factorial(k) * q_factorial(n - k) == q_factorial(n)


def test_q_binomial_against_product_formula():
    for n in range(9):
        for k in range(n + 1):
            for t in (Fraction(1, 3), Fraction(2)):
                assert q_binomial(n, k).evaluate(t) == q_binomial_value(n, k, t)


def test_q_equals_one_degeneration():
    for n in range(11):
        assert q_int(n).evaluate(1) == n
        for k in range(n + 1):
            assert q_binomial(n, k).evaluate(1) == comb(n, k)


def test_q_pochhammer_examples():
    t = MPoly({(1, 0): one - q})
    assert q_pochhammer(t, 0) == MPoly(1)
    assert q_pochhammer(x, 1) == MPoly(1) - x
    want = (MPoly(1) - t) * (MPoly(1) - t * MPoly(q))
    assert q_pochhammer(t, 2) == want


def test_q_derivative_examples():
    assert q_derivative(MPoly.monomial(ex=3)) == MPoly({(2, 0): q_int(3)})
    assert q_derivative(MPoly(7)).is_zero()
    assert q_derivative(p_poly(2)) == MPoly(q_int(2)) * p_poly(1)


def test_q_derivative_matches_difference_quotient():
    f = MPoly.from_triples([(4, 1, 2, 3), (2, 0, -1, Fraction(1, 2)), (0, 2, 0, 5), (1, 0, 0, -1)])
    assert q_derivative(f) == q_derivative_difference(f)
    for n in range(8):
        assert q_derivative(MPoly.monomial(ex=n)) == q_derivative_difference(MPoly.monomial(ex=n))


def test_p_poly_examples():
    assert p_poly(0) == MPoly(1)
    assert p_poly(1) == x - a
    assert p_poly(2) == x * x - MPoly({(1, 1): one + q}) + MPoly.monomial(ea=2, eq=1)


@pytest.mark.parametrize("n", range(11))
def test_p_poly_properties(n):
    assert p_poly(n) == p_poly_expansion(n)
    if n:
        assert q_derivative(p_poly(n)) == MPoly(q_int(n)) * p_poly(n - 1)
        assert p_poly(n).subs_x(a).is_zero()


def test_e_series_examples():
    assert e_series(1) == TruncSeries([1])
    assert e_series(3) == TruncSeries([1, 1, QRational(one, one + q)])
    e = e_series(8)
    assert e.q_derivative() == e_series(7)
    with pytest.raises(ValueError):
        e_series(0)
