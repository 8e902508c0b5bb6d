from math import factorial

import pytest

from qhankel.exactalg import MPoly, QLaurent
from qhankel.orthopoly import (
    MomentFunctional,
    OrthFamily,
    apply_functional,
    apply_operator,
    big_h_poly,
    check_basis_images,
    check_moment_orthogonality,
    check_orthogonality,
    check_recurrence_H,
    check_recurrence_h,
    g_poly,
    h_poly,
    norm_H,
    norm_h,
)
from qhankel.qcore import p_poly, q_factorial, q_int
from qhankel.rstirling import bigphi, falling, phi

q = QLaurent.q(1)
one = QLaurent(1)
x, a = MPoly.x(), MPoly.a()


def test_h_examples():
    assert h_poly(0, 2) == MPoly(1)
    for r in range(4):
        assert h_poly(1, r) == x - MPoly(q_int(r)) - a
    want = x * x - x - MPoly({(1, 1): one + q}) + MPoly.monomial(ea=2, eq=1)
    assert h_poly(2, 0) == want


def test_g_and_H_examples():
    assert g_poly(0, 1) == MPoly(1)
    assert g_poly(1, 0) == x - a
    assert g_poly(1, 1) == MPoly(QLaurent.q(-1)) * (x - MPoly(1)) - a
    assert big_h_poly(0, 3) == MPoly(1)
    assert big_h_poly(1, 1) == x - MPoly(1) - MPoly.monomial(ea=1, eq=1)
    assert big_h_poly(1, 0) == x - a


def test_monic_and_leading_coefficients():
    for r in range(-1, 4):
        for n in range(7):
            assert h_poly(n, r).leading_x_coeff() == MPoly(1)
            assert big_h_poly(n, r).leading_x_coeff() == MPoly(1)
            assert g_poly(n, r).leading_x_coeff() == MPoly(QLaurent.q(-n * (n - 1) // 2 - r * n))


def test_functional_examples():
    for r in range(-1, 4):
        F, G = MomentFunctional("F", r), MomentFunctional("G", r)
        assert F(MPoly(1)) == MPoly(1)
        assert F(x) == MPoly(q_int(r)) + a
        assert G(x) == MPoly(q_int(r)) + MPoly.monomial(ea=1, eq=r)
        assert apply_functional(F, falling(3, r)) == MPoly.monomial(ea=3)


def test_functional_moments_are_phi():
    for r in range(4):
        for n in range(8):
            xn = MPoly.monomial(ex=n)
            assert MomentFunctional("F", r)(xn) == phi(n, r).swap_xa()
            assert MomentFunctional("G", r)(xn) == bigphi(n, r).swap_xa()
            assert apply_operator("F", xn, r) == phi(n, r)


def test_operator_images_of_families():
    for r in range(-2, 5):
        for n in range(7):
            assert apply_operator("F", h_poly(n, r), r) == p_poly(n)
            assert apply_operator("G", g_poly(n, r), r) == p_poly(n)
            assert check_basis_images(n, r).passed


def test_recurrence_examples():
    assert check_recurrence_h(1, 0).passed
    for r in range(4):
        assert check_recurrence_h(1, r).passed
    assert check_recurrence_H(1, 0).passed
    assert check_recurrence_H(2, 1).passed
    for n in range(9):
        for r in range(9):
            assert q_int(n + r) == q_int(r) + q_int(n).shift(r)


@pytest.mark.parametrize("r", range(-2, 5))
def test_recurrences_up_to_8(r):
    for n in range(1, 9):
        assert check_recurrence_h(n, r).passed
        assert check_recurrence_H(n, r).passed


def test_H_recurrence_coefficient_at_n1():
    from qhankel.orthopoly import H_recurrence_coeffs

    for r in range(4):
        _, lam = H_recurrence_coeffs(1, r)
        want = MPoly.monomial(ea=1, eq=2 * r) * (MPoly(1) + MPoly({(0, 1): q - one}))
        assert lam == want


def test_norm_examples():
    assert norm_h(0, 3) == MPoly(1)
    for r in range(4):
        assert norm_h(1, r) == MPoly.monomial(ea=1, eq=r)
    assert norm_h(2, 0) == MPoly({(0, 2): QLaurent({1: 1, 2: 1})})
    assert norm_H(0, 2) == MPoly(1)
    base = MPoly(1) + MPoly({(0, 1): q - one})
    assert norm_H(1, 0) == a * base
    assert norm_H(1, 1) == MPoly.monomial(ea=1, eq=2) * base


def test_norm_H_classical_limit():
    for n in range(7):
        assert norm_H(n, 0).at_q_one() == MPoly({(0, n): factorial(n)})
        assert norm_h(n, 0).at_q_one() == MPoly({(0, n): factorial(n)})


def test_orthogonality_examples():
    for r in range(4):
        rep = check_orthogonality(OrthFamily("h", r), 1, 0)
        assert rep.passed
        assert MomentFunctional("F", r)(h_poly(1, r)).is_zero()
    assert check_orthogonality(OrthFamily("H", 1), 2, 1).passed
    assert MomentFunctional("G", 1)(big_h_poly(2, 1) * big_h_poly(1, 1)).is_zero()
    for n in range(6):
        for r in range(4):
            assert MomentFunctional("F", r)(h_poly(n, r) * h_poly(n, r)) == norm_h(n, r)


@pytest.mark.parametrize("r", range(4))
def test_moment_orthogonality(r):
    for n in range(7):
        for kind in ("h", "g", "H"):
            rep = check_moment_orthogonality(kind, n, r)
            assert rep.passed, rep.detail


def test_family_cache_and_norms():
    fam = OrthFamily("g", 2)
    assert fam[3] == g_poly(3, 2)
    assert len(fam._cache) == 4
    for n in range(4):
        for k in range(4):
            assert check_orthogonality(fam, n, k).passed


def test_norm_h_matches_functional():
    for r in range(4):
        for n in range(7):
            got = MomentFunctional("F", r)(MPoly.monomial(ex=n) * h_poly(n, r))
            assert got == norm_h(n, r)
            assert norm_h(n, r) == MPoly({(0, n): q_factorial(n).shift(r * n + n * (n - 1) // 2)})
