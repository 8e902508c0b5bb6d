"""q-integers, q-factorials, q-binomials, q-Pochhammer symbols, the q-derivative,
the polynomials p_n(x, a) and the truncated q-exponential series."""

from __future__ import annotations

from functools import lru_cache

from .exactalg import MPoly, QLaurent, QRational, TruncSeries


@lru_cache(maxsize=None)
def q_int(n: int) -> QLaurent:
    """The q-integer [n] = (1 - q^n)/(1 - q) as a Laurent polynomial.

    For n < 0 this is -q^n [-n], i.e. -(q^n + ... + q^-1).
    """
    if n >= 0:
        return QLaurent({i: 1 for i in range(n)})
    return QLaurent({i: -1 for i in range(n, 0)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> QLaurent:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    if n == 0:
        return QLaurent(1)
    return q_factorial(n - 1) * q_int(n)


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> QLaurent:
    """Gaussian binomial via [n, k] = [n-1, k-1] + q^k [n-1, k]; zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return QLaurent()
    if k == 0 or k == n:
        return QLaurent(1)
    return q_binomial(n - 1, k - 1) + q_binomial(n - 1, k).shift(k)


def q_pochhammer(t: MPoly, n: int) -> MPoly:
    """(t; q)_n = prod_{j<n} (1 - q^j t)."""
    if n < 0:
        raise ValueError("q_pochhammer needs n >= 0")
    out = MPoly(1)
    for j in range(n):
        out = out * (MPoly(1) - t * MPoly(QLaurent.q(j)))
    return out


def q_derivative(f: MPoly) -> MPoly:
    """D x^n = [n] x^(n-1), extended linearly; ``a`` is a constant."""
    return MPoly.from_triples(
        (ex - 1, ea, eq + i, c)
        for ex, ea, eq, c in f.triples()
        if ex > 0
        for i in range(ex)
    )


def q_derivative_difference(f: MPoly) -> MPoly:
    """D f = (f(x) - f(qx)) / (x - qx), computed literally with exact division.

    Independent of :func:`q_derivative`; used to cross-check it.
    """
    num = f - f.substitute_x_scale(QLaurent.q(1))
    return num.exact_div(MPoly.x() - MPoly.monomial(ex=1, eq=1))


@lru_cache(maxsize=None)
def p_poly(n: int) -> MPoly:
    """p_n(x, a) = prod_{k<n} (x - q^k a)."""
    if n < 0:
        raise ValueError("p_poly needs n >= 0")
    if n == 0:
        return MPoly(1)
    return p_poly(n - 1) * (MPoly.x() - MPoly.monomial(ea=1, eq=n - 1))


def p_poly_expansion(n: int) -> MPoly:
    """sum_k (-a)^k q^C(k,2) [n, k] x^(n-k)."""
    out = MPoly()
    for k in range(n + 1):
        c = q_binomial(n, k).shift(k * (k - 1) // 2)
        if k % 2:
            c = -c
        out = out + MPoly({(n - k, k): c})
    return out


def e_series(order: int) -> TruncSeries:
    """The q-exponential series sum x^n/[n]! truncated at ``order``."""
    if order < 1:
        raise ValueError("order must be at least 1")
    return TruncSeries([QRational(1, q_factorial(n)) for n in range(order)])
