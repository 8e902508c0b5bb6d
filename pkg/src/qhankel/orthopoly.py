"""Orthogonal polynomial families h_n, g_n, H_n and the moment functionals
F_r, G_r they are orthogonal for.

A functional is applied by expanding in the matching falling-factorial basis
and sending basis element k to a^k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

from .exactalg import MPoly, QLaurent
from .qcore import p_poly, q_binomial, q_factorial, q_int, q_pochhammer
from .report import CheckReport, combine
from .rstirling import bigphi, falling, falling_scaled, phi, to_falling_basis

FunctionalKind = Literal["F", "G"]
FamilyKind = Literal["h", "g", "H"]


def _binom2(k: int) -> int:
    return k * (k - 1) // 2


def _q(e: int) -> MPoly:
    return MPoly(QLaurent.q(e))


@dataclass(frozen=True)
class MomentFunctional:
    """F_r(<x>_{r,n}) = a^n  or  G_r(<<x>>_{r,n}) = a^n."""

    kind: FunctionalKind
    r: int

    def __call__(self, f: MPoly) -> MPoly:
        return apply_functional(self, f)


def apply_functional(fun: MomentFunctional, f: MPoly) -> MPoly:
    basis = "plain" if fun.kind == "F" else "scaled"
    return to_falling_basis(f, fun.r, basis).substitute(MPoly.a())


def apply_operator(kind: FunctionalKind, f: MPoly, r: int) -> MPoly:
    """U_r (kind F) or V_r (kind G): replace <x>_{r,k} (resp. <<x>>_{r,k}) by x^k."""
    basis = "plain" if kind == "F" else "scaled"
    return to_falling_basis(f, r, basis).substitute(MPoly.x())


@lru_cache(maxsize=None)
def h_poly(n: int, r: int) -> MPoly:
    """h_n(x, a, r) = sum_k (-a)^k q^C(k,2) [n, k] <x>_{r,n-k}."""
    out = MPoly()
    for k in range(n + 1):
        c = q_binomial(n, k).shift(_binom2(k)) * (-1) ** k
        out = out + MPoly({(0, k): c}) * falling(n - k, r)
    return out


@lru_cache(maxsize=None)
def g_poly(n: int, r: int) -> MPoly:
    """g_n(x, a, r): as h_n but over the scaled basis <<x>>_{r,k}."""
    out = MPoly()
    for k in range(n + 1):
        c = q_binomial(n, k).shift(_binom2(k)) * (-1) ** k
        out = out + MPoly({(0, k): c}) * falling_scaled(n - k, r)
    return out


def big_h_scale(n: int, r: int) -> QLaurent:
    return QLaurent.q(_binom2(n) + r * n)


@lru_cache(maxsize=None)
def big_h_poly(n: int, r: int) -> MPoly:
    """H_n = q^(C(n,2) + rn) g_n, the monic version of g_n."""
    return MPoly(big_h_scale(n, r)) * g_poly(n, r)


def norm_h(n: int, r: int) -> MPoly:
    """F_r(x^n h_n) = (q^r a)^n q^C(n,2) [n]!."""
    return MPoly({(0, n): q_factorial(n).shift(r * n + _binom2(n))})


def norm_H(n: int, r: int) -> MPoly:
    """G_r(x^n H_n) = q^(2 C(n,2) + 2rn) [n]! a^n ((1-q)a; q)_n."""
    one_minus_q = QLaurent({0: 1, 1: -1})
    poch = q_pochhammer(MPoly({(0, 1): one_minus_q}), n)
    return MPoly({(0, n): q_factorial(n).shift(2 * _binom2(n) + 2 * r * n)}) * poch


@dataclass
class OrthFamily:
    """A family h, g or H for fixed r with an append-only cache."""

    kind: FamilyKind
    r: int
    _cache: list[MPoly] = field(default_factory=list, repr=False)

    def __getitem__(self, n: int) -> MPoly:
        build = {"h": h_poly, "g": g_poly, "H": big_h_poly}[self.kind]
        while len(self._cache) <= n:
            self._cache.append(build(len(self._cache), self.r))
        return self._cache[n]

    @property
    def functional(self) -> MomentFunctional:
        return MomentFunctional("F" if self.kind == "h" else "G", self.r)

    def norm(self, n: int) -> MPoly:
        if self.kind == "h":
            return norm_h(n, self.r)
        if self.kind == "H":
            return norm_H(n, self.r)
        # g_n = q^-(C(n,2)+rn) H_n
        s = big_h_scale(n, self.r)
        return MPoly(s ** -2) * norm_H(n, self.r)


def h_recurrence_coeffs(n: int, r: int) -> tuple[MPoly, MPoly]:
    """(b_n, lambda_n) with x h_n = h_{n+1} + b_n h_n + lambda_n h_{n-1}."""
    b = MPoly(q_int(r) + q_int(n).shift(r)) + MPoly.monomial(ea=1, eq=n)
    lam = MPoly({(0, 1): q_int(n).shift(r + n - 1)})
    return b, lam


def H_recurrence_coeffs(n: int, r: int) -> tuple[MPoly, MPoly]:
    """(b_n, lambda_n) with x H_n = H_{n+1} + b_n H_n + lambda_n H_{n-1}."""
    a_lin = QLaurent({2 * n + r: 1}) + QLaurent({2 * n + r - 1: 1}) - QLaurent({n + r - 1: 1})
    b = MPoly(q_int(n + r)) + MPoly({(0, 1): a_lin})
    factor = MPoly(1) + MPoly({(0, 1): QLaurent({n: 1, n - 1: -1})})
    lam = MPoly({(0, 1): q_int(n).shift(2 * (n - 1) + 2 * r)}) * factor
    return b, lam


def check_recurrence_h(n: int, r: int) -> CheckReport:
    """Three-term recurrence for h_n in both of its written forms."""
    if n < 1:
        raise ValueError("n must be at least 1")
    x = MPoly.x()
    b, lam = h_recurrence_coeffs(n, r)
    lhs = x * h_poly(n, r)
    rhs = h_poly(n + 1, r) + b * h_poly(n, r) + lam * h_poly(n - 1, r)
    # h_{n+1} = (x - [n+r] - q^n a) h_n - q^(r+n-1) a [n] h_{n-1}
    alt = (x - MPoly(q_int(n + r)) - MPoly.monomial(ea=1, eq=n)) * h_poly(n, r) - lam * h_poly(n - 1, r)
    additive = q_int(n + r) == q_int(r) + q_int(n).shift(r)
    return combine("recurrence-h", {"n": n, "r": r},
                   [("three-term", lhs == rhs), ("explicit-form", alt == h_poly(n + 1, r)),
                    ("[n+r]=[r]+q^r[n]", additive)])


def check_recurrence_H(n: int, r: int) -> CheckReport:
    if n < 1:
        raise ValueError("n must be at least 1")
    b, lam = H_recurrence_coeffs(n, r)
    lhs = MPoly.x() * big_h_poly(n, r)
    rhs = big_h_poly(n + 1, r) + b * big_h_poly(n, r) + lam * big_h_poly(n - 1, r)
    # the unnormalized g-form, divided through by q^(n+r)
    x = MPoly.x()
    g_lam = MPoly({(0, 1): q_int(n).shift(r + n - 1)}) + MPoly({(0, 2): QLaurent({3 * n - 2 + r: 1, 2 * n - 2 + r: -1})})
    g_rhs = _q(n + r) * g_poly(n + 1, r) + b * g_poly(n, r) + g_lam * g_poly(n - 1, r)
    return combine("recurrence-H", {"n": n, "r": r},
                   [("three-term", lhs == rhs), ("g-form", x * g_poly(n, r) == g_rhs)])


def check_orthogonality(family: OrthFamily, n: int, k: int) -> CheckReport:
    """L(P_n P_k) = [n = k] * norm_n for the family's functional L."""
    L = family.functional
    got = L(family[n] * family[k])
    want = family.norm(n) if n == k else MPoly()
    parts = [("product", got == want)]
    if family.kind == "h" and n > 0:
        # F_r(h_n) = p_n(a, a) = 0
        pn_aa = p_poly(n).subs_x(MPoly.a())
        parts.append(("vanishing", L(family[n]).is_zero() and pn_aa.is_zero()))
    return combine("orthogonality", {"family": family.kind, "r": family.r, "n": n, "k": k}, parts)


def check_moment_orthogonality(kind: FamilyKind, n: int, r: int) -> CheckReport:
    """L(x^k P_n) = 0 for k < n and lc(P_n) L(x^n P_n) = norm_n = L(P_n^2)."""
    fam = OrthFamily(kind, r)
    L = fam.functional
    pn = fam[n]
    parts = []
    xk = MPoly(1)
    for k in range(n):
        parts.append((f"k={k}", L(xk * pn).is_zero()))
        xk = xk * MPoly.x()
    parts.append(("norm", pn.leading_x_coeff() * L(xk * pn) == fam.norm(n)))
    if kind in ("H", "g"):
        parts.append(("norm-square", L(pn * pn) == fam.norm(n)))
    return combine("moment-orthogonality", {"family": kind, "n": n, "r": r}, parts)


def check_basis_images(n: int, r: int) -> CheckReport:
    """U_r h_n = p_n, V_r g_n = p_n, U_r x^n = phi_n, V_r x^n = Phi_n."""
    xn = MPoly.monomial(ex=n)
    parts = [
        ("U h = p", apply_operator("F", h_poly(n, r), r) == p_poly(n)),
        ("V g = p", apply_operator("G", g_poly(n, r), r) == p_poly(n)),
        ("U x^n = phi", apply_operator("F", xn, r) == phi(n, r)),
        ("V x^n = Phi", apply_operator("G", xn, r) == bigphi(n, r)),
        ("F x^n = phi(a)", apply_functional(MomentFunctional("F", r), xn) == phi(n, r).swap_xa()),
        ("G x^n = Phi(a)", apply_functional(MomentFunctional("G", r), xn) == bigphi(n, r).swap_xa()),
    ]
    return combine("basis-images", {"n": n, "r": r}, parts)
