"""Generalized q-Stirling numbers S(n, k, r), falling factorials in the shifted
q-integer nodes, the exponential-type polynomial families phi_n and Phi_n, and
the identity checks that tie them together.

``r`` is always an integer, so every coefficient stays a Laurent polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Literal

from .exactalg import MPoly, QLaurent, QRational, TruncSeries, series_inverse, series_mul
from .qcore import e_series, q_binomial, q_derivative, q_derivative_difference, q_int
from .report import CheckReport, combine

BasisKind = Literal["plain", "scaled"]


def _binom2(k: int) -> int:
    return k * (k - 1) // 2


@lru_cache(maxsize=None)
def stirling(n: int, k: int, r: int) -> QLaurent:
    """S(n, k, r) = S(n-1, k-1, r) + [k+r] S(n-1, k, r), S(0, k, r) = [k = 0]."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k > n:
        return QLaurent()
    if n == 0:
        return QLaurent(1)
    if k == 0:
        return q_int(r) ** n
    return stirling(n - 1, k - 1, r) + q_int(k + r) * stirling(n - 1, k, r)


@dataclass(frozen=True)
class StirlingTable:
    r: int
    entries: dict[tuple[int, int], QLaurent]

    @classmethod
    def build(cls, n_max: int, r: int) -> StirlingTable:
        return cls(r, {(n, k): stirling(n, k, r) for n in range(n_max + 1) for k in range(n + 1)})

    def row(self, n: int) -> list[QLaurent]:
        return [self.entries[(n, k)] for k in range(n + 1)]

    @property
    def n_max(self) -> int:
        return max(n for n, _ in self.entries)


@lru_cache(maxsize=None)
def falling(k: int, r: int) -> MPoly:
    """<x>_{r,k} = prod_{j<k} (x - [r+j])."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return MPoly(1)
    return falling(k - 1, r) * (MPoly.x() - MPoly(q_int(r + k - 1)))


@lru_cache(maxsize=None)
def falling_scaled(k: int, r: int) -> MPoly:
    """<<x>>_{r,k} = q^(-C(k,2) - rk) <x>_{r,k}."""
    return falling(k, r) * MPoly(QLaurent.q(-_binom2(k) - r * k))


def scaled_weight(k: int, r: int) -> QLaurent:
    """q^(C(k,2) + rk): the factor turning a plain-basis coefficient into a scaled one."""
    return QLaurent.q(_binom2(k) + r * k)


@dataclass(frozen=True)
class FallingBasisCoeffs:
    r: int
    coeffs: tuple[MPoly, ...]
    basis_kind: BasisKind = "plain"

    def basis(self, k: int) -> MPoly:
        return falling(k, self.r) if self.basis_kind == "plain" else falling_scaled(k, self.r)

    def reconstruct(self) -> MPoly:
        out = MPoly()
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + c * self.basis(k)
        return out

    def substitute(self, var: MPoly) -> MPoly:
        """Replace basis element k by ``var**k``."""
        out = MPoly()
        power = MPoly(1)
        for c in self.coeffs:
            if c:
                out = out + c * power
            power = power * var
        return out


def to_falling_basis(f: MPoly, r: int, basis_kind: BasisKind = "plain") -> FallingBasisCoeffs:
    """Expand ``f`` in the basis <x>_{r,k} (or <<x>>_{r,k}) by repeated
    synthetic division by x - [r], x - [r+1], ...

    The resulting coefficients are polynomials in ``a`` (and q) only.
    """
    if basis_kind not in ("plain", "scaled"):
        raise ValueError(f"unknown basis kind {basis_kind!r}")
    xc = f.x_coeffs()
    d = f.degree_x()
    cur = [xc.get(i, MPoly()) for i in range(d + 1)]
    out = []
    j = 0
    while cur:
        node = MPoly(q_int(r + j))
        carry = MPoly()
        quo = [MPoly()] * (len(cur) - 1)
        for i in range(len(cur) - 1, -1, -1):
            val = cur[i] + node * carry if carry else cur[i]
            if i > 0:
                quo[i - 1] = val
            else:
                out.append(val)
            carry = val
        cur = quo
        j += 1
    if basis_kind == "scaled":
        out = [c * MPoly(scaled_weight(k, r)) for k, c in enumerate(out)]
    return FallingBasisCoeffs(r, tuple(out), basis_kind)


@lru_cache(maxsize=None)
def phi(n: int, r: int) -> MPoly:
    """phi_n(x, r) = sum_k S(n, k, r) x^k."""
    return MPoly({(k, 0): stirling(n, k, r) for k in range(n + 1)})


@lru_cache(maxsize=None)
def bigphi(n: int, r: int) -> MPoly:
    """Phi_n(x, r) = sum_k S(n, k, r) q^C(k,2) (q^r x)^k."""
    return MPoly({(k, 0): stirling(n, k, r).shift(_binom2(k) + r * k) for k in range(n + 1)})


def apply_op_A(f: MPoly, r: int) -> MPoly:
    """x(q^r + (q-1) q^r x D + x^-r D x^r) on polynomials: x^n -> [r+n] x^n + q^(r+n) x^(n+1)."""
    out = []
    for ex, ea, eq, c in f.triples():
        for e, v in q_int(r + ex).terms.items():
            out.append((ex, ea, eq + e, c * v))
        out.append((ex + 1, ea, eq + r + ex, c))
    return MPoly.from_triples(out)


def apply_op_U_conj(f: MPoly, r: int) -> MPoly:
    """x(1 + x^-r D x^r) on polynomials: x^n -> x^(n+1) + [r+n] x^n."""
    out = []
    for ex, ea, eq, c in f.triples():
        out.append((ex + 1, ea, eq, c))
        for e, v in q_int(r + ex).terms.items():
            out.append((ex, ea, eq + e, c * v))
    return MPoly.from_triples(out)


def conj_derivative_times_x(f: MPoly, r: int) -> MPoly:
    """x * x^-r D x^r f with D as the literal difference quotient (needs r >= 0)."""
    if r < 0:
        raise ValueError("literal conjugation needs r >= 0")
    xr = MPoly.monomial(ex=r)
    return (q_derivative_difference(xr * f) * MPoly.x()).exact_div(xr)


def op_A_literal(f: MPoly, r: int) -> MPoly:
    """x(q^r + (q-1) q^r x D + x^-r D x^r) f built from the difference quotient (r >= 0)."""
    qr = MPoly(QLaurent.q(r))
    qm1 = MPoly(QLaurent({1: 1, 0: -1}))
    x = MPoly.x()
    return x * qr * f + x * x * qm1 * qr * q_derivative_difference(f) + conj_derivative_times_x(f, r)


def op_U_conj_literal(f: MPoly, r: int) -> MPoly:
    return MPoly.x() * f + conj_derivative_times_x(f, r)


# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------


def check_expansion(n: int, r: int) -> CheckReport:
    """sum_k S(n, k, r) <x>_{r,k} = x^n, plus the basis conversion of x^n."""
    lhs = MPoly()
    for k in range(n + 1):
        lhs = lhs + MPoly(stirling(n, k, r)) * falling(k, r)
    conv = to_falling_basis(MPoly.monomial(ex=n), r)
    conv_ok = len(conv.coeffs) == n + 1 and all(
        conv.coeffs[k] == MPoly(stirling(n, k, r)) for k in range(n + 1)
    )
    return combine("expansion", {"n": n, "r": r},
                   [("sum", lhs == MPoly.monomial(ex=n)), ("basis-conversion", conv_ok)])


def check_generating_function(k: int, r: int, order: int) -> CheckReport:
    """Expand z^k / prod_{j=0..k} (1 - [r+j] z) and compare with S(n, k, r), n < order."""
    params = {"k": k, "r": r, "order": order}
    if order <= k:
        raise ValueError("order must exceed k")
    denom = TruncSeries.one(order)
    for j in range(k + 1):
        denom = series_mul(denom, TruncSeries([1, -q_int(r + j)], order))
    zk = TruncSeries([0] * k + [1], order)
    rhs = series_mul(zk, series_inverse(denom))
    if not rhs.all_polynomial():
        return CheckReport("generating-function", params, False, "non-polynomial coefficient")
    bad = [n for n in range(order) if rhs[n] != QRational(stirling(n, k, r))]
    return CheckReport("generating-function", params, not bad, f"mismatch at n={bad}" if bad else "")


def dobinski_rhs(n: int, r: int, order: int) -> TruncSeries:
    """sum_{k<order} [r+k]^n x^k / [k]!."""
    e = e_series(order)
    return TruncSeries([e[k] * (q_int(r + k) ** n) for k in range(order)])


def check_dobinski(n: int, r: int, order: int) -> CheckReport:
    """e(x) Phi_n(x, r) = sum_k [r+k]^n x^k/[k]! as truncated series, together
    with the monomial eigen-relation x^-r (xD)^n x^(r+k) = [r+k]^n x^k."""
    params = {"n": n, "r": r, "order": order}
    if order < n + 2:
        raise ValueError("order must be at least n + 2")
    phin = bigphi(n, r)
    lhs = series_mul(e_series(order), TruncSeries([phin.coeff(k) for k in range(order)], order))
    series_ok = lhs == dobinski_rhs(n, r, order)

    eigen_ok = True
    for k in range(order):
        m = r + k
        if m < 0:
            continue  # x^(r+k) is not a polynomial; the relation is formal there
        f = MPoly.monomial(ex=m)
        for _ in range(n):
            f = MPoly.x() * q_derivative_difference(f)
        got = f.exact_div(MPoly.monomial(ex=r)) if r > 0 else f * MPoly.monomial(ex=-r)
        if got != MPoly(q_int(m) ** n) * MPoly.monomial(ex=k):
            eigen_ok = False
            break

    # De(x) = e(x), order reduced by one
    e = e_series(order)
    de_ok = e.q_derivative() == e_series(order - 1)
    return combine("dobinski", params, [("series", series_ok), ("eigen", eigen_ok), ("De=e", de_ok)])


def check_bigphi_recurrences(n: int, r: int) -> CheckReport:
    """Phi_n = A_r Phi_{n-1} and Phi_n = q^r x Phi_{n-1}(qx) + x^(1-r) D x^r Phi_{n-1}."""
    prev = bigphi(n - 1, r)
    cur = bigphi(n, r)
    via_a = apply_op_A(prev, r) == cur
    # x^(1-r) D x^r acts on x^m as [r+m] x^m
    conj = MPoly.from_triples(
        (ex, ea, eq + e, c * v) for ex, ea, eq, c in prev.triples() for e, v in q_int(r + ex).terms.items()
    )
    shifted = MPoly.monomial(ex=1, eq=r) * prev.substitute_x_scale(QLaurent.q(1))
    via_shift = shifted + conj == cur
    parts = [("A-operator", via_a), ("shift-form", via_shift)]
    if r >= 0:
        parts.append(("A-literal", op_A_literal(prev, r) == cur))
    return combine("bigphi-recurrence", {"n": n, "r": r}, parts)


def check_phi_operator(n: int, r: int) -> CheckReport:
    """U_r x U_r^-1 on monomials: the monomial rule equals the literal conjugation."""
    f = MPoly.monomial(ex=n)
    rule = apply_op_U_conj(f, r)
    expected = MPoly.monomial(ex=n + 1) + MPoly(q_int(r + n)) * f
    parts = [("monomial-rule", rule == expected)]
    if r >= 0:
        parts.append(("literal", op_U_conj_literal(f, r) == rule))
    # U_r x <x>_{r,n} = U_r(<x>_{r,n+1} + [r+n] <x>_{r,n})
    lifted = MPoly.x() * falling(n, r) == falling(n + 1, r) + MPoly(q_int(r + n)) * falling(n, r)
    parts.append(("falling-shift", lifted))
    return combine("U-conjugate", {"n": n, "r": r}, parts)


def _qm1(k: int) -> QLaurent:
    """(q - 1)^k for k >= 0."""
    return QLaurent({1: 1, 0: -1}) ** k


def stirling_qm1_rhs(n: int, k: int, r: int) -> QLaurent:
    out = QLaurent()
    for i in range(n + 1):
        term = q_binomial(i, k).shift(r * i) * comb(n, i)
        out = out + (term if (n - i) % 2 == 0 else -term)
    return out


def phi_qm1_rhs(n: int, r: int) -> MPoly:
    out = MPoly()
    for k in range(n + 1):
        inner = MPoly()
        for j in range(k + 1):
            inner = inner + MPoly({(j, 0): q_binomial(k, j) * _qm1(j) * QLaurent.q(r * (k - j))})
        sgn = comb(n, k) * (1 if (n - k) % 2 == 0 else -1)
        out = out + inner * sgn
    return out


def check_remark_identities(n: int, r: int) -> CheckReport:
    """The (q-1)-expansion identities relating S(n, k, r), phi_n and q-binomials."""
    x = MPoly.x()
    parts = []

    ok = all(
        _qm1(n - k) * QLaurent.q(r * k) * stirling(n, k, r) == stirling_qm1_rhs(n, k, r)
        for k in range(n + 1)
    )
    parts.append(("stirling-qm1", ok))

    lhs13 = MPoly()
    lhs14 = MPoly()
    rhs14 = MPoly()
    for k in range(n + 1):
        w = MPoly(q_binomial(n, k) * _qm1(k) * QLaurent.q(r * (n - k)))
        lhs13 = lhs13 + w * falling(k, r)
        lhs14 = lhs14 + w * MPoly.monomial(ex=k)
        rhs14 = rhs14 + MPoly(_qm1(k) * comb(n, k)) * phi(k, r)
    power = (MPoly(1) - MPoly(QLaurent({0: 1, 1: -1})) * x) ** n
    binom_side = MPoly()
    for k in range(n + 1):
        binom_side = binom_side + MPoly(_qm1(k) * comb(n, k)) * MPoly.monomial(ex=k)
    parts.append(("falling-binomial", lhs13 == power and power == binom_side))
    parts.append(("monomial-binomial", lhs14 == rhs14))

    rhs15 = phi_qm1_rhs(n, r)
    parts.append(("phi-qm1", MPoly(_qm1(n)) * phi(n, r) == rhs15))

    # coefficient of x^k in the phi expansion, times q^(rk), is (q-1)^k times the Stirling one
    coef_ok = all(
        rhs15.coeff(k) * QLaurent.q(r * k) == _qm1(k) * stirling_qm1_rhs(n, k, r) for k in range(n + 1)
    )
    parts.append(("stirling-from-phi", coef_ok))
    return combine("remark", {"n": n, "r": r}, parts)
