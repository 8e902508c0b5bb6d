"""Hankel matrices of the phi / Phi moment sequences, exact determinants, the
closed forms they should equal, and the sweep that compares them."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Literal, Sequence

from .exactalg import MPoly, QLaurent, mpoly_to_json
from .orthopoly import big_h_poly, h_poly, norm_H, norm_h
from .qcore import q_binomial, q_factorial, q_int, q_pochhammer
from .rstirling import bigphi, phi

Family = Literal["phi", "bigphi"]
Theorem = Literal["2.1", "3.1"]

COFACTOR_MAX = 8
CROSS_CHECK_MAX = 4


class DimensionTooLarge(ValueError):
    pass


def _binom2(k: int) -> int:
    return k * (k - 1) // 2


def _binom3(k: int) -> int:
    return k * (k - 1) * (k - 2) // 6


@dataclass(frozen=True)
class HankelMatrix:
    n: int
    offset: int
    entries: tuple[tuple[MPoly, ...], ...]
    family: str = "custom"
    r: int | None = None

    def __getitem__(self, ij: tuple[int, int]) -> MPoly:
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list[MPoly]]:
        return [list(row) for row in self.entries]

    def is_hankel(self) -> bool:
        n = self.n
        return all(
            self.entries[i][j] == self.entries[j][i]
            and (i == 0 or j == n - 1 or self.entries[i][j] == self.entries[i - 1][j + 1])
            for i in range(n)
            for j in range(n)
        )


def build_hankel(family: Family, n: int, offset: int, r: int) -> HankelMatrix:
    if n < 1:
        raise ValueError("n must be at least 1")
    seq = {"phi": phi, "bigphi": bigphi}[family]
    moments = [seq(m, r) for m in range(2 * n - 1 + offset)]
    entries = tuple(tuple(moments[i + j + offset] for j in range(n)) for i in range(n))
    return HankelMatrix(n, offset, entries, family, r)


def _as_rows(m) -> list[list[MPoly]]:
    if isinstance(m, HankelMatrix):
        return m.rows()
    rows = [list(row) for row in m]
    if any(len(row) != len(rows) for row in rows):
        raise ValueError("matrix is not square")
    return rows


def det_bareiss(m: HankelMatrix | Sequence[Sequence[MPoly]]) -> MPoly:
    """Fraction-free (Bareiss) elimination; each division by the previous
    pivot is exact. A column with no nonzero pivot means the determinant is 0."""
    a = _as_rows(m)
    n = len(a)
    if n == 0:
        return MPoly(1)
    sign = 1
    prev = MPoly(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return MPoly()
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                val = piv * row_i[j]
                if aik and row_k[j]:
                    val = val - aik * row_k[j]
                row_i[j] = val.exact_div(prev) if k else val
            row_i[k] = MPoly()
        prev = piv
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def det_cofactor(m: HankelMatrix | Sequence[Sequence[MPoly]]) -> MPoly:
    """Laplace expansion along the first row, memoized over column subsets."""
    a = _as_rows(m)
    n = len(a)
    if n > COFACTOR_MAX:
        raise DimensionTooLarge(f"cofactor expansion limited to n <= {COFACTOR_MAX}")
    memo: dict[tuple[int, ...], MPoly] = {}

    def minor(row: int, cols: tuple[int, ...]) -> MPoly:
        if not cols:
            return MPoly(1)
        if cols in memo:
            return memo[cols]
        total = MPoly()
        for idx, c in enumerate(cols):
            entry = a[row][c]
            if entry.is_zero():
                continue
            sub = minor(row + 1, cols[:idx] + cols[idx + 1:])
            term = entry * sub
            total = total + term if idx % 2 == 0 else total - term
        memo[cols] = total
        return total

    return minor(0, tuple(range(n)))


def det_leibniz(m: Sequence[Sequence[MPoly]]) -> MPoly:
    """Sum over permutations; only for tiny matrices in tests."""
    a = _as_rows(m)
    n = len(a)
    total = MPoly()
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = MPoly(1)
        for i, p in enumerate(perm):
            term = term * a[i][p]
        total = total - term if inv % 2 else total + term
    return total


def random_mpoly(rng: random.Random, max_deg: int = 2, q_lo: int = -2, q_hi: int = 2, terms: int = 4) -> MPoly:
    return MPoly.from_triples(
        (rng.randint(0, max_deg), rng.randint(0, max_deg), rng.randint(q_lo, q_hi), rng.randint(-3, 3))
        for _ in range(rng.randint(0, terms))
    )


def random_mpoly_matrix(rng: random.Random, n: int, **kw) -> list[list[MPoly]]:
    return [[random_mpoly(rng, **kw) for _ in range(n)] for _ in range(n)]


def cross_check_random(seed: int, count: int = 50, n_max: int = CROSS_CHECK_MAX) -> tuple[int, int]:
    """Bareiss vs cofactor on seeded random matrices; returns (agreeing, total)."""
    rng = random.Random(seed)
    agree = 0
    for i in range(count):
        m = random_mpoly_matrix(rng, 1 + i % n_max)
        agree += det_bareiss(m) == det_cofactor(m)
    return agree, count


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def _rising_nodes(r: int, m: int) -> QLaurent:
    """[r][r+1]...[r+m-1]."""
    out = QLaurent(1)
    for j in range(m):
        out = out * q_int(r + j)
    return out


def theorem21_sum(n: int, r: int) -> MPoly:
    """sum_k [n, k] q^C(k,2) x^k [r]...[r+n-k-1]."""
    return MPoly({(k, 0): q_binomial(n, k).shift(_binom2(k)) * _rising_nodes(r, n - k) for k in range(n + 1)})


def theorem31_sum(n: int, r: int) -> MPoly:
    """sum_k [n, k] (q^(n-1+r) x)^k [r]...[r+n-k-1]."""
    return MPoly({(k, 0): q_binomial(n, k).shift((n - 1 + r) * k) * _rising_nodes(r, n - k) for k in range(n + 1)})


def closed_form_theorem21(n: int, offset: int, r: int) -> MPoly:
    if n < 1:
        raise ValueError("n must be at least 1")
    if offset not in (0, 1):
        raise ValueError("offset must be 0 or 1")
    prod = QLaurent(1)
    for k in range(n):
        prod = prod * q_factorial(k)
    b2 = _binom2(n)
    d0 = MPoly({(b2, 0): prod.shift(_binom3(n) + r * b2)})
    return d0 if offset == 0 else d0 * theorem21_sum(n, r)


def closed_form_theorem31(n: int, offset: int, r: int) -> MPoly:
    if n < 1:
        raise ValueError("n must be at least 1")
    if offset not in (0, 1):
        raise ValueError("offset must be 0 or 1")
    t = MPoly({(1, 0): QLaurent({0: 1, 1: -1})})  # (1-q) x
    prod = MPoly(1)
    for k in range(n):
        prod = prod * MPoly(q_factorial(k)) * q_pochhammer(t, k)
    b2 = _binom2(n)
    d0 = MPoly.monomial(ex=b2, eq=2 * _binom3(n) + 2 * r * b2) * prod
    return d0 if offset == 0 else d0 * theorem31_sum(n, r)


CLOSED_FORMS = {"2.1": closed_form_theorem21, "3.1": closed_form_theorem31}
FAMILY_OF = {"2.1": "phi", "3.1": "bigphi"}


def product_route(theorem: Theorem, n: int, r: int) -> MPoly:
    """prod_{i<n} norm_i with a -> x (determinant as product of norms)."""
    norm = norm_h if theorem == "2.1" else norm_H
    out = MPoly(1)
    for i in range(n):
        out = out * norm(i, r).a_to_x()
    return out


def offset_route_sum(theorem: Theorem, n: int, r: int) -> MPoly:
    """(-1)^n P_n(0, a, r) with a -> x, which should equal the offset-1 sum."""
    poly = h_poly(n, r) if theorem == "2.1" else big_h_poly(n, r)
    v = poly.at_x_zero().a_to_x()
    return -v if n % 2 else v


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class TheoremReport:
    theorem: str
    n: int
    r: int
    offset: int
    oracle_det: MPoly
    closed_form: MPoly
    equal: bool
    cofactor_equal: bool | None = None
    route_equal: bool | None = None
    elapsed_ms: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.equal and self.cofactor_equal is not False and self.route_equal is not False

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = []
        if self.cofactor_equal is not None:
            extra.append(f"cofactor={'ok' if self.cofactor_equal else 'MISMATCH'}")
        if self.route_equal is not None:
            route = "product" if self.offset == 0 else "offset"
            extra.append(f"{route}-route={'ok' if self.route_equal else 'MISMATCH'}")
        extra += self.notes
        return (f"{status} theorem{self.theorem.replace('.', '')} n={self.n} r={self.r} "
                f"offset={self.offset} equal={self.equal} " + " ".join(extra)).rstrip()

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "n": self.n,
            "r": self.r,
            "offset": self.offset,
            "equal": self.equal,
            "oracle": mpoly_to_json(self.oracle_det),
            "closed": mpoly_to_json(self.closed_form),
            "elapsed_ms": self.elapsed_ms,
        }


def verify_case(theorem: Theorem, n: int, r: int, offset: int) -> TheoremReport:
    start = time.perf_counter()
    m = build_hankel(FAMILY_OF[theorem], n, offset, r)
    oracle = det_bareiss(m)
    closed = CLOSED_FORMS[theorem](n, offset, r)
    rep = TheoremReport(theorem, n, r, offset, oracle, closed, oracle == closed)
    if n <= CROSS_CHECK_MAX:
        rep.cofactor_equal = det_cofactor(m) == oracle
    if offset == 0:
        rep.route_equal = product_route(theorem, n, r) == closed
    else:
        sum_part = theorem21_sum(n, r) if theorem == "2.1" else theorem31_sum(n, r)
        d0 = CLOSED_FORMS[theorem](n, 0, r)
        rep.route_equal = offset_route_sum(theorem, n, r) == sum_part and d0 * sum_part == closed
    if r < 0:
        rep.notes.append("negative-r")
    if oracle.is_zero():
        rep.notes.append("singular")
    rep.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return rep


def _verify_case_args(args):
    return verify_case(*args)


def verify_theorem(theorem: Theorem, n_max: int, r_set: Sequence[int], parallelism: int = 1) -> list[TheoremReport]:
    """Compare Bareiss determinants with the closed form for every
    n <= n_max, r in r_set and offset in {0, 1}."""
    if theorem not in CLOSED_FORMS:
        raise ValueError(f"unknown theorem {theorem!r}")
    if n_max < 1 or not r_set:
        raise ValueError("need n_max >= 1 and a nonempty r_set")
    cases = [(theorem, n, r, off) for r in r_set for n in range(1, n_max + 1) for off in (0, 1)]
    if parallelism <= 1:
        return [verify_case(*c) for c in cases]
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(_verify_case_args, cases))
