"""Exact arithmetic kernel.

Coefficients are Python ints or :class:`fractions.Fraction` (the big rationals).
On top of that sit

* :class:`QLaurent`   -- Laurent polynomials in ``q``
* :class:`MPoly`      -- polynomials in ``x`` and ``a`` with QLaurent coefficients
* :class:`QRational`  -- reduced quotients of q-polynomials
* :class:`TruncSeries` -- truncated power series with QRational coefficients

All values are immutable once built.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd
from typing import Iterable, Union

Number = Union[int, Fraction]


class NonExactDivision(ArithmeticError):
    """Raised when a divisor does not divide the dividend exactly."""


class OrderMismatch(ValueError):
    pass


class NonUnitConstantTerm(ValueError):
    pass


def _norm(c: Number) -> Number:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _exact_quo(c: Number, d: Number) -> Number:
    if type(c) is int and type(d) is int:
        quo, rem = divmod(c, d)
        if not rem:
            return quo
    return _norm(Fraction(c) / d)


# ---------------------------------------------------------------------------
# QLaurent
# ---------------------------------------------------------------------------


class QLaurent:
    """Laurent polynomial in q over the rationals, stored as ``{exponent: coeff}``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict[int, Number] | Number | None = None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {0: terms}
        self.terms = {e: _norm(c) for e, c in terms.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Number]) -> QLaurent:
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def q(cls, e: int = 1, c: Number = 1) -> QLaurent:
        return cls({e: c})

    # -- inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def min_exp(self) -> int:
        return min(self.terms)

    def max_exp(self) -> int:
        return max(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {0}

    def constant(self) -> Number:
        return self.terms.get(0, 0)

    def items(self):
        return sorted(self.terms.items())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QLaurent(other)
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"QLaurent({render_qlaurent(self)!r})"

    def __str__(self):
        return render_qlaurent(self)

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> QLaurent:
        if isinstance(other, QLaurent):
            return other
        if isinstance(other, (int, Fraction)):
            return QLaurent(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return QLaurent._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return QLaurent._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, Number] = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = get(e, 0) + c1 * c2
        return QLaurent._raw({e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise NonExactDivision("only monomials are units of the Laurent ring")
            (e, c), = self.terms.items()
            return QLaurent({e * n: _norm(Fraction(1) / Fraction(c) ** (-n))})
        result = QLaurent(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> QLaurent:
        """Multiply by ``q**k``."""
        return QLaurent._raw({e + k: c for e, c in self.terms.items()})

    def scale(self, c: Number) -> QLaurent:
        return QLaurent({e: v * c for e, v in self.terms.items()})

    def exact_div(self, den: QLaurent) -> QLaurent:
        return qlaurent_exact_div(self, den)

    def evaluate(self, q: Number) -> Number:
        """Value at a rational ``q`` (``q`` must be nonzero if negative exponents occur)."""
        total: Number = 0
        for e, c in self.terms.items():
            total += c * (Fraction(q) ** e if e < 0 else q ** e)
        return _norm(total)

    def subs_q(self, value: QLaurent) -> QLaurent:
        """Substitute ``q -> value`` (``value`` must be a unit if negative exponents occur)."""
        out = QLaurent()
        for e, c in self.terms.items():
            out = out + (value ** e) * c
        return out


def qlaurent_arith(lhs: QLaurent, rhs: QLaurent, op: str) -> QLaurent:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown op {op!r}")


def qlaurent_exact_div(num: QLaurent, den: QLaurent) -> QLaurent:
    """Exact quotient ``num / den`` in the Laurent ring.

    Long division from the top exponent down. The quotient's exponents must lie
    in ``[min num - min den, max num - max den]``; anything else means the
    division is not exact.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by zero QLaurent")
    if num.is_zero():
        return QLaurent()
    lo = num.min_exp() - den.min_exp()
    hi = num.max_exp() - den.max_exp()
    if hi < lo:
        raise NonExactDivision(f"{num} is not divisible by {den}")
    dtop = den.max_exp()
    dlead = den.terms[dtop]
    dterms = list(den.terms.items())
    rem = dict(num.terms)
    quo: dict[int, Number] = {}
    for e in range(hi, lo - 1, -1):
        c = rem.get(e + dtop, 0)
        if not c:
            continue
        t = _exact_quo(c, dlead)
        quo[e] = t
        for de, dc in dterms:
            k = e + de
            v = rem.get(k, 0) - t * dc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    if rem:
        raise NonExactDivision(f"{num} is not divisible by {den}")
    return QLaurent(quo)


# ---------------------------------------------------------------------------
# MPoly
# ---------------------------------------------------------------------------

# A monomial x^ex a^ea q^eq is packed into one int so that monomial
# multiplication is integer addition and lex order on (ex, ea, eq) is integer
# order. Requires 0 <= ea < 2**21 and |eq| < 2**20.
_B = 21
_HALF = 1 << (_B - 1)
_MASK = (1 << _B) - 1


def _pack(ex: int, ea: int, eq: int) -> int:
    return (ex << (2 * _B)) + (ea << _B) + eq


def _unpack(key: int) -> tuple[int, int, int]:
    eq = ((key + _HALF) & _MASK) - _HALF
    rest = (key - eq) >> _B
    return rest >> _B, rest & _MASK, eq


class MPoly:
    """Polynomial in commuting ``x`` and ``a`` over :class:`QLaurent`.

    Internally a flat ``{packed monomial: rational}`` map; the QLaurent view of
    each ``(e_x, e_a)`` block is available through :meth:`coeff` and
    :meth:`blocks`.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, blocks: dict[tuple[int, int], QLaurent | Number] | QLaurent | Number | None = None):
        terms: dict[int, Number] = {}
        if blocks is None:
            pass
        elif isinstance(blocks, dict):
            for (ex, ea), c in blocks.items():
                if ex < 0 or ea < 0:
                    raise ValueError("x and a exponents must be nonnegative")
                c = c if isinstance(c, QLaurent) else QLaurent(c)
                for eq, v in c.terms.items():
                    terms[_pack(ex, ea, eq)] = v
        else:
            c = blocks if isinstance(blocks, QLaurent) else QLaurent(blocks)
            for eq, v in c.terms.items():
                terms[_pack(0, 0, eq)] = v
        self.terms = terms
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Number]) -> MPoly:
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, ex: int = 0, ea: int = 0, eq: int = 0, c: Number = 1) -> MPoly:
        return cls._raw({_pack(ex, ea, eq): _norm(c)} if c else {})

    @classmethod
    def x(cls) -> MPoly:
        return cls.monomial(ex=1)

    @classmethod
    def a(cls) -> MPoly:
        return cls.monomial(ea=1)

    @classmethod
    def from_triples(cls, triples: Iterable[tuple[int, int, int, Number]]) -> MPoly:
        """Build from ``(e_x, e_a, e_q, coeff)`` tuples; repeated monomials add up."""
        out: dict[int, Number] = {}
        for ex, ea, eq, c in triples:
            if ex < 0 or ea < 0:
                raise ValueError("x and a exponents must be nonnegative")
            k = _pack(ex, ea, eq)
            out[k] = out.get(k, 0) + c
        return cls._raw({k: _norm(c) for k, c in out.items() if c})

    # -- inspection ---------------------------------------------------------
    def triples(self) -> list[tuple[int, int, int, Number]]:
        """All terms as ``(e_x, e_a, e_q, coeff)``, sorted ascending."""
        return [(*_unpack(k), c) for k, c in sorted(self.terms.items())]

    def blocks(self) -> dict[tuple[int, int], QLaurent]:
        out: dict[tuple[int, int], dict[int, Number]] = {}
        for k, c in self.terms.items():
            ex, ea, eq = _unpack(k)
            out.setdefault((ex, ea), {})[eq] = c
        return {m: QLaurent._raw(t) for m, t in sorted(out.items())}

    def coeff(self, ex: int, ea: int = 0) -> QLaurent:
        return self.blocks().get((ex, ea), QLaurent())

    def x_coeffs(self) -> dict[int, MPoly]:
        """Coefficients with respect to ``x``, each a polynomial in ``a`` (and q)."""
        out: dict[int, dict[int, Number]] = {}
        for k, c in self.terms.items():
            ex, ea, eq = _unpack(k)
            out.setdefault(ex, {})[_pack(0, ea, eq)] = c
        return {ex: MPoly._raw(t) for ex, t in out.items()}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree_x(self) -> int:
        """Degree in x; -1 for the zero polynomial."""
        return max((_unpack(k)[0] for k in self.terms), default=-1)

    def degree_a(self) -> int:
        return max((_unpack(k)[1] for k in self.terms), default=-1)

    def q_range(self) -> tuple[int, int]:
        eqs = [_unpack(k)[2] for k in self.terms]
        return min(eqs), max(eqs)

    def leading_x_coeff(self) -> MPoly:
        d = self.degree_x()
        return self.x_coeffs().get(d, MPoly())

    def is_scalar(self) -> bool:
        """True when no x or a occurs."""
        return all(_unpack(k)[:2] == (0, 0) for k in self.terms)

    def to_qlaurent(self) -> QLaurent:
        if not self.is_scalar():
            raise ValueError("polynomial depends on x or a")
        return QLaurent({_unpack(k)[2]: c for k, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QLaurent)):
            other = MPoly(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"MPoly({render_mpoly(self)!r})"

    def __str__(self):
        return render_mpoly(self)

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> MPoly:
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction, QLaurent)):
            return MPoly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) - c
            if v:
                out[k] = v
            else:
                del out[k]
        return MPoly._raw(out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, Number] = {}
        get = out.get
        bitems = list(b.items())
        for k1, c1 in a.items():
            for k2, c2 in bitems:
                k = k1 + k2
                out[k] = get(k, 0) + c1 * c2
        return MPoly._raw({k: _norm(c) for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of MPoly")
        result = MPoly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exact_div(self, den: MPoly) -> MPoly:
        return mpoly_exact_div(self, den)

    # -- substitutions ------------------------------------------------------
    def substitute_x_scale(self, c: QLaurent) -> MPoly:
        return mpoly_substitute_x_scale(self, c)

    def at_x_zero(self) -> MPoly:
        return MPoly._raw({k: c for k, c in self.terms.items() if _unpack(k)[0] == 0})

    def a_to_x(self) -> MPoly:
        """Identify ``a`` with ``x``: ``x^i a^j -> x^(i+j)``."""
        return MPoly.from_triples((ex + ea, 0, eq, c) for ex, ea, eq, c in self.triples())

    def swap_xa(self) -> MPoly:
        return MPoly.from_triples((ea, ex, eq, c) for ex, ea, eq, c in self.triples())

    def subs_x(self, value: MPoly) -> MPoly:
        """Substitute ``x -> value`` (Horner in x)."""
        coeffs = self.x_coeffs()
        out = MPoly()
        for ex in range(self.degree_x(), -1, -1):
            out = out * value + coeffs.get(ex, MPoly())
        return out

    def at_q_one(self) -> MPoly:
        """Evaluate at ``q = 1`` (result has only q-exponent 0)."""
        return MPoly.from_triples((ex, ea, 0, c) for ex, ea, _, c in self.triples())

    def evaluate(self, x: Number = 0, a: Number = 0, q: Number = 1) -> Number:
        total: Number = 0
        for ex, ea, eq, c in self.triples():
            total += c * Fraction(x) ** ex * Fraction(a) ** ea * Fraction(q) ** eq
        return _norm(total)


def mpoly_arith(lhs: MPoly, rhs: MPoly, op: str) -> MPoly:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown op {op!r}")


def mpoly_substitute_x_scale(f: MPoly, c: QLaurent) -> MPoly:
    """``f(x) -> f(c*x)`` for a QLaurent scalar ``c``."""
    out = MPoly()
    powers: dict[int, MPoly] = {}
    for (ex, ea), block in f.blocks().items():
        if ex not in powers:
            powers[ex] = MPoly(c ** ex)
        out = out + MPoly({(ex, ea): block}) * powers[ex]
    return out


def mpoly_exact_div(num: MPoly, den: MPoly) -> MPoly:
    """Exact quotient in Q[q, 1/q][x, a].

    Lex division on (x, a, q): each step divides the leading (x, a) block's top
    q-coefficient, so it is QLaurent exact division carried out block by block.
    Quotient monomials are confined to the box implied by degree bounds; leaving
    the box, or a nonzero remainder, raises :class:`NonExactDivision`.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by zero MPoly")
    if num.is_zero():
        return MPoly()
    if len(den.terms) == 1:
        (dk, dc), = den.terms.items()
        dx, da, _ = _unpack(dk)
        out = {}
        for k, c in num.terms.items():
            ex, ea, _ = _unpack(k)
            if ex < dx or ea < da:
                raise NonExactDivision("monomial divisor does not divide")
            out[k - dk] = _exact_quo(c, dc)
        return MPoly._raw(out)

    nx, na, (nqlo, nqhi) = num.degree_x(), num.degree_a(), num.q_range()
    dx, da, (dqlo, dqhi) = den.degree_x(), den.degree_a(), den.q_range()
    xmax, amax = nx - dx, na - da
    qlo, qhi = nqlo - dqlo, nqhi - dqhi
    if xmax < 0 or amax < 0 or qhi < qlo:
        raise NonExactDivision("degree bounds rule out exact division")

    dlead_key = max(den.terms)
    dlead = den.terms[dlead_key]
    dterms = list(den.terms.items())
    rem = dict(num.terms)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quo: dict[int, Number] = {}
    while heap:
        k = -heapq.heappop(heap)
        c = rem.get(k)
        if not c:
            continue
        while heap and heap[0] == -k:
            heapq.heappop(heap)
        qk = k - dlead_key
        ex, ea, eq = _unpack(qk)
        if not (0 <= ex <= xmax and 0 <= ea <= amax and qlo <= eq <= qhi):
            raise NonExactDivision("remainder leaves the quotient box")
        t = _exact_quo(c, dlead)
        quo[qk] = t
        for dk, dc in dterms:
            kk = qk + dk
            v = rem.get(kk, 0) - t * dc
            if v:
                if kk not in rem:
                    heapq.heappush(heap, -kk)
                rem[kk] = v
            else:
                rem.pop(kk, None)
    if rem:
        raise NonExactDivision("nonzero remainder")
    return MPoly._raw(quo)


# ---------------------------------------------------------------------------
# univariate helpers for QRational
# ---------------------------------------------------------------------------


def _dense(p: QLaurent) -> list[Number]:
    """Coefficient list (index = exponent) of a polynomial with min exponent 0."""
    out = [0] * (p.max_exp() + 1)
    for e, c in p.terms.items():
        out[e] = c
    return out


def _from_dense(cs: list[Number], shift: int = 0) -> QLaurent:
    return QLaurent({i + shift: c for i, c in enumerate(cs) if c})


def _primitive_int(cs: list[Number]) -> list[int]:
    den = 1
    for c in cs:
        if type(c) is Fraction:
            den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _prem(f: list[int], g: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials (trailing zeros stripped)."""
    f = list(f)
    lg = g[-1]
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        lf = f[-1]
        shift = len(f) - 1 - dg
        f = [c * lg for c in f]
        for i, gc in enumerate(g):
            f[i + shift] -= lf * gc
        while f and f[-1] == 0:
            f.pop()
    return f


def _poly_gcd(f: list[Number], g: list[Number]) -> list[int]:
    """Primitive GCD over Z of two nonzero polynomials (primitive PRS)."""
    a, b = _primitive_int(f), _primitive_int(g)
    if len(a) < len(b):
        a, b = b, a
    while b and len(b) > 1:
        r = _prem(a, b)
        a, b = b, (_primitive_int(r) if r else [])
    if not b:
        return a
    return [1]


def _dense_divexact(f: list[Number], g: list[Number]) -> list[Number]:
    return _dense(qlaurent_exact_div(_from_dense(f), _from_dense(g)))


# ---------------------------------------------------------------------------
# QRational
# ---------------------------------------------------------------------------


class QRational:
    """Quotient of two q-polynomials in canonical form.

    The denominator is a polynomial with nonzero constant term and leading
    coefficient 1; all powers of q are carried by the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: QLaurent | Number, den: QLaurent | Number = 1):
        num = num if isinstance(num, QLaurent) else QLaurent(num)
        den = den if isinstance(den, QLaurent) else QLaurent(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = QLaurent(), QLaurent(1)
            return
        shift = num.min_exp() - den.min_exp()
        n = _dense(num.shift(-num.min_exp()))
        d = _dense(den.shift(-den.min_exp()))
        if len(d) > 1 and len(n) > 1:
            g = _poly_gcd(n, d)
            if len(g) > 1:
                n = _dense_divexact(n, g)
                d = _dense_divexact(d, g)
        lc = d[-1]
        if lc != 1:
            n = [_norm(Fraction(c) / lc) for c in n]
            d = [_norm(Fraction(c) / lc) for c in d]
        self.num = _from_dense(n, shift)
        self.den = _from_dense(d)

    @classmethod
    def _raw(cls, num: QLaurent, den: QLaurent) -> QRational:
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @staticmethod
    def _coerce(other) -> QRational:
        if isinstance(other, QRational):
            return other
        if isinstance(other, QLaurent):
            return QRational._poly(other)
        if isinstance(other, (int, Fraction)):
            return QRational._poly(QLaurent(other))
        return NotImplemented

    @classmethod
    def _poly(cls, p: QLaurent) -> QRational:
        return cls._raw(p, QLaurent(1))

    def is_polynomial(self) -> bool:
        return self.den.terms == {0: 1}

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"QRational({render_qrational(self)!r})"

    def __str__(self):
        return render_qrational(self)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            if self.is_polynomial():
                return QRational._poly(self.num + other.num)
            return QRational(self.num + other.num, self.den)
        if other.is_polynomial():
            return QRational(self.num + other.num * self.den, self.den)
        if self.is_polynomial():
            return QRational(self.num * other.den + other.num, other.den)
        return QRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QRational._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_polynomial() and other.is_polynomial():
            return QRational._poly(self.num * other.num)
        return QRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by zero QRational")
        return QRational(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def to_qlaurent(self) -> QLaurent:
        if not self.is_polynomial():
            raise NonExactDivision(f"{self} is not a Laurent polynomial")
        return self.num


# ---------------------------------------------------------------------------
# TruncSeries
# ---------------------------------------------------------------------------


class TruncSeries:
    """Power series in one variable, truncated at ``order`` (exclusive)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [QRational._coerce(c) for c in coeffs]
        if order is None:
            order = len(cs)
        if order < 1:
            raise ValueError("order must be at least 1")
        cs = cs[:order] + [QRational._poly(QLaurent())] * (order - len(cs))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls, order: int) -> TruncSeries:
        return cls([1], order)

    def __getitem__(self, n: int) -> QRational:
        return self.coeffs[n]

    def __len__(self):
        return self.order

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"TruncSeries({[str(c) for c in self.coeffs]}, order={self.order})"

    def _check(self, other: TruncSeries):
        if not isinstance(other, TruncSeries):
            raise TypeError("expected TruncSeries")
        if other.order != self.order:
            raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        self._check(other)
        return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return TruncSeries([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs])

    def __mul__(self, other):
        return series_mul(self, other)

    def scale(self, c) -> TruncSeries:
        return TruncSeries([v * c for v in self.coeffs])

    def inverse(self) -> TruncSeries:
        return series_inverse(self)

    def q_derivative(self) -> TruncSeries:
        """Termwise ``z^n -> [n] z^(n-1)``; the order drops by one."""
        if self.order < 2:
            raise ValueError("order too small to differentiate")
        out = []
        for n in range(1, self.order):
            qn = QLaurent({i: 1 for i in range(n)})
            out.append(self.coeffs[n] * qn)
        return TruncSeries(out)

    def all_polynomial(self) -> bool:
        return all(c.is_polynomial() for c in self.coeffs)


def series_mul(lhs: TruncSeries, rhs: TruncSeries) -> TruncSeries:
    lhs._check(rhs)
    N = lhs.order
    out = []
    for n in range(N):
        acc = QRational._poly(QLaurent())
        for i in range(n + 1):
            a, b = lhs.coeffs[i], rhs.coeffs[n - i]
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return TruncSeries(out)


def series_inverse(f: TruncSeries) -> TruncSeries:
    if f.coeffs[0] != QRational._poly(QLaurent(1)):
        raise NonUnitConstantTerm("constant term must be 1")
    out = [f.coeffs[0]]
    for n in range(1, f.order):
        acc = QRational._poly(QLaurent())
        for i in range(1, n + 1):
            a = f.coeffs[i]
            if a and out[n - i]:
                acc = acc + a * out[n - i]
        out.append(-acc)
    return TruncSeries(out)


# ---------------------------------------------------------------------------
# rendering and parsing
# ---------------------------------------------------------------------------


def _num_str(c: Number) -> str:
    c = _norm(c)
    return str(c)


def _term_text(c: Number, factors: list[str], first: bool) -> str:
    neg = c < 0
    mag = -c if neg else c
    body = " ".join(factors)
    if not factors:
        s = _num_str(mag)
    elif mag == 1:
        s = body
    else:
        s = f"{_num_str(mag)} {body}"
    if first:
        return f"-{s}" if neg else s
    return f" - {s}" if neg else f" + {s}"


def _factor(var: str, e: int) -> list[str]:
    if e == 0:
        return []
    if e == 1:
        return [var]
    return [f"{var}^{e}"]


def _display_order(triples):
    # descending in x, then a; ascending in q
    return sorted(triples, key=lambda t: (-t[0], -t[1], t[2]))


def render_mpoly(p: MPoly) -> str:
    """Plain-text rendering, e.g. ``x^2 - a x - q a x + q a^2``."""
    if p.is_zero():
        return "0"
    parts = []
    for i, (ex, ea, eq, c) in enumerate(_display_order(p.triples())):
        factors = _factor("q", eq) + _factor("a", ea) + _factor("x", ex)
        parts.append(_term_text(c, factors, i == 0))
    return "".join(parts)


def render_qlaurent(p: QLaurent) -> str:
    return render_mpoly(MPoly(p))


def render_qrational(p: QRational) -> str:
    if p.is_polynomial():
        return render_qlaurent(p.num)
    return f"({render_qlaurent(p.num)})/({render_qlaurent(p.den)})"


def render_series(s: TruncSeries, var: str = "z") -> str:
    parts = []
    for n, c in enumerate(s.coeffs):
        if c.is_zero():
            continue
        mono = "" if n == 0 else (var if n == 1 else f"{var}^{n}")
        cs = render_qrational(c)
        if not mono:
            parts.append(f"({cs})")
        else:
            parts.append(f"({cs}) {mono}")
    parts.append(f"O({var}^{s.order})")
    return " + ".join(parts)


def _latex_num(c: Number) -> str:
    c = _norm(c)
    if type(c) is Fraction:
        return rf"\frac{{{c.numerator}}}{{{c.denominator}}}"
    return str(c)


def _latex_factor(var: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{{{e}}}"


def latex_mpoly(p: MPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (ex, ea, eq, c) in enumerate(_display_order(p.triples())):
        neg = c < 0
        mag = -c if neg else c
        body = _latex_factor("q", eq) + _latex_factor("a", ea) + _latex_factor("x", ex)
        if not body:
            s = _latex_num(mag)
        elif mag == 1:
            s = body
        else:
            s = _latex_num(mag) + body
        if i == 0:
            out.append(("-" if neg else "") + s)
        else:
            out.append((" - " if neg else " + ") + s)
    return "".join(out)


def latex_qlaurent(p: QLaurent) -> str:
    return latex_mpoly(MPoly(p))


def latex_qrational(p: QRational) -> str:
    if p.is_polynomial():
        return latex_qlaurent(p.num)
    return rf"\frac{{{latex_qlaurent(p.num)}}}{{{latex_qlaurent(p.den)}}}"


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[str]:
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace() or ch == "*":
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(text[i:j])
            i = j
        elif ch in "+-^/()qax":
            toks.append(ch)
            i += 1
        elif ch == "−":
            toks.append("-")
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}")
    return toks


def parse_mpoly(text: str) -> MPoly:
    """Inverse of :func:`render_mpoly` (also accepts ``*`` and unicode minus)."""
    toks = _tokenize(text)
    pos = 0
    triples = []

    def peek():
        return toks[pos] if pos < len(toks) else None

    sign = 1
    if peek() in ("+", "-"):
        sign = -1 if toks[pos] == "-" else 1
        pos += 1
    while True:
        coeff: Number = 1
        exps = {"x": 0, "a": 0, "q": 0}
        seen = False
        if peek() is not None and peek().isdigit():
            coeff = int(toks[pos])
            pos += 1
            if peek() == "/":
                pos += 1
                if peek() is None or not peek().isdigit():
                    raise ParseError("bad rational")
                coeff = Fraction(coeff, int(toks[pos]))
                pos += 1
            seen = True
        while peek() in ("x", "a", "q"):
            var = toks[pos]
            pos += 1
            e = 1
            if peek() == "^":
                pos += 1
                esign = 1
                if peek() == "-":
                    esign = -1
                    pos += 1
                if peek() is None or not peek().isdigit():
                    raise ParseError("bad exponent")
                e = esign * int(toks[pos])
                pos += 1
            exps[var] += e
            seen = True
        if not seen:
            raise ParseError(f"expected a term at token {pos}")
        triples.append((exps["x"], exps["a"], exps["q"], sign * coeff))
        if peek() is None:
            break
        if peek() not in ("+", "-"):
            raise ParseError(f"unexpected token {peek()!r}")
        sign = -1 if toks[pos] == "-" else 1
        pos += 1
    return MPoly.from_triples(triples)


def parse_qlaurent(text: str) -> QLaurent:
    return parse_mpoly(text).to_qlaurent()


def parse_qrational(text: str) -> QRational:
    text = text.strip()
    if text.startswith("(") and ")/(" in text and text.endswith(")"):
        num, den = text[1:-1].split(")/(", 1)
        return QRational(parse_qlaurent(num), parse_qlaurent(den))
    return QRational(parse_qlaurent(text))


# JSON: lists of {"q", "x", "a", "num", "den"} terms, ascending by (x, a, q).


def _term_json(ex: int, ea: int, eq: int, c: Number) -> dict:
    c = Fraction(c)
    return {"q": eq, "x": ex, "a": ea, "num": str(c.numerator), "den": str(c.denominator)}


def mpoly_to_json(p: MPoly) -> list[dict]:
    return [_term_json(*t) for t in p.triples()]


def mpoly_from_json(data: list[dict]) -> MPoly:
    return MPoly.from_triples(
        (int(t["x"]), int(t["a"]), int(t["q"]), _norm(Fraction(int(t["num"]), int(t["den"]))))
        for t in data
    )


def qlaurent_to_json(p: QLaurent) -> list[dict]:
    return mpoly_to_json(MPoly(p))


def qlaurent_from_json(data: list[dict]) -> QLaurent:
    return mpoly_from_json(data).to_qlaurent()


def qrational_to_json(p: QRational) -> dict:
    return {"num": qlaurent_to_json(p.num), "den": qlaurent_to_json(p.den)}


def qrational_from_json(data: dict) -> QRational:
    return QRational(qlaurent_from_json(data["num"]), qlaurent_from_json(data["den"]))


def series_to_json(s: TruncSeries) -> dict:
    return {"order": s.order, "coeffs": [qrational_to_json(c) for c in s.coeffs]}


def series_from_json(data: dict) -> TruncSeries:
    return TruncSeries([qrational_from_json(c) for c in data["coeffs"]], int(data["order"]))


def to_json(obj):
    """Serialize any kernel value to JSON-compatible data."""
    if isinstance(obj, MPoly):
        return mpoly_to_json(obj)
    if isinstance(obj, QLaurent):
        return qlaurent_to_json(obj)
    if isinstance(obj, QRational):
        return qrational_to_json(obj)
    if isinstance(obj, TruncSeries):
        return series_to_json(obj)
    if isinstance(obj, (int, Fraction)):
        return qlaurent_to_json(QLaurent(obj))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def render(obj) -> str:
    if isinstance(obj, MPoly):
        return render_mpoly(obj)
    if isinstance(obj, QLaurent):
        return render_qlaurent(obj)
    if isinstance(obj, QRational):
        return render_qrational(obj)
    if isinstance(obj, TruncSeries):
        return render_series(obj)
    return str(obj)


def latex(obj) -> str:
    if isinstance(obj, MPoly):
        return latex_mpoly(obj)
    if isinstance(obj, QLaurent):
        return latex_qlaurent(obj)
    if isinstance(obj, QRational):
        return latex_qrational(obj)
    return str(obj)
