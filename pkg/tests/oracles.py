"""Brute-force oracles, deliberately independent of the qhankel code paths."""

from fractions import Fraction
from itertools import product


def set_partitions(items):
    """Yield every set partition of ``items`` as a list of blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def bell_bruteforce(n):
    return sum(1 for _ in set_partitions(list(range(n))))


def stirling2_bruteforce(n, k):
    return sum(1 for p in set_partitions(list(range(n))) if len(p) == k)


def r_stirling_int(n, k, r):
    """Integer r-Stirling numbers: S(n,k) = S(n-1,k-1) + (k+r) S(n-1,k), S(n,0) = r^n."""
    table = {(0, 0): 1}
    for m in range(1, n + 1):
        table[(m, 0)] = r ** m
    for m in range(1, n + 1):
        for j in range(1, m + 1):
            table[(m, j)] = table.get((m - 1, j - 1), 0) + (j + r) * table.get((m - 1, j), 0)
    return table.get((n, k), 0) if k <= n else 0


def q_int_value(n, q):
    """[n] at a rational q != 1 from the defining quotient."""
    q = Fraction(q)
    return (1 - q ** n) / (1 - q)


def q_binomial_value(n, k, q):
    if k < 0 or k > n:
        return Fraction(0)
    q = Fraction(q)
    num = Fraction(1)
    den = Fraction(1)
    for i in range(k):
        num *= 1 - q ** (n - i)
        den *= 1 - q ** (i + 1)
    return num / den


def det_fraction(m):
    """Determinant of a rational matrix by Gaussian elimination over Q."""
    a = [[Fraction(v) for v in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            for j in range(c, n):
                a[i][j] -= f * a[c][j]
    return det


def eval_points():
    """A few rational (x, a, q) points away from q = 0, 1."""
    return [(Fraction(x), Fraction(a), Fraction(q))
            for x, a, q in product((Fraction(1, 3), 2), (Fraction(-1, 2), 3), (Fraction(2, 5), 3))]
