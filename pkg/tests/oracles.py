"""Independent reference implementations used only by the tests.

None of these import the package's arithmetic; they are deliberately naive.
"""

from __future__ import annotations

import math
from functools import lru_cache
from fractions import Fraction
from itertools import product

import sympy


# --- group law on y^2 = x^3 + A x + B, written from the chord-tangent formulas

def ec_add(A, B, P, Q):
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = (tuple(map(Fraction, R)) for R in (P, Q))
    A = Fraction(A)
    if x1 == x2 and y1 == -y2:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + A) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


def ec_mul(A, B, n, P):
    out = None
    for _ in range(abs(n)):
        out = ec_add(A, B, out, P)
    if n < 0 and out is not None:
        out = (out[0], -out[1])
    return out


# --- local square classes and a norm-group Hilbert symbol ----------------------

def _vp(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _to_int(q) -> int:
    q = Fraction(q)
    return q.numerator * q.denominator  # same square class


def local_class(n: int, p: int):
    v, u = _vp(n, p)
    if p == 2:
        return (v % 2, u % 8)
    return (v % 2, 1 if pow(u % p, (p - 1) // 2, p) == 1 else -1)


def _mul_class(c1, c2, p):
    if p == 2:
        return ((c1[0] + c2[0]) % 2, (c1[1] * c2[1]) % 8)
    return ((c1[0] + c2[0]) % 2, c1[1] * c2[1])


def hilbert_oracle(a, b, p=None) -> int:
    """(a, b)_p = 1 iff b is a norm from Q_p(sqrt a), found by sampling norms."""
    a, b = _to_int(a), _to_int(b)
    if p is None:
        return -1 if a < 0 and b < 0 else 1
    if local_class(a, p) == (0, 1):
        return 1
    return 1 if local_class(b, p) in _norm_group(a, p) else -1


@lru_cache(maxsize=None)
def _norm_group(a: int, p: int) -> frozenset:
    one = (0, 1)
    span = 64 if p == 2 else p + 2  # x^2 - a y^2 covers every unit class mod p
    norms = set()
    for x, y in product(range(span), repeat=2):
        v = x * x - a * y * y
        if v:
            norms.add(local_class(v, p))
    group = {one}
    while True:
        bigger = group | {_mul_class(g, h, p) for g in group for h in norms}
        if bigger == group:
            break
        group = bigger
    return frozenset(group)


# --- sums of two squares by exhaustive search ------------------------------------

def _int_sos(t: int) -> bool:
    for u in range(math.isqrt(t) + 1):
        r = t - u * u
        if math.isqrt(r) ** 2 == r:
            return True
    return False


def sos_oracle(q, max_den: int = 50) -> bool:
    """Is q = (u/d)^2 + (v/d)^2 for some d <= max_den?"""
    q = Fraction(q)
    if q < 0:
        return False
    for d in range(1, max_den + 1):
        t = q * d * d
        if t.denominator == 1 and _int_sos(t.numerator):
            return True
    return False


def sos_by_factoring(q) -> bool:
    q = Fraction(q)
    if q == 0:
        return True
    if q < 0:
        return False
    n = q.numerator * q.denominator
    return all(e % 2 == 0 for p, e in sympy.factorint(n).items() if p % 4 == 3)


# --- rational roots by the rational root theorem ----------------------------------

def _divisors(n: int):
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def rational_roots_oracle(coeffs) -> set[Fraction]:
    """Rational roots of a polynomial with small rational coefficients
    (highest degree first)."""
    den = math.lcm(*(Fraction(c).denominator for c in coeffs))
    ints = [int(Fraction(c) * den) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    roots = {Fraction(0)} if len(ints) < len(coeffs) else set()
    lead, const = ints[0], ints[-1]
    for p in _divisors(const):
        for q in _divisors(lead):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if sum(c * r ** (len(ints) - 1 - i) for i, c in enumerate(ints)) == 0:
                    roots.add(r)
    return roots
