"""Exact rational arithmetic over Q: square classes, local symbols, sums of two squares.

Rationals are :class:`fractions.Fraction` throughout (canonical: reduced,
positive denominator).  Square classes of Q* are represented by their
squarefree integer representative, sign included.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from . import config
from .errors import FactorBoundExceeded, InvalidInput, ZeroInput

RatLike = Union[int, str, Fraction]

# Miller-Rabin with the first 13 primes as bases is deterministic below this.
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def rat(value: RatLike) -> Fraction:
    """Coerce ints, ``"p/q"`` strings and Fractions to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInput(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"not a rational: {value!r}") from exc
    raise InvalidInput(f"not a rational: {value!r}")


def rat_str(q: Fraction) -> str:
    """Serialize as ``"num/den"`` (den omitted when 1)."""
    return str(q)


def sign(q) -> int:
    return (q > 0) - (q < 0)


# ---------------------------------------------------------------------------
# factoring
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _sieve(limit: int) -> tuple[int, ...]:
    if limit < 2:
        return ()
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, f in enumerate(flags) if f)


def _primes_upto(limit: int) -> tuple[int, ...]:
    # Sieve in powers of two so repeated calls with nearby limits share a cache entry.
    size = 1024
    while size < limit:
        size *= 2
    primes = _sieve(size)
    return primes[: bisect.bisect_right(primes, limit)]


def is_prime(n: int) -> bool:
    """Deterministic primality below ~3.3e24; raises beyond that range."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_DETERMINISTIC_LIMIT:
        raise FactorBoundExceeded(f"primality of {n} not decidable deterministically")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass
class TrialFactorization:
    """Result of trial division of ``n`` up to a bound.

    ``cofactor`` has no prime factor <= ``bound``.  ``cofactor_kind`` is one
    of ``"one"``, ``"prime"``, ``"square"`` (a perfect square; its own
    factorization is unknown) or ``"unknown"``.
    """

    n: int
    bound: int
    primes: dict[int, int] = field(default_factory=dict)
    cofactor: int = 1
    cofactor_kind: str = "one"

    @property
    def complete(self) -> bool:
        return self.cofactor_kind in ("one", "prime")

    def full(self) -> dict[int, int]:
        """The complete factorization; raises if the cofactor is unresolved."""
        if self.cofactor_kind == "one":
            return dict(self.primes)
        if self.cofactor_kind == "prime":
            out = dict(self.primes)
            out[self.cofactor] = 1
            return out
        raise FactorBoundExceeded(
            f"{self.n} has a cofactor with no prime factor <= {self.bound}",
            cofactor=self.cofactor,
        )


def trial_factor(n: int, bound: int | None = None) -> TrialFactorization:
    """Factor ``|n|`` by trial division up to ``bound`` (default from config)."""
    if bound is None:
        bound = config.factor_bound()
    n = abs(n)
    if n == 0:
        raise ZeroInput("cannot factor 0")
    result = TrialFactorization(n=n, bound=bound)
    m = n
    limit = min(bound, math.isqrt(m))
    for p in _primes_upto(limit):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            result.primes[p] = e
    if m == 1:
        return result
    result.cofactor = m
    # all prime factors of m exceed min(bound, sqrt(m_original)) here
    r = math.isqrt(m)
    if r * r == m:
        result.cofactor_kind = "square"
    elif (limit + 1) ** 2 > m:
        result.cofactor_kind = "prime"
    else:
        try:
            prime = is_prime(m)
        except FactorBoundExceeded:
            prime = False
        result.cofactor_kind = "prime" if prime else "unknown"
    return result


def squarefree_part(n: int, bound: int | None = None) -> int:
    """Signed squarefree part of a nonzero integer."""
    if n == 0:
        raise ZeroInput("squarefree part of 0")
    tf = trial_factor(n, bound)
    out = 1
    for p, e in tf.primes.items():
        if e % 2:
            out *= p
    if tf.cofactor_kind == "prime":
        out *= tf.cofactor
    elif tf.cofactor_kind == "unknown":
        raise FactorBoundExceeded(
            f"squarefree part of {n} needs a factor beyond {tf.bound}", cofactor=tf.cofactor
        )
    return out if n > 0 else -out


def square_class(q: RatLike, bound: int | None = None) -> int:
    """Squarefree integer representing ``q`` in Q*/Q*^2."""
    q = rat(q)
    if q == 0:
        raise ZeroInput("square class of 0")
    return squarefree_part(q.numerator * q.denominator, bound)


def squarefree_product(a: int, b: int) -> int:
    """Square class of a*b for squarefree a, b; needs no factoring."""
    g = math.gcd(a, b)
    return (a // g) * (b // g)


def is_square(q: RatLike) -> bool:
    q = rat(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact nonnegative square root of q, or None if q is not a square."""
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def p_adic_valuation(q: RatLike, p: int) -> tuple[int, Fraction]:
    """Return (v_p(q), q / p^v_p(q))."""
    q = rat(q)
    if q == 0:
        raise ZeroInput("valuation of 0")
    n, d, v = q.numerator, q.denominator, 0
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v, Fraction(n, d)


# ---------------------------------------------------------------------------
# symbols
# ---------------------------------------------------------------------------

def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise InvalidInput("jacobi symbol needs odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    if p < 3 or p % 2 == 0:
        raise InvalidInput(f"legendre symbol needs an odd prime, got {p}")
    return jacobi(a, p)


@dataclass(frozen=True)
class Place:
    """A place of Q: ``Place()`` is the real place, ``Place(p)`` the p-adic one."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and (self.p < 2 or not is_prime(self.p)):
            raise InvalidInput(f"place must be a prime, got {self.p}")

    @property
    def is_real(self) -> bool:
        return self.p is None

    def __str__(self):
        return "inf" if self.p is None else str(self.p)

    @classmethod
    def parse(cls, value) -> "Place":
        if isinstance(value, Place):
            return value
        if value in (None, "inf", "infinity", "oo", "real", "R"):
            return REAL
        return cls(int(value))


REAL = Place()


def _eps(t: int) -> int:
    return (t % 8 - 1) // 2 % 2


def _omega(t: int) -> int:
    return ((t % 8) ** 2 - 1) // 8 % 2


def hilbert_symbol(a: RatLike, b: RatLike, v) -> int:
    """Hilbert symbol (a, b)_v: +1 iff z^2 = a x^2 + b y^2 has a nonzero Q_v solution."""
    a, b = rat(a), rat(b)
    if a == 0 or b == 0:
        raise ZeroInput("hilbert symbol of 0")
    v = Place.parse(v)
    if v.is_real:
        return -1 if a < 0 and b < 0 else 1
    p = v.p
    alpha, u = p_adic_valuation(a, p)
    beta, w = p_adic_valuation(b, p)
    # units: u = n/d with p not dividing n*d; d^-1 and d agree modulo squares
    u_int = u.numerator * u.denominator
    w_int = w.numerator * w.denominator
    if p == 2:
        e = _eps(u_int) * _eps(w_int) + alpha * _omega(w_int) + beta * _omega(u_int)
        return -1 if e % 2 else 1
    s = 1
    if (alpha * beta * ((p - 1) // 2)) % 2:
        s = -s
    if beta % 2:
        s *= legendre(u_int, p)
    if alpha % 2:
        s *= legendre(w_int, p)
    return s


def is_sum_of_two_squares(q: RatLike, bound: int | None = None) -> bool:
    """True iff q = r^2 + s^2 with r, s rational (0 counts)."""
    q = rat(q)
    if q == 0:
        return True
    if q < 0:
        return False
    tf = trial_factor(q.numerator * q.denominator, bound)
    for p, e in tf.primes.items():
        if p % 4 == 3 and e % 2:
            return False
    kind, c = tf.cofactor_kind, tf.cofactor
    if kind in ("one", "square"):
        return True
    if kind == "prime":
        return c % 4 != 3  # c may be 2
    if c % 4 == 3:
        # forces some prime = 3 mod 4 to an odd power
        return False
    raise FactorBoundExceeded(
        f"sum-of-two-squares test for {q} needs factoring {c}", cofactor=c
    )


def local_places(*values: Fraction, bound: int | None = None) -> tuple[list[Place], int]:
    """Places that can make a Hilbert symbol of these values nontrivial.

    Returns the real place, 2, and every known prime of the numerators and
    denominators, plus the product of unresolved cofactors (1 if none).  The
    cofactor has no prime factor <= the trial bound.
    """
    primes = {2}
    unresolved = 1
    for q in values:
        q = rat(q)
        for part in (q.numerator, q.denominator):
            if abs(part) == 1:
                continue
            tf = trial_factor(part, bound)
            primes.update(tf.primes)
            if tf.cofactor_kind == "prime":
                primes.add(tf.cofactor)
            elif tf.cofactor_kind == "square":
                r = math.isqrt(tf.cofactor)
                sub = trial_factor(r, bound)
                if sub.cofactor_kind == "prime":
                    primes.add(r)
                else:
                    unresolved *= tf.cofactor
            elif tf.cofactor_kind == "unknown":
                unresolved *= tf.cofactor
    places = [REAL] + [Place(p) for p in sorted(primes)]
    return places, unresolved
