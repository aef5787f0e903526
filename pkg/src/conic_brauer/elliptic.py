"""Elliptic curves y^2 = x^3 + Ax + B over Q with exact arithmetic.

Covers the group law, rational 2-torsion, point halving, tangent lines and
intersection multiplicities of lines with the curve.  Rational roots of
auxiliary polynomials come from sympy's exact factorization over Q, so no
integer factoring is involved.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .arith import RatLike, rat, rational_sqrt
from .errors import DegenerateForm, InvalidInput, PointAtInfinity, PointNotOnCurve

_X = sympy.Symbol("x")


# ---------------------------------------------------------------------------
# polynomials over Q, coefficient lists from the leading term down
# ---------------------------------------------------------------------------

def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def root_multiplicity(coeffs: Sequence[Fraction], r: Fraction) -> int:
    """Multiplicity of r as a root, by repeated synthetic division."""
    coeffs = list(coeffs)
    mult = 0
    while len(coeffs) > 1:
        quotient, acc = [], Fraction(0)
        for c in coeffs:
            acc = acc * r + c
            quotient.append(acc)
        if quotient[-1] != 0:
            break
        coeffs = quotient[:-1]
        mult += 1
    return mult


def _to_sympy(coeffs: Sequence[Fraction]) -> sympy.Poly:
    return sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in coeffs], _X, domain="QQ"
    )


def _to_fraction(r) -> Fraction:
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


def rational_roots(coeffs: Sequence[Fraction]) -> dict[Fraction, int]:
    """All rational roots with multiplicities."""
    poly = _to_sympy(coeffs)
    if poly.is_zero:
        raise InvalidInput("zero polynomial has no finite root set")
    return {_to_fraction(r): int(m) for r, m in poly.ground_roots().items()}


def factor_degrees(coeffs: Sequence[Fraction]) -> list[tuple[int, int, Fraction | None]]:
    """Irreducible factorization as (degree, multiplicity, root if linear)."""
    _, factors = _to_sympy(coeffs).factor_list()
    out = []
    for f, m in factors:
        deg = f.degree()
        root = None
        if deg == 1:
            a, b = f.all_coeffs()
            root = _to_fraction(-b / a)
        out.append((deg, int(m), root))
    return out


# ---------------------------------------------------------------------------
# curves and points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Point:
    """A rational point; ``Point()`` is the point at infinity O."""

    x: Fraction | None = None
    y: Fraction | None = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise InvalidInput("a point needs both coordinates or neither")
        if self.x is not None:
            object.__setattr__(self, "x", rat(self.x))
            object.__setattr__(self, "y", rat(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


O = Point()


def point_key(P: Point):
    """Total order on points: O first, then lexicographic in (x, y)."""
    return (0,) if P.is_infinity else (1, P.x, P.y)


class RealComponents(enum.Enum):
    CONNECTED = "connected"
    TWO_COMPONENTS = "two-components"


@dataclass(frozen=True)
class Curve:
    """Short Weierstrass curve y^2 = x^3 + A x + B.

    ``shift`` records the translation used when the curve was given in
    factored form: a user abscissa is the internal one plus ``shift``.
    """

    A: Fraction
    B: Fraction
    shift: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        object.__setattr__(self, "A", rat(self.A))
        object.__setattr__(self, "B", rat(self.B))
        object.__setattr__(self, "shift", rat(self.shift))
        if self.discriminant == 0:
            raise InvalidInput(f"singular curve: A={self.A}, B={self.B}")

    @classmethod
    def from_roots(cls, roots: Iterable[RatLike]) -> "Curve":
        """Curve y^2 = (x - a1)(x - a2)(x - a3), depressed by x -> x + s/3."""
        a1, a2, a3 = (rat(r) for r in roots)
        if len({a1, a2, a3}) != 3:
            raise InvalidInput("roots must be distinct")
        s1 = a1 + a2 + a3
        s2 = a1 * a2 + a1 * a3 + a2 * a3
        s3 = a1 * a2 * a3
        shift = s1 / 3
        # (X + h)^3 - s1 (X + h)^2 + s2 (X + h) - s3 with h = s1/3
        A = s2 - s1 * s1 / 3
        B = -2 * s1**3 / 27 + s1 * s2 / 3 - s3
        return cls(A, B, shift)

    @property
    def discriminant(self) -> Fraction:
        return -16 * (4 * self.A**3 + 27 * self.B**2)

    def cubic(self, x: Fraction) -> Fraction:
        return x**3 + self.A * x + self.B

    @property
    def cubic_coeffs(self) -> list[Fraction]:
        return [Fraction(1), Fraction(0), self.A, self.B]

    # coordinates ----------------------------------------------------------

    def point(self, x: RatLike, y: RatLike) -> Point:
        """Internal-coordinate point, checked to lie on the curve."""
        P = Point(rat(x), rat(y))
        self.check(P)
        return P

    def from_user(self, x: RatLike, y: RatLike) -> Point:
        return self.point(rat(x) - self.shift, y)

    def to_user(self, P: Point) -> tuple[Fraction, Fraction] | None:
        if P.is_infinity:
            return None
        return P.x + self.shift, P.y

    def contains(self, P: Point) -> bool:
        return P.is_infinity or P.y**2 == self.cubic(P.x)

    def check(self, *points: Point) -> None:
        for P in points:
            if not self.contains(P):
                raise PointNotOnCurve(f"{P!r} is not on {self}")

    # group law ----------------------------------------------------------------

    def neg(self, P: Point) -> Point:
        self.check(P)
        return P if P.is_infinity else Point(P.x, -P.y)

    def add(self, P: Point, Q: Point) -> Point:
        self.check(P, Q)
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        if P.x == Q.x:
            if P.y == -Q.y:
                return O
            lam = (3 * P.x**2 + self.A) / (2 * P.y)
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        x3 = lam * lam - P.x - Q.x
        return Point(x3, lam * (P.x - x3) - P.y)

    def double(self, P: Point) -> Point:
        return self.add(P, P)

    def mul(self, n: int, P: Point) -> Point:
        self.check(P)
        if n < 0:
            return self.mul(-n, self.neg(P))
        result, addend = O, P
        while n:
            if n & 1:
                result = self.add(result, addend)
            addend = self.add(addend, addend)
            n >>= 1
        return result

    def __str__(self):
        return f"y^2 = x^3 + ({self.A})x + ({self.B})"


# ---------------------------------------------------------------------------
# lines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearForm:
    """The projective line alpha*X + beta*Y + gamma*Z."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.alpha == self.beta == self.gamma == 0:
            raise DegenerateForm("the zero form is not a line")

    def __call__(self, x: Fraction, y: Fraction) -> Fraction:
        return self.alpha * x + self.beta * y + self.gamma

    @property
    def is_vertical(self) -> bool:
        return self.beta == 0 and self.alpha != 0

    @property
    def is_line_at_infinity(self) -> bool:
        return self.alpha == 0 and self.beta == 0

    def cleared(self) -> "LinearForm":
        """Rescale by a positive rational to coprime integer coefficients."""
        coeffs = (self.alpha, self.beta, self.gamma)
        den = math.lcm(*(c.denominator for c in coeffs))
        ints = [int(c * den) for c in coeffs]
        g = math.gcd(*ints)
        return LinearForm(*(Fraction(i, g) for i in ints))

    def same_line(self, other: "LinearForm") -> bool:
        a = (self.alpha, self.beta, self.gamma)
        b = (other.alpha, other.beta, other.gamma)
        return all(a[i] * b[j] == a[j] * b[i] for i in range(3) for j in range(3))

    def __repr__(self):
        return f"{self.alpha}X + {self.beta}Y + {self.gamma}Z"


Z_FORM = LinearForm(0, 0, 1)


def substituted_cubic(E: Curve, ell: LinearForm) -> list[Fraction]:
    """x^3 + A x + B - y(x)^2 with y(x) read off a non-vertical line."""
    if ell.beta == 0:
        raise InvalidInput("substituted cubic needs a non-vertical line")
    m = -ell.alpha / ell.beta
    c = -ell.gamma / ell.beta
    # y = m x + c
    return [Fraction(1), -m * m, E.A - 2 * m * c, E.B - c * c]


def two_torsion(E: Curve) -> list[Point]:
    """O together with every rational point with y = 0."""
    roots = rational_roots(E.cubic_coeffs)
    return sorted([O] + [Point(r, Fraction(0)) for r in roots], key=point_key)


def halve(E: Curve, P: Point) -> list[Point]:
    """Every rational Q with 2Q = P, sorted by :func:`point_key`."""
    E.check(P)
    if P.is_infinity:
        return two_torsion(E)
    A, B, xp = E.A, E.B, P.x
    # x(2Q) = xp  <=>  x^4 - 2A x^2 - 8B x + A^2 - 4 xp (x^3 + A x + B) = 0
    quartic = [Fraction(1), -4 * xp, -2 * A, -8 * B - 4 * xp * A, A * A - 4 * xp * B]
    halves = set()
    for r in rational_roots(quartic):
        s = rational_sqrt(E.cubic(r))
        if s is None:
            continue
        for y in {s, -s}:
            Q = Point(r, y)
            if E.double(Q) == P:
                halves.add(Q)
    return sorted(halves, key=point_key)


def tangent_line(E: Curve, Q: Point) -> LinearForm:
    """Tangent to E at an affine point Q; it meets E again at -2Q."""
    E.check(Q)
    if Q.is_infinity:
        raise PointAtInfinity("tangent at O is the line at infinity")
    if Q.y == 0:
        return LinearForm(1, 0, -Q.x).cleared()
    lam = (3 * Q.x**2 + E.A) / (2 * Q.y)
    return LinearForm(lam, -1, Q.y - lam * Q.x).cleared()


def pole_order_at_infinity(ell: LinearForm) -> int:
    """Pole order of ell/Z at O, from v_O(x) = -2 and v_O(y) = -3."""
    if ell.beta != 0:
        return 3
    if ell.alpha != 0:
        return 2
    return 0


def intersection_multiplicity(E: Curve, ell: LinearForm, P: Point) -> int:
    """Intersection multiplicity of the line with E at an affine P.

    At O this returns the pole order of ell/Z instead; see
    :func:`line_valuation` for the signed version.
    """
    E.check(P)
    if P.is_infinity:
        return pole_order_at_infinity(ell)
    if ell(P.x, P.y) != 0:
        return 0
    if ell.beta != 0:
        return root_multiplicity(substituted_cubic(E, ell), P.x)
    # vertical line through P (alpha != 0 since ell(P) = 0)
    return 1 if P.y != 0 else 2


def line_valuation(E: Curve, ell: LinearForm, P: Point) -> int:
    """v_P(ell / Z)."""
    if P.is_infinity:
        return -pole_order_at_infinity(ell)
    return intersection_multiplicity(E, ell, P)


@dataclass(frozen=True)
class LineDivisor:
    """Affine zeros of a line on E: rational points plus the total degree of
    irrational intersection clusters.  ``pole_order`` is the order at O."""

    rational: tuple[tuple[Point, int], ...]
    irrational_degree: int
    pole_order: int

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.rational) + self.irrational_degree - self.pole_order


def line_divisor(E: Curve, ell: LinearForm) -> LineDivisor:
    pole = pole_order_at_infinity(ell)
    if ell.is_line_at_infinity:
        return LineDivisor((), 0, 0)
    if ell.is_vertical:
        c = -ell.gamma / ell.alpha
        value = E.cubic(c)
        if value == 0:
            return LineDivisor(((Point(c, Fraction(0)), 2),), 0, pole)
        s = rational_sqrt(value)
        if s is None:
            return LineDivisor((), 2, pole)
        pts = sorted([Point(c, s), Point(c, -s)], key=point_key)
        return LineDivisor(tuple((p, 1) for p in pts), 0, pole)
    m, c = -ell.alpha / ell.beta, -ell.gamma / ell.beta
    rational, irrational = [], 0
    for deg, mult, root in factor_degrees(substituted_cubic(E, ell)):
        if deg == 0:
            continue
        if deg == 1:
            rational.append((Point(root, m * root + c), mult))
        else:
            irrational += deg * mult
    rational.sort(key=lambda pm: point_key(pm[0]))
    return LineDivisor(tuple(rational), irrational, pole)


def real_components(E: Curve) -> RealComponents:
    """E(R) is connected iff the cubic has a single real root."""
    if 4 * E.A**3 + 27 * E.B**2 > 0:
        return RealComponents.CONNECTED
    return RealComponents.TWO_COMPONENTS
