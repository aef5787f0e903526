"""Formal products of simple functions on E.

Elements of Q(E)* are kept as products of atoms ``x - c``, ``y``, affine
lines ``alpha*x + beta*y + gamma`` and nonzero constants, with integer
exponents.  Nothing is ever expanded: valuations and signs are computed
atom by atom.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .arith import rat, sign
from .elliptic import (
    Curve,
    LinearForm,
    O,
    Point,
    line_divisor,
    line_valuation,
    point_key,
)
from .errors import InvalidInput, NegativeUnderRoot, PoleOrZeroAtPoint, UnsupportedClosedPoint


@dataclass(frozen=True)
class XMinusC:
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", rat(self.c))

    @property
    def form(self) -> LinearForm:
        return LinearForm(1, 0, -self.c)

    def __str__(self):
        return f"(x - {self.c})" if self.c >= 0 else f"(x + {-self.c})"


@dataclass(frozen=True)
class YFn:
    form = LinearForm(0, 1, 0)

    def __str__(self):
        return "y"


@dataclass(frozen=True)
class Line:
    form: LinearForm

    def __str__(self):
        f = self.form
        return f"({f.alpha}x + {f.beta}y + {f.gamma})"


@dataclass(frozen=True)
class Const:
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", rat(self.q))
        if self.q == 0:
            raise InvalidInput("constant atom must be nonzero")

    def __str__(self):
        return f"({self.q})"


Atom = Union[XMinusC, YFn, Line, Const]


@dataclass(frozen=True)
class FnElement:
    """A product of atoms raised to nonzero integer exponents."""

    factors: tuple[tuple[Atom, int], ...] = ()

    def __post_init__(self):
        merged: dict = {}
        for atom, e in self.factors:
            merged[atom] = merged.get(atom, 0) + int(e)
        object.__setattr__(
            self, "factors", tuple((a, e) for a, e in merged.items() if e != 0)
        )

    @classmethod
    def of(cls, *atoms: Atom) -> "FnElement":
        return cls(tuple((a, 1) for a in atoms))

    @classmethod
    def ratio(cls, num: Atom, den: Atom) -> "FnElement":
        return cls(((num, 1), (den, -1)))

    def __mul__(self, other: "FnElement") -> "FnElement":
        return FnElement(self.factors + other.factors)

    def __truediv__(self, other: "FnElement") -> "FnElement":
        return self * other.inverse()

    def __pow__(self, n: int) -> "FnElement":
        return FnElement(tuple((a, e * n) for a, e in self.factors))

    def inverse(self) -> "FnElement":
        return self**-1

    @property
    def is_one(self) -> bool:
        return not self.factors

    def __str__(self):
        if not self.factors:
            return "1"
        return " ".join(str(a) if e == 1 else f"{a}^{e}" for a, e in self.factors)


ONE = FnElement()


def line(ell: LinearForm) -> Atom:
    """Atom for ell/Z; the line at infinity gives a constant."""
    if ell.is_line_at_infinity:
        return Const(ell.gamma)
    return Line(ell)


def chatelet_coefficient(xs: Iterable[Fraction]) -> FnElement:
    """prod (x - x_i)."""
    return FnElement(tuple((XMinusC(x), 1) for x in xs))


def atom_valuation(E: Curve, atom: Atom, P: Point) -> int:
    if isinstance(atom, Const):
        return 0
    if isinstance(atom, YFn):
        E.check(P)
        if P.is_infinity:
            return -3
        return 1 if P.y == 0 else 0
    return line_valuation(E, atom.form, P)


def valuation(E: Curve, f: FnElement, P: Point) -> int:
    """Order of vanishing of f at the rational point P (negative for poles)."""
    E.check(P)
    return sum(e * atom_valuation(E, a, P) for a, e in f.factors)


def _atom_value(atom: Atom, P: Point) -> Fraction:
    if isinstance(atom, Const):
        return atom.q
    if isinstance(atom, YFn):
        return P.y
    if isinstance(atom, XMinusC):
        return P.x - atom.c
    return atom.form(P.x, P.y)


def evaluate_exact(E: Curve, f: FnElement, P: Point) -> Fraction:
    """Exact value of f at an affine point where no atom vanishes."""
    E.check(P)
    if P.is_infinity:
        raise PoleOrZeroAtPoint("evaluation at O is not supported")
    value = Fraction(1)
    for atom, e in f.factors:
        v = _atom_value(atom, P)
        if v == 0:
            raise PoleOrZeroAtPoint(f"{atom} vanishes at {P!r}", point=P)
        value *= v**e
    return value


def _line_sign(ell: LinearForm, x0: Fraction, rhs: Fraction) -> int:
    # sign of alpha*x0 + beta*y0 + gamma with y0 = +sqrt(rhs)
    u = ell.alpha * x0 + ell.gamma
    if ell.beta == 0 or rhs == 0:
        return sign(u)
    s = sign(ell.beta)
    if sign(u) in (0, s):
        return s
    lhs, right = u * u, ell.beta * ell.beta * rhs
    if lhs > right:
        return sign(u)
    if lhs < right:
        return s
    return 0


def atom_sign_on_upper_branch(E: Curve, atom: Atom, x0: Fraction) -> int:
    rhs = E.cubic(x0)
    if rhs < 0:
        raise NegativeUnderRoot(f"no real point with x = {x0}")
    if isinstance(atom, Const):
        return sign(atom.q)
    if isinstance(atom, YFn):
        return sign(rhs)
    if isinstance(atom, XMinusC):
        return sign(x0 - atom.c)
    return _line_sign(atom.form, x0, rhs)


def sign_on_upper_branch(E: Curve, f: FnElement, x0) -> int:
    """Sign of f at (x0, +sqrt(x0^3 + A x0 + B)), by exact comparisons.

    Returns 0 when some atom vanishes there (f is zero, has a pole, or is
    indeterminate as written).
    """
    x0 = rat(x0)
    out = 1
    for atom, e in f.factors:
        s = atom_sign_on_upper_branch(E, atom, x0)
        if s == 0:
            return 0
        if s < 0 and e % 2:
            out = -out
    return out


def support(E: Curve, f: FnElement) -> list[Point]:
    """Rational points where some atom has a zero or pole (O included).

    Raises UnsupportedClosedPoint if an atom also vanishes at a closed point
    of degree > 1, since valuations are only available at rational points.
    """
    points = {O}
    for atom, _ in f.factors:
        if isinstance(atom, Const):
            continue
        div = line_divisor(E, atom.form)
        if div.irrational_degree:
            raise UnsupportedClosedPoint(
                f"{atom} vanishes at a closed point of degree > 1", atom=str(atom)
            )
        points.update(p for p, _ in div.rational)
    return sorted(points, key=point_key)
