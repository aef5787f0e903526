"""Conic bundles x0^2 - a x1^2 = f x2^2 over an elliptic curve.

Three flavours are supported: the Chatelet-like family with
f = prod (x - x_i), the sums-of-two-squares bundle (a = -1, f = y), and a
custom coefficient.  The singular locus is read off residue parity; the
locus and group size that the closed-form count predicts are computed
alongside and any disagreement is reported as a structured warning.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .arith import (
    Place,
    hilbert_symbol,
    is_sum_of_two_squares,
    jacobi,
    local_places,
    rat,
    square_class,
)
from .brauer import BrauerReport, QuaternionClass, compute_brauer_group
from .elliptic import Curve, O, Point, point_key, two_torsion
from .errors import FactorBoundExceeded, InvalidInput, PoleOrZeroAtPoint
from .function_field import (
    FnElement,
    YFn,
    chatelet_coefficient,
    evaluate_exact,
    support,
    valuation,
)

log = logging.getLogger(__name__)

CHATELET = "chatelet"
SUMS_OF_TWO_SQUARES = "sums-of-two-squares"
CUSTOM = "custom"
FLAVORS = (CHATELET, SUMS_OF_TWO_SQUARES, CUSTOM)


@dataclass(frozen=True)
class BundleSpec:
    curve: Curve
    a: Fraction
    coefficient: FnElement
    flavor: str = CUSTOM
    points: tuple[Point, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "a", rat(self.a))
        if self.flavor not in FLAVORS:
            raise InvalidInput(f"unknown flavor {self.flavor!r}")
        if self.a == 0 or square_class(self.a) == 1:
            raise InvalidInput(f"a = {self.a} must be a nonzero non-square")
        self.curve.check(*self.points)
        if self.flavor == CHATELET:
            if not self.points:
                raise InvalidInput("chatelet flavor needs at least one point")
            if any(P.is_infinity for P in self.points):
                raise InvalidInput("chatelet points must be affine")
            if len(set(self.points)) != len(self.points):
                raise InvalidInput("chatelet points must be distinct")
        if self.flavor == SUMS_OF_TWO_SQUARES and self.a != -1:
            raise InvalidInput("sums-of-two-squares flavor has a = -1")

    @classmethod
    def chatelet(cls, E: Curve, a, points: Sequence[Point]) -> "BundleSpec":
        points = tuple(points)
        return cls(E, rat(a), chatelet_coefficient(P.x for P in points), CHATELET, points)

    @classmethod
    def sums_of_two_squares(cls, E: Curve) -> "BundleSpec":
        return cls(E, Fraction(-1), FnElement.of(YFn()), SUMS_OF_TWO_SQUARES)

    @classmethod
    def custom(cls, E: Curve, a, f: FnElement) -> "BundleSpec":
        return cls(E, rat(a), f, CUSTOM)

    @property
    def n(self) -> int:
        return len(self.points)


def generic_fibre_class(spec: BundleSpec) -> QuaternionClass:
    return QuaternionClass(spec.a, spec.coefficient)


@dataclass
class SingularLocus:
    points: list[Point]
    n: int | None
    t: int | None
    candidates: list[Point]
    stated_points: list[Point] | None
    warnings: list[dict] = field(default_factory=list)

    @property
    def agrees_with_stated(self) -> bool:
        return self.stated_points is None or set(self.stated_points) == set(self.points)


def _dedupe(points):
    seen, out = set(), []
    for P in points:
        if P not in seen:
            seen.add(P)
            out.append(P)
    return out


def _candidates(spec: BundleSpec) -> list[Point]:
    E = spec.curve
    rational_support = support(E, spec.coefficient)  # raises on irrational zeros
    if spec.flavor == CHATELET:
        pts = []
        for P in spec.points:
            pts += [P, E.neg(P)]
        return _dedupe(pts + two_torsion(E) + [O])
    if spec.flavor == SUMS_OF_TWO_SQUARES:
        return _dedupe([O] + two_torsion(E))
    return _dedupe(sorted(rational_support, key=point_key))


def stated_locus(spec: BundleSpec) -> list[Point] | None:
    """The closed-form singular locus of the family, for comparison only."""
    E = spec.curve
    if spec.flavor == CHATELET:
        pts = []
        for P in spec.points:
            pts += [P, E.neg(P)]
        if spec.n % 2:
            pts.append(O)
        return _dedupe(pts)
    if spec.flavor == SUMS_OF_TWO_SQUARES:
        return _dedupe([O] + two_torsion(E))
    return None


def singular_locus(spec: BundleSpec) -> SingularLocus:
    """Points where the generic fibre class ramifies (odd valuation of f)."""
    E = spec.curve
    candidates = _candidates(spec)
    points = [P for P in candidates if valuation(E, spec.coefficient, P) % 2]
    n = t = None
    if spec.flavor == CHATELET:
        n = spec.n
        t = sum(1 for P in spec.points if P.y == 0)
    stated = stated_locus(spec)
    locus = SingularLocus(points, n, t, candidates, stated)
    if stated is not None and set(stated) != set(points):
        warning = {
            "code": "singular-locus-mismatch",
            "engine_only": [P for P in points if P not in stated],
            "stated_only": [P for P in stated if P not in points],
            "message": "closed-form locus differs from residue parity; engine value used",
        }
        log.info("singular locus mismatch: %s", warning)
        locus.warnings.append(warning)
    return locus


def corollary_rank(n: int, t: int) -> int:
    """Closed-form exponent for the Chatelet-like family."""
    if n < 1 or not 0 <= t <= n:
        raise InvalidInput(f"need n >= 1 and 0 <= t <= n, got n={n}, t={t}")
    return 2 * n - t - 1 if n % 2 else 2 * n - t - 2


@dataclass
class BundleAnalysis:
    spec: BundleSpec
    locus: SingularLocus
    brauer: BrauerReport | None
    corollary_rank: int | None
    warnings: list[dict] = field(default_factory=list)

    @property
    def engine_rank(self) -> int | None:
        return None if self.brauer is None else self.brauer.theorem_rank


def analyze(spec: BundleSpec) -> BundleAnalysis:
    """Singular locus, Br(X)/Br(E) and the closed-form comparison."""
    locus = singular_locus(spec)
    warnings = list(locus.warnings)
    report = None
    if locus.points:
        report = compute_brauer_group(
            spec.curve, spec.a, generic_fibre_class(spec), locus.points, strict=False
        )
    else:
        warnings.append({"code": "A-unramified", "message": "A has no residue on E"})
    cor = None
    if spec.flavor == CHATELET:
        cor = corollary_rank(locus.n, locus.t)
        engine = None if report is None else report.theorem_rank
        if engine != cor:
            warnings.append(
                {
                    "code": "rank-mismatch",
                    "engine_rank": engine,
                    "stated_rank": cor,
                    "message": "closed-form rank differs from the engine's |S| - 2",
                }
            )
    return BundleAnalysis(spec, locus, report, cor, warnings)


# ---------------------------------------------------------------------------
# fibres
# ---------------------------------------------------------------------------

def fibre_value(spec: BundleSpec, P: Point) -> Fraction:
    """f(P) at a point with a smooth fibre; singular fibres raise."""
    E = spec.curve
    E.check(P)
    if P.is_infinity:
        raise PoleOrZeroAtPoint("fibre over O is not an affine conic", point=P)
    if valuation(E, spec.coefficient, P) != 0:
        raise PoleOrZeroAtPoint(f"fibre over {P!r} is singular", point=P)
    return evaluate_exact(E, spec.coefficient, P)


def fibre_has_local_point(spec: BundleSpec, P: Point, v) -> bool:
    return hilbert_symbol(spec.a, fibre_value(spec, P), Place.parse(v)) == 1


def _hasse(a: Fraction, c: Fraction) -> bool:
    places, unresolved = local_places(a, c)
    for v in places:
        if hilbert_symbol(a, c, v) == -1:
            return False
    if unresolved == 1:
        return True
    # primes of the cofactor exceed the bound, so they are odd and prime to a;
    # there (a, c)_p = (a/p)^{v_p(c)}, and the product of those is a Jacobi symbol
    d = square_class(a)
    if jacobi(d, unresolved) == -1:
        return False
    raise FactorBoundExceeded(
        f"local solvability at the primes of {unresolved} is undecided", cofactor=unresolved
    )


def fibre_has_rational_point(spec: BundleSpec, P: Point) -> bool:
    """Hasse-Minkowski: the smooth fibre conic has a Q-point iff it has one
    at every place."""
    c = fibre_value(spec, P)
    answer = _hasse(spec.a, c)
    if square_class(spec.a) == -1:
        try:
            expected = is_sum_of_two_squares(c)
        except FactorBoundExceeded:
            expected = answer
        if expected != answer:
            raise RuntimeError(f"local-global and two-squares tests disagree at {P!r}")
    return answer


class SurveyEntry(NamedTuple):
    m: int
    point: Point
    has_rational_point: bool | None
    note: str | None = None


def survey_multiples(spec: BundleSpec, G: Point, M: int) -> list[SurveyEntry]:
    """Fibre solvability over mG for m = 1..M.

    Singular fibres (and O) are flagged with ``has_rational_point=None``.  If
    factoring stops the survey, the FactorBoundExceeded raised carries the
    completed entries as ``partial``.
    """
    E = spec.curve
    E.check(G)
    if M < 1:
        raise InvalidInput("M must be >= 1")
    out: list[SurveyEntry] = []
    P = O
    for m in range(1, M + 1):
        P = E.add(P, G)
        try:
            out.append(SurveyEntry(m, P, fibre_has_rational_point(spec, P)))
        except PoleOrZeroAtPoint as exc:
            out.append(SurveyEntry(m, P, None, str(exc)))
        except FactorBoundExceeded as exc:
            exc.partial = out
            exc.details["largest_completed_m"] = m - 1
            raise
    return out

