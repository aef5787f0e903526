"""Real-place Brauer-Manin obstruction certificates.

On a connected E(R) with a < 0, the class B = (a, l_i/l_j) has real
invariant 1 exactly where l_i/l_j < 0.  Two real points with nonempty
fibres (f > 0) and opposite signs of l_i/l_j show that evaluation of B on
X(R) is onto Z/2.  Real points are exact rational abscissae on the upper
branch y > 0; no floating point is used in any decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from . import config
from .arith import square_class
from .brauer import QuaternionClass, canonical_half, make_generator
from .conic_bundle import CHATELET, BundleSpec
from .elliptic import Curve, Point, RealComponents, real_components
from .errors import HypothesisFailed, InvalidInput, NotConnected, SearchExhausted, TwoTorsionInS
from .function_field import sign_on_upper_branch

CONCLUSION = (
    "inv_inf(ev_B) takes both values on X(R), so B cuts down the adelic set "
    "cut out by pi^*(Br E); stated from the real-place witness, not checked adelically"
)


def inv_real(a, value_sign: int) -> int:
    """Real invariant of (a, r) for r of the given sign."""
    if value_sign not in (-1, 1):
        raise InvalidInput("value_sign must be -1 or +1")
    return 1 if a < 0 and value_sign < 0 else 0


@dataclass(frozen=True)
class SegmentDecomposition:
    """Open x-intervals of the upper branch between consecutive breakpoints.

    ``x_min`` is a rational interval (lo, hi) isolating the real root of the
    cubic; the first segment starts at its upper end.  The last segment has
    ``None`` as its right end.
    """

    representatives: tuple[Point, ...]
    breakpoints: tuple[Fraction, ...]
    segments: tuple[tuple[Fraction, Fraction | None], ...]
    x_min: tuple[Fraction, Fraction]


def isolate_real_root(E: Curve, width: Fraction, below: Fraction | None = None):
    """Bisect for the single real root of x^3 + Ax + B.

    Returns (lo, hi) with cubic(lo) <= 0 <= cubic(hi), hi - lo <= width, and
    hi < below when given.
    """
    bound = 1 + max(abs(E.A), abs(E.B))
    lo, hi = -bound, bound
    while hi - lo > width or (below is not None and hi >= below):
        mid = (lo + hi) / 2
        value = E.cubic(mid)
        if value == 0:
            return mid, mid
        if value < 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def decompose_segments(E: Curve, S_points: Sequence[Point]) -> SegmentDecomposition:
    if real_components(E) is not RealComponents.CONNECTED:
        raise NotConnected()
    reps = {}
    for P in S_points:
        E.check(P)
        if P.is_infinity or P.y == 0:
            raise TwoTorsionInS(f"{P!r} is 2-torsion")
        R = P if P.y > 0 else E.neg(P)
        reps[R.x] = R
    xs = tuple(sorted(reps))
    lo, hi = isolate_real_root(
        E, Fraction(1, 2**20), below=xs[0] if xs else None
    )
    ends = (hi,) + xs
    segments = tuple(zip(ends, xs + (None,)))
    return SegmentDecomposition(tuple(reps[x] for x in xs), xs, segments, (lo, hi))


def segment_samples(segment, depth: int) -> Iterator[tuple[int, Fraction]]:
    """Midpoint then dyadic points toward each end; on the unbounded segment,
    steps lo + 2^k outward followed by lo + 2^-k inward.  Yields (depth, x)."""
    lo, hi = segment
    if hi is None:
        for k in range(depth + 1):
            yield k, lo + 2**k
        for k in range(1, depth + 1):
            yield depth + k, lo + Fraction(1, 2**k)
        return
    w = hi - lo
    yield 1, lo + w / 2
    for k in range(2, depth + 1):
        step = w / 2**k
        yield k, lo + step
        yield k, hi - step


@dataclass(frozen=True)
class ObstructionCertificate:
    B: QuaternionClass
    R1: Fraction
    R2: Fraction
    inv_values: tuple[int, int]
    f_signs: tuple[int, int]
    pair: tuple[int, int]
    points: tuple[Point, Point]
    sample_positions: tuple[tuple[int, int], tuple[int, int]]
    conclusion: str = CONCLUSION


def check_hypotheses(spec: BundleSpec) -> None:
    E = spec.curve
    if spec.flavor != CHATELET:
        raise HypothesisFailed("chatelet flavor", "chatelet flavor required for the obstruction search")
    if not spec.a < 0:
        raise HypothesisFailed("a<0 required", f"a<0 required; a = {spec.a} makes inv_inf constant")
    if real_components(E) is not RealComponents.CONNECTED:
        raise NotConnected()
    if spec.n <= 2:
        raise HypothesisFailed("n>2 required", f"n>2 required; n = {spec.n}")
    if any(P.y == 0 for P in spec.points):
        raise TwoTorsionInS()
    for P in spec.points:
        if canonical_half(E, P) is None:
            raise HypothesisFailed("S in 2E", f"S in 2E required; {P!r} is not divisible by 2")


def _pair_order(n: int, pair):
    if pair is not None:
        i, j = pair
        if not (1 <= i <= n and 1 <= j <= n and i != j):
            raise InvalidInput(f"pair {pair} out of range for n = {n}")
        return [(i, j)]
    order = [(1, 3)]
    order += [p for p in combinations(range(1, n + 1), 2) if p != (1, 3)]
    return order


def find_certificate(
    spec: BundleSpec, pair: tuple[int, int] | None = None, depth: int | None = None
) -> ObstructionCertificate:
    """Search for two real points on which (a, l_i/l_j) has distinct invariants.

    Points are P_1, ..., P_n replaced by their y > 0 representatives and
    ordered by x.  Pairs are tried (1, 3) first, then lexicographically;
    within a pair samples are scanned by (segment, depth).
    """
    check_hypotheses(spec)
    if depth is None:
        depth = config.sample_depth()
    E, a, f = spec.curve, spec.a, spec.coefficient
    square_class(a)
    seg = decompose_segments(E, spec.points)
    P = seg.representatives
    n = len(P)
    if n <= 2:
        raise HypothesisFailed("n>2 required", "n>2 required; points coincide up to sign")

    kept = []
    for s_idx, segment in enumerate(seg.segments):
        for d, x in segment_samples(segment, depth):
            if sign_on_upper_branch(E, f, x) == 1:
                kept.append(((s_idx, d), x))

    for i, j in _pair_order(n, pair):
        B = make_generator(E, a, P[i - 1], P[j - 1])
        first = None
        for pos, x in kept:
            s = sign_on_upper_branch(E, B.f, x)
            if s == 0:
                continue
            if first is None:
                first = (pos, x, s)
            elif s != first[2]:
                pos_plus, x_plus = (first[0], first[1]) if first[2] > 0 else (pos, x)
                pos_minus, x_minus = (pos, x) if first[2] > 0 else (first[0], first[1])
                return ObstructionCertificate(
                    B=B,
                    R1=x_plus,
                    R2=x_minus,
                    inv_values=(inv_real(a, 1), inv_real(a, -1)),
                    f_signs=(1, 1),
                    pair=(i, j),
                    points=(P[i - 1], P[j - 1]),
                    sample_positions=(pos_plus, pos_minus),
                )
    raise SearchExhausted(
        f"no sign change found with depth {depth}", depth=depth, samples=len(kept)
    )


def verify_certificate(spec: BundleSpec, cert: ObstructionCertificate) -> bool:
    """Recompute both conditions from scratch at R1 and R2."""
    E, f = spec.curve, spec.coefficient
    signs_f = tuple(sign_on_upper_branch(E, f, x) for x in (cert.R1, cert.R2))
    signs_b = [sign_on_upper_branch(E, cert.B.f, x) for x in (cert.R1, cert.R2)]
    if 0 in signs_b:
        return False
    invs = tuple(inv_real(cert.B.a, s) for s in signs_b)
    return (
        signs_f == (1, 1)
        and cert.f_signs == signs_f
        and invs == cert.inv_values
        and set(invs) == {0, 1}
    )
