"""Quaternion classes (a, f) over Q(E), their residues, and Br(X)/Br(E).

For a constant a, the residue of (a, f) at a rational point P is the square
class of a^{v_P(f)}, so residues reduce to valuation parities.  Residue
vectors over the singular locus S are bit-vectors; all rank computations
are over F_2 with rows packed into Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import rat, square_class, trial_factor
from .elliptic import Curve, O, Point, halve, tangent_line
from .errors import HypothesisFailed, InvalidInput, LengthMismatch, NotDivisibleBy2
from .function_field import ONE, FnElement, Line, valuation

Bits = tuple[int, ...]


# ---------------------------------------------------------------------------
# F_2 linear algebra
# ---------------------------------------------------------------------------

def _pack(bits: Sequence[int]) -> int:
    out = 0
    for i, b in enumerate(bits):
        if b & 1:
            out |= 1 << i
    return out


def _check_lengths(rows: Sequence[Sequence[int]], *extra: Sequence[int]) -> None:
    lengths = {len(r) for r in list(rows) + list(extra)}
    if len(lengths) > 1:
        raise LengthMismatch(f"bit-vectors of lengths {sorted(lengths)}")


def _rank_packed(rows: list[int]) -> int:
    basis: dict[int, int] = {}  # leading bit -> row
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return len(basis)


def f2_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over F_2 by elimination."""
    _check_lengths(rows)
    return _rank_packed([_pack(r) for r in rows])


def f2_quotient_rank(rows: Sequence[Sequence[int]], pivot: Sequence[int]) -> int:
    """Rank of span(rows) + <pivot> modulo <pivot>."""
    _check_lengths(rows, pivot)
    packed = [_pack(r) for r in rows]
    p = _pack(pivot)
    return _rank_packed(packed + [p]) - (1 if p else 0)


# ---------------------------------------------------------------------------
# quaternion classes and residues
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuaternionClass:
    """The class of the quaternion algebra (a, f) in Br(Q(E))[2]."""

    a: Fraction
    f: FnElement

    def __post_init__(self):
        object.__setattr__(self, "a", rat(self.a))
        if self.a == 0:
            raise InvalidInput("a must be nonzero")
        if square_class(self.a) == 1:
            raise InvalidInput(f"a = {self.a} is a square")

    def __str__(self):
        return f"({self.a}, {self.f})"


def residue(E: Curve, B: QuaternionClass, P: Point) -> int:
    """Square class of the residue of B at P (1 means unramified)."""
    if valuation(E, B.f, P) % 2:
        return square_class(B.a)
    return 1


def residue_vector(
    E: Curve, B: QuaternionClass, S: Sequence[Point]
) -> tuple[Bits, tuple[int, ...]]:
    """Per-point residues as bits (1 = nontrivial) and square classes."""
    classes = tuple(residue(E, B, P) for P in S)
    return tuple(int(c != 1) for c in classes), classes


def canonical_half(E: Curve, P: Point) -> Point | None:
    """The smallest rational Q with -2Q = P, or None if there is none."""
    if P.is_infinity:
        return O
    halves = halve(E, E.neg(P))
    return halves[0] if halves else None


def _tangent_factor(E: Curve, P: Point, Q: Point | None) -> FnElement:
    # the tangent at Q meets E at -2Q = P; the line Z stands in when P = O
    if P.is_infinity:
        return ONE
    if Q is None:
        Q = canonical_half(E, P)
        if Q is None:
            raise NotDivisibleBy2(f"{P!r} is not in 2E(Q)", point=P)
    elif E.double(Q) != E.neg(P):
        raise InvalidInput(f"{Q!r} does not satisfy -2Q = {P!r}")
    return FnElement.of(Line(tangent_line(E, Q)))


def make_generator(
    E: Curve,
    a,
    P: Point,
    P0: Point,
    half: Point | None = None,
    base_half: Point | None = None,
) -> QuaternionClass:
    """B_P = (a, l_P / l_P0) where l_P is tangent at a point Q_P with -2Q_P = P.

    ``half`` and ``base_half`` override the canonical choices of Q_P and
    Q_P0.
    """
    E.check(P, P0)
    if P == P0 and half is None and base_half is None:
        return QuaternionClass(a, ONE)
    num = _tangent_factor(E, P, half)
    den = _tangent_factor(E, P0, base_half)
    return QuaternionClass(a, num / den)


# ---------------------------------------------------------------------------
# the group computation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResidueRow:
    label: str
    cls: QuaternionClass
    bits: Bits

    @property
    def bitstring(self) -> str:
        return "".join(map(str, self.bits))


@dataclass
class ResidueMatrix:
    points: list[Point]
    rows: list[ResidueRow]
    residue_classes: list[int]


@dataclass(frozen=True)
class Generator:
    point: Point
    half: Point | None
    base_point: Point
    base_half: Point | None
    cls: QuaternionClass
    bits: Bits


@dataclass
class BrauerReport:
    S: list[Point]
    hypothesis_checks: dict
    theorem_rank: int | None
    upper_bound_rank: int
    lower_bound_rank: int
    generators: list[Generator]
    residue_matrix: ResidueMatrix
    failed: list[str] = field(default_factory=list)


def _class_vector(d: int, index: dict[int, int]) -> int:
    # squarefree d as an F_2 vector over the basis {-1} u primes
    generators = [-1] if d < 0 else []
    if abs(d) > 1:
        generators += list(trial_factor(d).full())
    out = 0
    for g in generators:
        out |= 1 << index.setdefault(g, len(index))
    return out


def reciprocity_rank(classes: Sequence[int], bits: Sequence[int]) -> tuple[int, bool]:
    """Dimension of the residue vectors a class ramified only on S can have.

    A residue vector b is admissible iff prod a_P^{b_P} is a square
    (sum of corestricted residues vanishes on a proper curve).  Returns the
    dimension of that space and whether ``bits`` lies in it.
    """
    index: dict[int, int] = {}
    vectors = [_class_vector(c, index) for c in classes]
    dim = len(classes) - _rank_packed(vectors)
    total = 0
    for v, b in zip(vectors, bits):
        if b:
            total ^= v
    return dim, total == 0


def compute_brauer_group(
    E: Curve,
    a,
    A: QuaternionClass,
    S: Sequence[Point],
    strict: bool = True,
) -> BrauerReport:
    """Br(X)/Br(E) for the conic bundle with generic fibre class A.

    ``S`` must be the full singular locus, every point rational and with
    nontrivial residue of A.  P0 is ``S[0]``.  When the divisibility and
    ramification-field hypotheses hold, ``theorem_rank`` is |S| - 2 and the
    generators are B_P for P != P0.  Otherwise ``theorem_rank`` is None and
    only the bounds are meaningful; with ``strict`` a HypothesisFailed
    carrying the report is raised.
    """
    S = list(S)
    if not S:
        raise InvalidInput("S must be nonempty")
    if len(set(S)) != len(S):
        raise InvalidInput("S has repeated points")
    E.check(*S)
    a = rat(a)
    a_class = square_class(a)
    bits_A, classes_A = residue_vector(E, A, S)
    if not all(bits_A):
        trivial = [P for P, b in zip(S, bits_A) if not b]
        raise InvalidInput(f"A is unramified at {trivial}; not part of the singular locus")

    halves = {P: canonical_half(E, P) for P in S}
    s_in_2e = all(Q is not None for Q in halves.values())
    fp_equal = all(c == a_class for c in classes_A)
    a_ramifies = any(bits_A)
    checks = {
        "S_in_2E": s_in_2e,
        "halving_witnesses": [(P, halves[P]) for P in S],
        "F_P_all_equal": fp_equal,
        "A_ramifies": a_ramifies,
    }
    failed = [k for k in ("S_in_2E", "F_P_all_equal", "A_ramifies") if not checks[k]]

    dim_admissible, a_admissible = reciprocity_rank(classes_A, bits_A)
    if not a_admissible:
        raise InvalidInput("residues of A on S violate reciprocity: S is incomplete")
    upper = dim_admissible - 1

    P0 = S[0]
    generators = []
    if halves[P0] is not None:
        for P in S[1:]:
            if halves[P] is None or classes_A[S.index(P)] != a_class:
                continue
            B = make_generator(E, a, P, P0, halves[P], halves[P0])
            bits, _ = residue_vector(E, B, S)
            generators.append(Generator(P, halves[P], P0, halves[P0], B, bits))
    lower = f2_quotient_rank([g.bits for g in generators], bits_A)

    rows = [ResidueRow("A", A, bits_A)]
    rows += [ResidueRow(f"B[{S.index(g.point)}]", g.cls, g.bits) for g in generators]
    matrix = ResidueMatrix(S, rows, list(classes_A))

    theorem_rank = None if failed else len(S) - 2
    report = BrauerReport(
        S=S,
        hypothesis_checks=checks,
        theorem_rank=theorem_rank,
        upper_bound_rank=upper,
        lower_bound_rank=lower,
        generators=generators,
        residue_matrix=matrix,
        failed=failed,
    )
    if failed and strict:
        err = HypothesisFailed(",".join(failed))
        err.report = report
        raise err
    return report
