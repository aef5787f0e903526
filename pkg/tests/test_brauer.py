from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from conic_brauer.brauer import (
    QuaternionClass,
    canonical_half,
    compute_brauer_group,
    f2_quotient_rank,
    f2_rank,
    make_generator,
    reciprocity_rank,
    residue,
    residue_vector,
)
from conic_brauer.elliptic import Curve, O, Point, halve, two_torsion
from conic_brauer.errors import HypothesisFailed, InvalidInput, LengthMismatch, NotDivisibleBy2
from conic_brauer.function_field import ONE, Const, FnElement, XMinusC, YFn, chatelet_coefficient, valuation

E2 = Curve(0, -2)
G = Point(3, 5)
Ex = Curve(-1, 0)


def span_size(rows, n):
    # brute-force enumeration of the F_2 span
    seen = set()
    for coeffs in product((0, 1), repeat=len(rows)):
        v = tuple(sum(c * r[i] for c, r in zip(coeffs, rows)) % 2 for i in range(n))
        seen.add(v)
    return len(seen)


def test_f2_examples():
    rows = [(1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1)]
    assert f2_quotient_rank(rows, (1, 1, 1, 1)) == 2
    assert f2_rank([]) == 0
    assert f2_quotient_rank(rows, (0, 0, 0, 0)) == f2_rank(rows) == 3
    with pytest.raises(LengthMismatch):
        f2_rank([(1, 0), (1, 0, 1)])


bitrows = st.integers(1, 7).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), max_size=6)
)


@given(bitrows)
def test_f2_rank_matches_enumeration(rows):
    if not rows:
        return
    n = len(rows[0])
    assert 2 ** f2_rank(rows) == span_size(rows, n)
    pivot = rows[-1]
    both = span_size(rows + [pivot], n)
    assert 2 ** f2_quotient_rank(rows[:-1], pivot) * (2 if any(pivot) else 1) == both


# residues ---------------------------------------------------------------------------

def test_residue_examples():
    A = QuaternionClass(-1, FnElement.of(YFn()))
    assert residue(Ex, A, O) == -1
    assert residue(Ex, A, Point(0, 0)) == -1
    assert residue(E2, A, G) == 1
    S = [Point(-1, 0), Point(0, 0), Point(1, 0), O]
    bits, classes = residue_vector(Ex, A, S)
    assert bits == (1, 1, 1, 1) and classes == (-1, -1, -1, -1)
    assert residue_vector(E2, QuaternionClass(3, FnElement.of(Const(5))), [O, G])[0] == (0, 0)


def test_quaternion_class_validation():
    with pytest.raises(InvalidInput):
        QuaternionClass(4, ONE)
    with pytest.raises(InvalidInput):
        QuaternionClass(0, ONE)


elements = st.lists(
    st.tuples(st.builds(XMinusC, st.sampled_from([3, Fraction(129, 100), 0, 1])), st.integers(-3, 3)),
    max_size=3,
).map(lambda fs: FnElement(tuple(fs)))
curve_points = [E2.mul(k, G) for k in range(-3, 4)]


@given(elements, elements, st.sampled_from(curve_points), st.sampled_from([-1, 2, -3, 5]))
def test_residue_bilinear(f, g, P, a):
    r = residue(E2, QuaternionClass(a, f * g), P)
    r1 = residue(E2, QuaternionClass(a, f), P)
    r2 = residue(E2, QuaternionClass(a, g), P)
    assert (r != 1) == ((r1 != 1) ^ (r2 != 1))


# generators -------------------------------------------------------------------------

def test_make_generator_example():
    P = E2.neg(E2.double(G))
    assert P == Point(Fraction(129, 100), Fraction(383, 1000))
    B = make_generator(E2, -1, P, O)
    assert valuation(E2, B.f, P) == 1
    assert valuation(E2, B.f, O) == -3
    assert valuation(E2, B.f, G) == 2
    assert residue_vector(E2, B, [O, P])[0] == (1, 1)
    assert make_generator(E2, -1, P, P).f.is_one


def test_make_generator_needs_halves():
    with pytest.raises(NotDivisibleBy2):
        make_generator(E2, -1, G, O)
    with pytest.raises(InvalidInput):
        make_generator(E2, -1, E2.double(G), O, half=G)  # -2G != 2G


def test_canonical_half_is_smallest():
    E = Curve(-25, 0)
    P = E.double(Point(-4, 6))
    hs = halve(E, E.neg(P))
    assert canonical_half(E, P) == hs[0]
    assert canonical_half(E, O) == O


def test_generator_choice_independence():
    E = Curve(-25, 0)
    R = Point(-4, 6)
    P, P0 = E.mul(2, R), E.mul(4, R)
    S = [P0, E.neg(P0), P, E.neg(P)]
    choices = halve(E, E.neg(P))
    assert len(choices) == 4
    vectors = {residue_vector(E, make_generator(E, -1, P, P0, half=Q), S)[0] for Q in choices}
    assert vectors == {(1, 0, 1, 0)}
    base = halve(E, E.neg(P0))
    vectors = {
        residue_vector(E, make_generator(E, -1, P, P0, half=Q, base_half=Q0), S)[0]
        for Q in choices
        for Q0 in base
    }
    assert len(vectors) == 1


# the group computation ---------------------------------------------------------------

def chatelet_instance(ks=(2, 4), a=-1):
    pts = [E2.mul(k, G) for k in ks]
    S = []
    for P in pts:
        S += [P, E2.neg(P)]
    A = QuaternionClass(a, chatelet_coefficient(P.x for P in pts))
    return S, A


def test_theorem_instance():
    S, A = chatelet_instance()
    r = compute_brauer_group(E2, -1, A, S)
    assert r.theorem_rank == 2 and not r.failed
    assert r.upper_bound_rank == 2 and r.lower_bound_rank == 2
    assert [row.bitstring for row in r.residue_matrix.rows] == ["1111", "1100", "1010", "1001"]
    assert r.theorem_rank == f2_quotient_rank([g.bits for g in r.generators], r.residue_matrix.rows[0].bits)
    assert all(Q is not None for _, Q in r.hypothesis_checks["halving_witnesses"])
    # independent over F_2; rank |S| - 2 modulo the residue of A
    assert f2_rank([g.bits for g in r.generators]) == len(S) - 1
    assert r.upper_bound_rank <= len(S) - 1


def test_generators_unramified_off_S():
    S, A = chatelet_instance()
    r = compute_brauer_group(E2, -1, A, S)
    aux = {O}
    for g in r.generators:
        for Q in (g.half, g.base_half):
            aux |= {Q, E2.neg(Q)}
    aux |= {E2.mul(k, G) for k in range(-10, 11)}
    for g in r.generators:
        for R in aux - {g.point, g.base_point}:
            assert residue(E2, g.cls, R) == 1


def test_two_point_locus():
    S, A = chatelet_instance(ks=(2,))
    r = compute_brauer_group(E2, -1, A, S)
    assert r.theorem_rank == 0
    assert len(r.generators) == 1
    assert r.generators[0].bits == r.residue_matrix.rows[0].bits


def test_hypothesis_failure_keeps_bounds():
    A = QuaternionClass(-1, FnElement.of(YFn()))
    S = [O] + two_torsion(Ex)[1:]
    with pytest.raises(HypothesisFailed) as info:
        compute_brauer_group(Ex, -1, A, S)
    report = info.value.report
    assert report.theorem_rank is None and report.failed == ["S_in_2E"]
    assert report.upper_bound_rank == 2


def test_four_torsion_example_reports_both_bounds():
    E = Curve.from_roots([-4, -1, 0])
    P3 = E.from_user(0, 0)
    assert {E.to_user(Q)[0] for Q in halve(E, P3)} == {-2, 2}
    A = QuaternionClass(-1, FnElement.of(YFn()))
    S = two_torsion(E)  # O, (-4,0), (-1,0), (0,0) in user coordinates
    assert S[0] == O and S[3] == P3
    B = make_generator(E, -1, P3, O)
    b = residue_vector(E, B, S)[0]
    assert b == (1, 0, 0, 1)
    a_bits = residue_vector(E, A, S)[0]
    assert tuple(x ^ y for x, y in zip(a_bits, b)) == (0, 1, 1, 0)
    r = compute_brauer_group(E, -1, A, S, strict=False)
    assert r.theorem_rank is None
    assert (r.lower_bound_rank, r.upper_bound_rank) == (1, 2)


def test_reciprocity_rank():
    assert reciprocity_rank([-1, -1, -1, -1], [1, 1, 1, 1]) == (3, True)
    assert reciprocity_rank([-1, 2], [1, 0]) == (0, False)


def test_incomplete_locus_rejected():
    A = QuaternionClass(-1, FnElement.of(YFn()))
    with pytest.raises(InvalidInput):
        compute_brauer_group(Ex, -1, A, [O, Point(0, 0), Point(1, 0)], strict=False)
    with pytest.raises(InvalidInput):
        compute_brauer_group(Ex, -1, A, [O, Point(0, 0), Point(0, 0)])
