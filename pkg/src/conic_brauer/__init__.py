"""Brauer groups of conic bundles over elliptic curves over Q.

Exact rational arithmetic throughout: residues of quaternion classes
(a, f) on E, the quotient Br(X)/Br(E) with explicit generators, and
real-place obstruction certificates.
"""

from .arith import Place, hilbert_symbol, is_sum_of_two_squares, square_class
from .brauer import (
    BrauerReport,
    QuaternionClass,
    compute_brauer_group,
    f2_quotient_rank,
    f2_rank,
    make_generator,
    residue,
    residue_vector,
)
from .conic_bundle import (
    BundleSpec,
    analyze,
    corollary_rank,
    fibre_has_local_point,
    fibre_has_rational_point,
    generic_fibre_class,
    singular_locus,
    survey_multiples,
)
from .elliptic import O, Curve, LinearForm, Point, halve, real_components, tangent_line, two_torsion
from .errors import (
    ConicBrauerError,
    FactorBoundExceeded,
    HypothesisFailed,
    InvalidInput,
    SearchExhausted,
)
from .function_field import FnElement, evaluate_exact, sign_on_upper_branch, valuation
from .obstruction import decompose_segments, find_certificate, inv_real, verify_certificate

__version__ = "0.1.0"
