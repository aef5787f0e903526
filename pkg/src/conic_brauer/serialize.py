"""JSON codecs.

Everything crosses the boundary in user coordinates: for a curve given by
its roots, user abscissae are internal ones plus ``Curve.shift``.
Rationals are strings ``"num/den"``; square classes are plain ints.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .arith import rat, rat_str
from .brauer import BrauerReport, QuaternionClass
from .conic_bundle import (
    CHATELET,
    CUSTOM,
    SUMS_OF_TWO_SQUARES,
    BundleAnalysis,
    BundleSpec,
    SingularLocus,
    SurveyEntry,
)
from .elliptic import Curve, LinearForm, O, Point
from .errors import InvalidInput
from .function_field import Const, FnElement, Line, XMinusC, YFn


def _require(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise InvalidInput(f"{where}: missing field {key!r}")
    return obj[key]


# --- curves and points ------------------------------------------------------

def encode_curve(E: Curve) -> dict:
    out = {"A": rat_str(E.A), "B": rat_str(E.B)}
    if E.shift:
        out["shift"] = rat_str(E.shift)
    return out


def decode_curve(obj) -> Curve:
    if not isinstance(obj, dict):
        raise InvalidInput("curve must be an object")
    if "roots" in obj:
        roots = obj["roots"]
        if not isinstance(roots, list) or len(roots) != 3:
            raise InvalidInput("curve roots must be a list of three rationals")
        return Curve.from_roots([rat(r) for r in roots])
    return Curve(
        rat(_require(obj, "A", "curve")),
        rat(_require(obj, "B", "curve")),
        rat(obj.get("shift", 0)),
    )


def encode_point(E: Curve, P: Point):
    if P.is_infinity:
        return "O"
    x, y = E.to_user(P)
    return {"x": rat_str(x), "y": rat_str(y)}


def decode_point(E: Curve, obj) -> Point:
    if obj == "O":
        return O
    if not isinstance(obj, dict):
        raise InvalidInput(f"point must be \"O\" or an object, got {obj!r}")
    return E.from_user(_require(obj, "x", "point"), _require(obj, "y", "point"))


def encode_points(E: Curve, points) -> list:
    return [encode_point(E, P) for P in points]


# --- function field elements -------------------------------------------------

def _encode_atom(E: Curve, atom) -> dict:
    s = E.shift
    if isinstance(atom, XMinusC):
        return {"type": "x-c", "c": rat_str(atom.c + s)}
    if isinstance(atom, YFn):
        return {"type": "y"}
    if isinstance(atom, Const):
        return {"type": "const", "q": rat_str(atom.q)}
    f = atom.form
    # alpha*(x_user - s) + beta*y + gamma
    return {
        "type": "line",
        "alpha": rat_str(f.alpha),
        "beta": rat_str(f.beta),
        "gamma": rat_str(f.gamma - f.alpha * s),
    }


def _decode_atom(E: Curve, obj):
    kind = _require(obj, "type", "atom")
    s = E.shift
    if kind == "x-c":
        return XMinusC(rat(_require(obj, "c", "atom")) - s)
    if kind == "y":
        return YFn()
    if kind == "const":
        return Const(rat(_require(obj, "q", "atom")))
    if kind == "line":
        alpha = rat(_require(obj, "alpha", "atom"))
        beta = rat(_require(obj, "beta", "atom"))
        gamma = rat(_require(obj, "gamma", "atom"))
        return Line(LinearForm(alpha, beta, gamma + alpha * s))
    raise InvalidInput(f"unknown atom type {kind!r}")


def encode_fn(E: Curve, f: FnElement) -> list:
    return [{"atom": _encode_atom(E, a), "exp": e} for a, e in f.factors]


def decode_fn(E: Curve, obj) -> FnElement:
    if not isinstance(obj, list):
        raise InvalidInput("function must be a list of factors")
    factors = []
    for item in obj:
        exp = _require(item, "exp", "factor")
        if not isinstance(exp, int) or isinstance(exp, bool):
            raise InvalidInput(f"exponent must be an integer, got {exp!r}")
        factors.append((_decode_atom(E, _require(item, "atom", "factor")), exp))
    return FnElement(tuple(factors))


def encode_class(E: Curve, B: QuaternionClass) -> dict:
    return {"a": rat_str(B.a), "f": encode_fn(E, B.f)}


def decode_class(E: Curve, obj) -> QuaternionClass:
    return QuaternionClass(rat(_require(obj, "a", "class")), decode_fn(E, _require(obj, "f", "class")))


# --- bundle specs -------------------------------------------------------------

def encode_spec(spec: BundleSpec) -> dict:
    E = spec.curve
    out: dict[str, Any] = {"curve": encode_curve(E), "a": rat_str(spec.a), "flavor": spec.flavor}
    if spec.flavor == CHATELET:
        out["points"] = encode_points(E, spec.points)
    elif spec.flavor == CUSTOM:
        out["coefficient"] = encode_fn(E, spec.coefficient)
    return out


def decode_spec(obj) -> BundleSpec:
    E = decode_curve(_require(obj, "curve", "bundle"))
    flavor = obj.get("flavor", CUSTOM)
    if flavor == SUMS_OF_TWO_SQUARES:
        if "a" in obj and rat(obj["a"]) != -1:
            raise InvalidInput("sums-of-two-squares flavor has a = -1")
        return BundleSpec.sums_of_two_squares(E)
    a = rat(_require(obj, "a", "bundle"))
    if flavor == CHATELET:
        pts = _require(obj, "points", "bundle")
        if not isinstance(pts, list):
            raise InvalidInput("points must be a list")
        return BundleSpec.chatelet(E, a, [decode_point(E, p) for p in pts])
    if flavor == CUSTOM:
        return BundleSpec.custom(E, a, decode_fn(E, _require(obj, "coefficient", "bundle")))
    raise InvalidInput(f"unknown flavor {flavor!r}")


# --- reports --------------------------------------------------------------------

def encode_warning(E: Curve, w: dict) -> dict:
    out = {}
    for k, v in w.items():
        if isinstance(v, list) and all(isinstance(p, Point) for p in v):
            out[k] = encode_points(E, v)
        else:
            out[k] = v
    return out


def encode_report(E: Curve, r: BrauerReport) -> dict:
    checks = r.hypothesis_checks
    m = r.residue_matrix
    return {
        "S": encode_points(E, r.S),
        "hypothesis_checks": {
            "S_in_2E": checks["S_in_2E"],
            "halving_witnesses": [
                {"P": encode_point(E, P), "Q": None if Q is None else encode_point(E, Q)}
                for P, Q in checks["halving_witnesses"]
            ],
            "F_P_all_equal": checks["F_P_all_equal"],
            "A_ramifies": checks["A_ramifies"],
        },
        "theorem_rank": r.theorem_rank,
        "upper_bound_rank": r.upper_bound_rank,
        "lower_bound_rank": r.lower_bound_rank,
        "generators": [
            {
                "class": encode_class(E, g.cls),
                "P": encode_point(E, g.point),
                "Q_P": encode_point(E, g.half),
                "P0": encode_point(E, g.base_point),
                "Q_P0": encode_point(E, g.base_half),
            }
            for g in r.generators
        ],
        "residue_matrix": {
            "points": encode_points(E, m.points),
            "rows": [
                {"label": row.label, "class": encode_class(E, row.cls), "bits": row.bitstring}
                for row in m.rows
            ],
            "residue_classes": list(m.residue_classes),
        },
        "failed": list(r.failed),
    }


def encode_locus(E: Curve, locus: SingularLocus) -> dict:
    return {
        "points": encode_points(E, locus.points),
        "n": locus.n,
        "t": locus.t,
        "candidates": encode_points(E, locus.candidates),
        "stated_points": None if locus.stated_points is None else encode_points(E, locus.stated_points),
    }


def encode_analysis(a: BundleAnalysis) -> dict:
    E = a.spec.curve
    return {
        "bundle": encode_spec(a.spec),
        "singular_locus": encode_locus(E, a.locus),
        "engine_rank": a.engine_rank,
        "corollary_rank": a.corollary_rank,
        "report": None if a.brauer is None else encode_report(E, a.brauer),
        "warnings": [encode_warning(E, w) for w in a.warnings],
    }


def encode_certificate(E: Curve, cert) -> dict:
    return {
        "B": encode_class(E, cert.B),
        "R1": {"x": rat_str(cert.R1 + E.shift), "branch": "+"},
        "R2": {"x": rat_str(cert.R2 + E.shift), "branch": "+"},
        "inv": list(cert.inv_values),
        "f_signs": list(cert.f_signs),
        "pair": list(cert.pair),
        "points": encode_points(E, cert.points),
        "conclusion": {"statement": cert.conclusion, "verified_adelically": False},
    }


def decode_certificate(E: Curve, obj):
    from .obstruction import ObstructionCertificate

    def sample(key):
        s = _require(obj, key, "certificate")
        if s.get("branch", "+") != "+":
            raise InvalidInput("only the y > 0 branch is used")
        return rat(_require(s, "x", key)) - E.shift

    pair = tuple(_require(obj, "pair", "certificate"))
    pts = obj.get("points")
    points = tuple(decode_point(E, p) for p in pts) if pts else (O, O)
    return ObstructionCertificate(
        B=decode_class(E, _require(obj, "B", "certificate")),
        R1=sample("R1"),
        R2=sample("R2"),
        inv_values=tuple(_require(obj, "inv", "certificate")),
        f_signs=tuple(obj.get("f_signs", (1, 1))),
        pair=pair,
        points=points,
        sample_positions=((0, 0), (0, 0)),
    )


def encode_survey(E: Curve, entries: list[SurveyEntry]) -> list:
    return [
        {
            "m": e.m,
            "point": encode_point(E, e.point),
            "has_rational_point": e.has_rational_point,
            **({"note": e.note} if e.note else {}),
        }
        for e in entries
    ]


def to_jsonable(value):
    """Fallback conversion for Fractions and Points inside free-form details."""
    if isinstance(value, Fraction):
        return rat_str(value)
    if isinstance(value, Point):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    return value
