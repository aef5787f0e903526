"""JSON Schemas (draft 2020-12) for the CLI's inputs and outputs.

The package never validates against these at runtime; the decoders in
``serialize`` do their own checking.  They are published for callers and
exercised by the test suite.
"""

RAT = {"type": "string", "pattern": r"^-?[0-9]+(/[1-9][0-9]*)?$"}

CURVE = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"A": RAT, "B": RAT, "shift": RAT},
            "required": ["A", "B"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"roots": {"type": "array", "items": RAT, "minItems": 3, "maxItems": 3}},
            "required": ["roots"],
            "additionalProperties": False,
        },
    ]
}

POINT = {
    "oneOf": [
        {"const": "O"},
        {
            "type": "object",
            "properties": {"x": RAT, "y": RAT},
            "required": ["x", "y"],
            "additionalProperties": False,
        },
    ]
}

POINTS = {"type": "array", "items": POINT}

ATOM = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"type": {"const": "x-c"}, "c": RAT},
            "required": ["type", "c"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"type": {"const": "y"}},
            "required": ["type"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"type": {"const": "const"}, "q": RAT},
            "required": ["type", "q"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"type": {"const": "line"}, "alpha": RAT, "beta": RAT, "gamma": RAT},
            "required": ["type", "alpha", "beta", "gamma"],
            "additionalProperties": False,
        },
    ]
}

FN = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {"atom": ATOM, "exp": {"type": "integer", "not": {"const": 0}}},
        "required": ["atom", "exp"],
        "additionalProperties": False,
    },
}

QCLASS = {
    "type": "object",
    "properties": {"a": RAT, "f": FN},
    "required": ["a", "f"],
    "additionalProperties": False,
}

BUNDLE = {
    "type": "object",
    "properties": {
        "curve": CURVE,
        "a": RAT,
        "flavor": {"enum": ["chatelet", "sums-of-two-squares", "custom"]},
        "points": POINTS,
        "coefficient": FN,
    },
    "required": ["curve", "flavor"],
}

BITS = {"type": "string", "pattern": "^[01]*$"}
NULLABLE_INT = {"type": ["integer", "null"]}

BRAUER_REPORT = {
    "type": "object",
    "properties": {
        "S": POINTS,
        "hypothesis_checks": {
            "type": "object",
            "properties": {
                "S_in_2E": {"type": "boolean"},
                "halving_witnesses": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {"P": POINT, "Q": {"oneOf": [POINT, {"type": "null"}]}},
                        "required": ["P", "Q"],
                    },
                },
                "F_P_all_equal": {"type": "boolean"},
                "A_ramifies": {"type": "boolean"},
            },
            "required": ["S_in_2E", "halving_witnesses", "F_P_all_equal", "A_ramifies"],
        },
        "theorem_rank": NULLABLE_INT,
        "upper_bound_rank": {"type": "integer"},
        "lower_bound_rank": {"type": "integer"},
        "generators": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"class": QCLASS, "P": POINT, "Q_P": POINT, "P0": POINT, "Q_P0": POINT},
                "required": ["class", "P", "Q_P", "P0", "Q_P0"],
            },
        },
        "residue_matrix": {
            "type": "object",
            "properties": {
                "points": POINTS,
                "rows": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {"label": {"type": "string"}, "class": QCLASS, "bits": BITS},
                        "required": ["label", "class", "bits"],
                    },
                },
                "residue_classes": {"type": "array", "items": {"type": "integer"}},
            },
            "required": ["points", "rows", "residue_classes"],
        },
        "failed": {"type": "array", "items": {"type": "string"}},
    },
    "required": [
        "S",
        "hypothesis_checks",
        "theorem_rank",
        "upper_bound_rank",
        "generators",
        "residue_matrix",
    ],
}

WARNING = {
    "type": "object",
    "properties": {"code": {"type": "string"}, "message": {"type": "string"}},
    "required": ["code", "message"],
}

ANALYSIS = {
    "type": "object",
    "properties": {
        "bundle": BUNDLE,
        "singular_locus": {
            "type": "object",
            "properties": {
                "points": POINTS,
                "n": NULLABLE_INT,
                "t": NULLABLE_INT,
                "candidates": POINTS,
                "stated_points": {"oneOf": [POINTS, {"type": "null"}]},
            },
            "required": ["points", "n", "t", "candidates", "stated_points"],
        },
        "engine_rank": NULLABLE_INT,
        "corollary_rank": NULLABLE_INT,
        "report": {"oneOf": [BRAUER_REPORT, {"type": "null"}]},
        "warnings": {"type": "array", "items": WARNING},
    },
    "required": ["bundle", "singular_locus", "engine_rank", "corollary_rank", "report", "warnings"],
}

SAMPLE = {
    "type": "object",
    "properties": {"x": RAT, "branch": {"const": "+"}},
    "required": ["x", "branch"],
    "additionalProperties": False,
}

CERTIFICATE = {
    "type": "object",
    "properties": {
        "B": QCLASS,
        "R1": SAMPLE,
        "R2": SAMPLE,
        "inv": {"type": "array", "items": {"enum": [0, 1]}, "minItems": 2, "maxItems": 2},
        "f_signs": {"type": "array", "items": {"const": 1}},
        "pair": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 2, "maxItems": 2},
        "points": {"type": "array", "items": POINT},
        "conclusion": {"type": "object"},
    },
    "required": ["B", "R1", "R2", "inv", "pair"],
}

SURVEY = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {
            "m": {"type": "integer", "minimum": 1},
            "point": POINT,
            "has_rational_point": {"type": ["boolean", "null"]},
            "note": {"type": "string"},
        },
        "required": ["m", "point", "has_rational_point"],
    },
}

ENVELOPE = {
    "type": "object",
    "properties": {
        "command": {"type": "string"},
        "status": {"enum": ["ok", "hypothesis-failed", "error"]},
        "exit_code": {"enum": [0, 1, 2, 3]},
        "reason": {"type": "string"},
        "result": {},
    },
    "required": ["command", "status", "exit_code"],
    "if": {"properties": {"status": {"enum": ["hypothesis-failed", "error"]}}},
    "then": {"required": ["reason"]},
}

RESULT_SCHEMAS = {
    "brauer-group": ANALYSIS,
    "chatelet": ANALYSIS,
    "obstruction": {
        "type": "object",
        "properties": {"certificate": CERTIFICATE, "verified": {"const": True}},
        "required": ["certificate", "verified"],
    },
    "two-squares-survey": {
        "type": "object",
        "properties": {"entries": SURVEY},
        "required": ["entries"],
    },
    "halve": {
        "type": "object",
        "properties": {"point": POINT, "halves": POINTS},
        "required": ["point", "halves"],
    },
    "residues": {
        "type": "object",
        "properties": {
            "class": QCLASS,
            "points": POINTS,
            "bits": BITS,
            "residue_classes": {"type": "array", "items": {"type": "integer"}},
        },
        "required": ["class", "points", "bits", "residue_classes"],
    },
    "fibre": {
        "type": "object",
        "properties": {
            "point": POINT,
            "value": RAT,
            "local": {"type": "object", "additionalProperties": {"type": "boolean"}},
            "has_rational_point": {"type": ["boolean", "null"]},
        },
        "required": ["point", "value", "local"],
    },
}
