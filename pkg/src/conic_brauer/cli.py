"""``conic-brauer`` command-line front end.

    conic-brauer <command> --input FILE|JSON [--json] [--factor-bound N]
                 [--sample-depth N] [--pair i,j] [--max-multiple M]
                 [--config FILE]

Settings resolve as defaults < environment (CONIC_BRAUER_FACTOR_BOUND,
CONIC_BRAUER_SAMPLE_DEPTH) < flags < config file.  Exit status: 0 ok,
1 malformed input or other error, 2 a hypothesis failed (report still
printed), 3 search exhausted or factor bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Callable

from . import config
from .arith import Place, hilbert_symbol, local_places, rat_str
from .brauer import compute_brauer_group, residue_vector
from .conic_bundle import (
    CHATELET,
    SUMS_OF_TWO_SQUARES,
    BundleSpec,
    analyze,
    fibre_has_rational_point,
    fibre_value,
    generic_fibre_class,
    singular_locus,
    survey_multiples,
)
from .elliptic import halve
from .errors import (
    ConicBrauerError,
    FactorBoundExceeded,
    HypothesisFailed,
    InvalidInput,
    SearchExhausted,
)
from .obstruction import find_certificate, verify_certificate
from .serialize import (
    decode_class,
    decode_curve,
    decode_point,
    decode_spec,
    encode_analysis,
    encode_certificate,
    encode_class,
    encode_point,
    encode_points,
    encode_report,
    encode_survey,
    encode_warning,
    to_jsonable,
)

COMMANDS = (
    "halve",
    "residues",
    "brauer-group",
    "chatelet",
    "fibre",
    "obstruction",
    "two-squares-survey",
)

EXIT_OK, EXIT_ERROR, EXIT_HYPOTHESIS, EXIT_SEARCH = 0, 1, 2, 3
DEFAULT_MAX_MULTIPLE = 10


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str
    output: str = "text"
    factor_bound: int = config.DEFAULT_FACTOR_BOUND
    sample_depth: int = config.DEFAULT_SAMPLE_DEPTH
    pair: tuple[int, int] | None = None
    max_multiple: int | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InvalidInput(f"unknown command {self.command!r}")
        if self.output not in ("text", "json"):
            raise InvalidInput("output must be text or json")
        if self.factor_bound < 2:
            raise InvalidInput("factor bound must be >= 2")
        if self.sample_depth < 1:
            raise InvalidInput("sample depth must be >= 1")
        if self.max_multiple is not None and self.max_multiple < 1:
            raise InvalidInput("max multiple must be >= 1")


class _Outcome(Exception):
    """Carries a non-zero exit together with a partial result."""

    def __init__(self, code, status, reason, message, result=None, **extra):
        super().__init__(message)
        self.code, self.status, self.reason = code, status, reason
        self.result, self.extra = result, extra


def load_input(source: str) -> Any:
    text = source
    if source == "-":
        text = sys.stdin.read()
    elif not source.lstrip().startswith(("{", "[")):
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InvalidInput(f"cannot read input {source!r}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"input is not valid JSON: {exc}") from exc


def _obj(data) -> dict:
    if not isinstance(data, dict):
        raise InvalidInput("input must be a JSON object")
    return data


def _spec(data) -> BundleSpec:
    return decode_spec(_obj(data))


def _check_failed(result: dict, report) -> dict:
    if report is not None and report.failed:
        raise _Outcome(
            EXIT_HYPOTHESIS,
            "hypothesis-failed",
            HypothesisFailed.reason,
            "hypotheses failed: " + ", ".join(report.failed),
            result,
            which=list(report.failed),
        )
    return result


# --- commands -------------------------------------------------------------------

def cmd_halve(rc: RunConfig, data) -> dict:
    data = _obj(data)
    E = decode_curve(data.get("curve"))
    P = decode_point(E, data.get("point"))
    E.check(P)
    return {"curve": data["curve"], "point": encode_point(E, P), "halves": encode_points(E, halve(E, P))}


def cmd_residues(rc: RunConfig, data) -> dict:
    data = _obj(data)
    warnings = []
    if "flavor" in data:
        spec = _spec(data)
        E = spec.curve
        B = generic_fibre_class(spec)
        if "points" in data and spec.flavor != CHATELET:
            S = [decode_point(E, p) for p in data["points"]]
        else:
            locus = singular_locus(spec)
            S = locus.points
            warnings = [encode_warning(E, w) for w in locus.warnings]
    else:
        E = decode_curve(data.get("curve"))
        B = decode_class(E, data.get("class"))
        S = [decode_point(E, p) for p in data.get("points", [])]
    bits, classes = residue_vector(E, B, S)
    return {
        "class": encode_class(E, B),
        "points": encode_points(E, S),
        "bits": "".join(map(str, bits)),
        "residue_classes": list(classes),
        "warnings": warnings,
    }


def cmd_brauer_group(rc: RunConfig, data) -> dict:
    data = _obj(data)
    if "flavor" in data:
        analysis = analyze(_spec(data))
        return _check_failed(encode_analysis(analysis), analysis.brauer)
    E = decode_curve(data.get("curve"))
    A = decode_class(E, data.get("class"))
    S = [decode_point(E, p) for p in data.get("S", [])]
    report = compute_brauer_group(E, A.a, A, S, strict=False)
    return _check_failed({"report": encode_report(E, report), "warnings": []}, report)


def cmd_chatelet(rc: RunConfig, data) -> dict:
    data = dict(_obj(data))
    data.setdefault("flavor", CHATELET)
    if data["flavor"] != CHATELET:
        raise InvalidInput("chatelet command needs the chatelet flavor")
    analysis = analyze(_spec(data))
    return _check_failed(encode_analysis(analysis), analysis.brauer)


def cmd_fibre(rc: RunConfig, data) -> dict:
    data = _obj(data)
    spec = _spec(data)
    E = spec.curve
    P = decode_point(E, data.get("point"))
    c = fibre_value(spec, P)
    places, _ = local_places(spec.a, c)
    if "place" in data:
        requested = Place.parse(data["place"])
        if requested not in places:
            places.append(requested)
    local = {str(v): hilbert_symbol(spec.a, c, v) == 1 for v in places}
    return {
        "point": encode_point(E, P),
        "value": rat_str(c),
        "local": local,
        "has_rational_point": fibre_has_rational_point(spec, P),
    }


def cmd_obstruction(rc: RunConfig, data) -> dict:
    spec = _spec(data)
    cert = find_certificate(spec, pair=rc.pair, depth=rc.sample_depth)
    ok = verify_certificate(spec, cert)
    if not ok:  # pragma: no cover - would be an internal bug
        raise RuntimeError("certificate failed its own verification")
    return {"certificate": encode_certificate(spec.curve, cert), "verified": ok}


def cmd_survey(rc: RunConfig, data) -> dict:
    data = dict(_obj(data))
    data.setdefault("flavor", SUMS_OF_TWO_SQUARES)
    spec = _spec(data)
    E = spec.curve
    G = decode_point(E, data.get("generator", data.get("G")))
    M = rc.max_multiple or int(data.get("max_multiple", DEFAULT_MAX_MULTIPLE))
    try:
        entries = survey_multiples(spec, G, M)
    except FactorBoundExceeded as exc:
        raise _Outcome(
            EXIT_SEARCH,
            "error",
            exc.reason,
            str(exc),
            {"entries": encode_survey(E, exc.partial)},
            largest_completed_m=exc.details.get("largest_completed_m"),
        ) from exc
    return {"generator": encode_point(E, G), "max_multiple": M, "entries": encode_survey(E, entries)}


HANDLERS: dict[str, Callable[[RunConfig, Any], dict]] = {
    "halve": cmd_halve,
    "residues": cmd_residues,
    "brauer-group": cmd_brauer_group,
    "chatelet": cmd_chatelet,
    "fibre": cmd_fibre,
    "obstruction": cmd_obstruction,
    "two-squares-survey": cmd_survey,
}


# --- envelope and rendering -----------------------------------------------------

def execute(rc: RunConfig) -> tuple[int, dict]:
    """Run one command; returns (exit status, JSON-ready envelope)."""
    env: dict[str, Any] = {"command": rc.command}
    try:
        with config.override(factor_bound=rc.factor_bound, sample_depth=rc.sample_depth):
            data = load_input(rc.input)
            result = HANDLERS[rc.command](rc, data)
        env.update(status="ok", exit_code=EXIT_OK, result=result)
    except _Outcome as out:
        env.update(status=out.status, exit_code=out.code, reason=out.reason, message=str(out))
        env.update(to_jsonable(out.extra))
        if out.result is not None:
            env["result"] = out.result
    except HypothesisFailed as exc:
        env.update(
            status="hypothesis-failed",
            exit_code=EXIT_HYPOTHESIS,
            reason=exc.reason,
            which=exc.which,
            message=str(exc),
        )
        if exc.details:
            env["details"] = to_jsonable(exc.details)
    except (SearchExhausted, FactorBoundExceeded) as exc:
        env.update(status="error", exit_code=EXIT_SEARCH, reason=exc.reason, message=str(exc))
        env["details"] = to_jsonable(exc.details)
    except ConicBrauerError as exc:
        env.update(status="error", exit_code=EXIT_ERROR, reason=exc.reason, message=str(exc))
        if exc.details:
            env["details"] = to_jsonable(exc.details)
    except (ValueError, TypeError, KeyError, AttributeError) as exc:
        env.update(status="error", exit_code=EXIT_ERROR, reason="invalid-input", message=str(exc))
    return env["exit_code"], env


def render_text(value, indent: int = 0) -> str:
    """Plain-text rendering of the same structure the JSON mode emits."""
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(value))
    return "\n".join(lines)


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    return str(v)


def format_output(env: dict, output: str) -> str:
    if output == "json":
        return json.dumps(env, indent=2)
    return render_text(env)


# --- argument parsing ------------------------------------------------------------

def _pair(text: str) -> tuple[int, int]:
    try:
        i, j = (int(t) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("pair must look like 1,3") from exc
    return i, j


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="conic-brauer",
        description="Brauer groups of conic bundles over elliptic curves over Q.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", required=True, help="JSON file, '-' for stdin, or inline JSON")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("--factor-bound", type=int, help="trial division bound (default 10^7)")
    p.add_argument("--sample-depth", type=int, help="dyadic sampling depth (default 20)")
    p.add_argument("--pair", type=_pair, help="obstruction: restrict to the pair i,j")
    p.add_argument("--max-multiple", type=int, help="survey: largest multiple m")
    p.add_argument("--config", help="JSON config file; its values override flags")
    return p


def _read_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read config {path!r}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise InvalidInput("config file must hold a JSON object")
    known = {"json", "output", "factor_bound", "sample_depth", "pair", "max_multiple"}
    unknown = set(cfg) - known
    if unknown:
        raise InvalidInput(f"unknown config keys {sorted(unknown)}")
    return cfg


def make_run_config(ns: argparse.Namespace) -> RunConfig:
    env = config.current()
    settings = {
        "output": "json" if ns.json else "text",
        "factor_bound": env.factor_bound,
        "sample_depth": env.sample_depth,
        "pair": ns.pair,
        "max_multiple": ns.max_multiple,
    }
    if ns.factor_bound is not None:
        settings["factor_bound"] = ns.factor_bound
    if ns.sample_depth is not None:
        settings["sample_depth"] = ns.sample_depth
    if ns.config:
        cfg = _read_config(ns.config)
        if "json" in cfg:
            settings["output"] = "json" if cfg.pop("json") else "text"
        if "pair" in cfg:
            cfg["pair"] = tuple(cfg["pair"])
        settings.update(cfg)
    return RunConfig(command=ns.command, input=ns.input, **settings)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    wants_json = ns.json
    try:
        rc = make_run_config(ns)
    except (InvalidInput, ValueError, TypeError) as exc:
        env = {"command": ns.command, "status": "error", "exit_code": EXIT_ERROR,
               "reason": getattr(exc, "reason", "invalid-input"), "message": str(exc)}
        print(format_output(env, "json" if wants_json else "text"))
        return EXIT_ERROR
    code, env = execute(rc)
    print(format_output(env, rc.output))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
