"""JSON run-configuration schemas and loaders.

Every config carries a ``command`` key naming the subcommand it drives; the
schema for that command is enforced strictly (unknown keys rejected).
Complex numbers are written as ``[re, im]`` pairs, points as arrays of pairs.
"""

from __future__ import annotations

import json
from typing import Any

import jsonschema

from .domains import Ball, Domain, Polydisc
from .errors import ConfigError
from .expr import CPoint
from .metrics import SamplingPlan
from .rescaling import ExplicitScale, SequenceSpec, ZalcmanScale

_NUMBER = {"type": "number"}
_POSITIVE = {"type": "number", "exclusiveMinimum": 0}
_POSINT = {"type": "integer", "minimum": 1}
_SEED = {"type": "integer", "minimum": 0}
_COMPLEX = {
    "type": "array",
    "items": _NUMBER,
    "minItems": 2,
    "maxItems": 2,
}
_POINT = {"type": "array", "items": _COMPLEX, "minItems": 1}

_DOMAIN = {
    "type": "object",
    "oneOf": [
        {
            "properties": {
                "type": {"const": "ball"},
                "center": _POINT,
                "radius": _POSITIVE,
            },
            "required": ["type", "center", "radius"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "type": {"const": "polydisc"},
                "center": _POINT,
                "radii": {"type": "array", "items": _POSITIVE, "minItems": 1},
            },
            "required": ["type", "center", "radii"],
            "additionalProperties": False,
        },
    ],
}

_PLAN = {
    "type": "object",
    "properties": {
        "shells": {
            "type": "array",
            "items": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
            "minItems": 1,
        },
        "points_per_shell": _POSINT,
        "directions_per_point": _POSINT,
        "seed": _SEED,
    },
    "required": ["shells", "points_per_shell", "directions_per_point"],
    "additionalProperties": False,
}

def _sequence_schema(with_explicit_scale: bool) -> dict:
    props = {
        "anchor": _POINT,
        "inward": _POINT,
        "c_p": _POSITIVE,
        "a": _POSITIVE,
        "j_start": _POSINT,
        "j_end": _POSINT,
    }
    required = ["anchor", "inward", "c_p", "a", "j_start", "j_end"]
    if with_explicit_scale:
        props["c_r"] = _POSITIVE
        props["b"] = _POSITIVE
        required += ["c_r", "b"]
    return {
        "type": "object",
        "properties": props,
        "required": required,
        "additionalProperties": False,
    }


SCHEMAS: dict[str, dict] = {
    "sharp": {
        "type": "object",
        "properties": {
            "command": {"const": "sharp"},
            "function": {"type": "string", "minLength": 1},
            "dimension": _POSINT,
            "points": {"type": "array", "items": _POINT, "minItems": 1},
            "h": _POSITIVE,
            "sphere_samples": _POSINT,
            "seed": _SEED,
        },
        "required": ["command", "function", "dimension", "points"],
        "additionalProperties": False,
    },
    "marty-scan": {
        "type": "object",
        "properties": {
            "command": {"const": "marty-scan"},
            "function": {"type": "string", "minLength": 1},
            "dimension": _POSINT,
            "domain": _DOMAIN,
            "plan": _PLAN,
        },
        "required": ["command", "function", "dimension", "domain", "plan"],
        "additionalProperties": False,
    },
    "rescale": {
        "type": "object",
        "properties": {
            "command": {"const": "rescale"},
            "function": {"type": "string", "minLength": 1},
            "dimension": _POSINT,
            "domain": _DOMAIN,
            "sequence": _sequence_schema(with_explicit_scale=False),
            "R": _POSITIVE,
            "grid_size": _POSINT,
            "tol": _POSITIVE,
            "seed": _SEED,
        },
        "required": ["command", "function", "dimension", "domain", "sequence", "R"],
        "additionalProperties": False,
    },
    "thm2": {
        "type": "object",
        "properties": {
            "command": {"const": "thm2"},
            "function": {"type": "string", "minLength": 1},
            "dimension": _POSINT,
            "domain": _DOMAIN,
            "sequence": _sequence_schema(with_explicit_scale=True),
            "R": _POSITIVE,
            "grid_size": _POSINT,
            "tol": _POSITIVE,
            "seed": _SEED,
        },
        "required": ["command", "function", "dimension", "domain", "sequence", "R"],
        "additionalProperties": False,
    },
    "counterexample": {
        "type": "object",
        "properties": {
            "command": {"const": "counterexample"},
            "n_max": {"type": "integer", "minimum": 3},
            "R": _POSITIVE,
            "grid_size": _POSINT,
            "seed": _SEED,
        },
        "required": ["command", "n_max", "R"],
        "additionalProperties": False,
    },
}


def load_config(path: str) -> dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    if not isinstance(config, dict):
        raise ConfigError("config root must be a JSON object")
    return config


def validate_config(config: dict[str, Any]) -> str:
    """Validate against the schema named by config['command']; returns it."""
    command = config.get("command")
    if command not in SCHEMAS:
        raise ConfigError(
            f"config must carry a 'command' key, one of {sorted(SCHEMAS)}"
        )
    try:
        jsonschema.validate(config, SCHEMAS[command])
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"config schema violation: {exc.message}") from exc
    return command


def parse_point(raw: list[list[float]]) -> CPoint:
    return tuple(complex(re, im) for re, im in raw)


def parse_domain(raw: dict[str, Any]) -> Domain:
    center = parse_point(raw["center"])
    if raw["type"] == "ball":
        return Ball(center, float(raw["radius"]))
    return Polydisc(center, tuple(float(r) for r in raw["radii"]))


def parse_plan(raw: dict[str, Any]) -> SamplingPlan:
    return SamplingPlan(
        shells=tuple(float(t) for t in raw["shells"]),
        points_per_shell=int(raw["points_per_shell"]),
        directions_per_point=int(raw["directions_per_point"]),
        seed=int(raw.get("seed", 0)),
    )


def parse_sequence(raw: dict[str, Any], explicit: bool) -> SequenceSpec:
    scale = (
        ExplicitScale(float(raw["c_r"]), float(raw["b"]))
        if explicit
        else ZalcmanScale()
    )
    return SequenceSpec(
        anchor=parse_point(raw["anchor"]),
        inward=parse_point(raw["inward"]),
        c_p=float(raw["c_p"]),
        a=float(raw["a"]),
        scale=scale,
        j_start=int(raw["j_start"]),
        j_end=int(raw["j_end"]),
    )


def complex_to_json(value: complex) -> list[float]:
    return [value.real, value.imag]


def point_to_json(point: CPoint) -> list[list[float]]:
    return [complex_to_json(complex(c)) for c in point]
