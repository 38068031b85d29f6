"""Catalog of semigroup-in-group families and their constructible ideals."""

from __future__ import annotations

import json

from .axb import AxbLeft, AxbRight
from .base import (
    EMPTY,
    Family,
    FamilyError,
    FamilySpec,
    Ideal,
    SampleReport,
    ToeplitzVerdict,
    UnsupportedSide,
    constructible_closure,
    freeze,
    intersection_closed,
)
from .cantor import CantorShift
from .finite_sets import FiniteSets
from .matrix import MatrixPID2
from .nats import Nats, NatsK
from .semidirect import SemidirectLeft, SemidirectRight
from .wreath import FiniteGroup, WreathLeft, WreathRight

_BY_TAG = {
    "Nats": (Nats, Nats),
    "NatsK": (NatsK, NatsK),
    "SemidirectHN": (SemidirectLeft, SemidirectRight),
    "AxbInt": (AxbLeft, AxbRight),
    "MatrixPID2": (MatrixPID2, MatrixPID2),
    "WreathFiniteN": (WreathLeft, WreathRight),
    "CantorShift": (CantorShift, CantorShift),
    "FiniteSets": (FiniteSets, FiniteSets),
}

PRESETS = {
    "nats": ("Nats", {}),
    "natsk": ("NatsK", {"k": 2}),
    "semidirect-z-times1": ("SemidirectHN", {"m": 1}),
    "semidirect-z-times2": ("SemidirectHN", {"m": 2}),
    "semidirect-z-times3": ("SemidirectHN", {"m": 3}),
    "semidirect-z2-diag23": ("SemidirectHN", {"diag": [2, 3]}),
    "axb-int": ("AxbInt", {}),
    "matrix-pid2": ("MatrixPID2", {}),
    "wreath-z2": ("WreathFiniteN", {"order": 2}),
    "cantor-shift": ("CantorShift", {"window": 4}),
}

FAMILY_TAGS = tuple(_BY_TAG)


def make_spec(tag: str, params: dict | None = None, side: str = "left") -> FamilySpec:
    if tag not in _BY_TAG:
        raise FamilyError(f"unknown family {tag!r}; known: {', '.join(FAMILY_TAGS)}")
    return FamilySpec(tag, freeze(params or {}), side)


def preset_spec(name: str, side: str = "left") -> FamilySpec:
    if name not in PRESETS:
        raise FamilyError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}")
    tag, params = PRESETS[name]
    return make_spec(tag, params, side)


def spec_from_json(doc) -> FamilySpec:
    """Parse {"family": ..., "params": {...}, "side": "left"|"right"}."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise FamilyError(f"family JSON does not parse: {exc}") from exc
    if not isinstance(doc, dict) or "family" not in doc:
        raise FamilyError('family JSON must be an object with a "family" key')
    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise FamilyError('"params" must be an object')
    return make_spec(doc["family"], params, doc.get("side", "left"))


def make_family(spec: FamilySpec):
    left, right = _BY_TAG[spec.tag]
    cls = left if spec.side == "left" else right
    if spec.side not in getattr(cls, "sides", ("left",)) and cls is not FiniteSets:
        raise UnsupportedSide(f"{spec.tag} does not support side={spec.side}")
    return cls(spec)


__all__ = [
    "EMPTY", "Family", "FamilyError", "FamilySpec", "Ideal", "SampleReport", "ToeplitzVerdict",
    "UnsupportedSide", "constructible_closure", "intersection_closed", "FiniteGroup",
    "PRESETS", "FAMILY_TAGS", "make_spec", "preset_spec", "spec_from_json", "make_family",
    "Nats", "NatsK", "SemidirectLeft", "SemidirectRight", "AxbLeft", "AxbRight", "MatrixPID2",
    "WreathLeft", "WreathRight", "CantorShift", "FiniteSets",
]
