"""JSON documents for profiles, orbit tables, certificates, room reports and ladders.

Every document carries ``schema_version`` and ``type``; rationals are written
as "p/q" strings so nothing passes through floating point. Field order is
fixed, which keeps golden files stable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .complexes import HomologyTable
from .ladder import LadderSpec
from .profiles import OrbitFamilyRecord, OrbitKind, PLProfile, fmt, to_fraction
from .squeeze import Certificate, PipelineRun, RoomReport

SCHEMA_VERSION = 1


def _q(x: Fraction | None) -> str | None:
    return None if x is None else fmt(x)


def _r(s: str | None) -> Fraction | None:
    return None if s is None else to_fraction(s)


def profile_to_dict(p: PLProfile) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "type": "profile",
        "corners": [[fmt(u), fmt(y)] for u, y in p.corners],
        "plateau": fmt(p.plateau),
    }


def profile_from_dict(d: dict) -> PLProfile:
    return PLProfile(tuple((to_fraction(str(u)), to_fraction(str(y))) for u, y in d["corners"]),
                     to_fraction(str(d["plateau"])))


def orbit_to_dict(o: OrbitFamilyRecord) -> dict:
    return {
        "kind": o.kind.value,
        "m": o.m,
        "corner_index": o.corner_index,
        "tangent_slope": fmt(o.tangent_slope),
        "vertical_intercept": fmt(o.vertical_intercept),
        "action": fmt(o.action),
        "u_location": fmt(o.u_location),
    }


def orbit_from_dict(d: dict) -> OrbitFamilyRecord:
    return OrbitFamilyRecord(OrbitKind(d["kind"]), int(d["m"]), int(d["corner_index"]),
                             _r(d["tangent_slope"]), _r(d["vertical_intercept"]), _r(d["u_location"]))


def table_to_dict(t: HomologyTable) -> dict:
    return {"window": list(t.window), "dims": {str(m): d for m, d in sorted(t.dims.items())},
            "stabilized": t.stabilized}


def _run_to_dict(r: PipelineRun) -> dict:
    return {"r": fmt(r.r), "delta": fmt(r.delta), "c": fmt(r.c), "epsilon": fmt(r.epsilon), "dim": r.dim}


def _run_from_dict(d: dict) -> PipelineRun:
    return PipelineRun(_r(d["r"]), _r(d["delta"]), _r(d["c"]), _r(d["epsilon"]), int(d["dim"]))


def certificate_to_dict(c: Certificate) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "type": "certificate",
        "n": c.n,
        "R1": fmt(c.R1),
        "R2": fmt(c.R2),
        "certified_R1": fmt(c.certified_R1),
        "certified_R2": fmt(c.certified_R2),
        "k": c.k,
        "ell": c.ell,
        "r1": fmt(c.r1),
        "r2": fmt(c.r2),
        "p": c.p,
        "dims": list(c.dims),
        "run1": _run_to_dict(c.run1),
        "run2": _run_to_dict(c.run2),
        "narrative": list(c.narrative),
        "valid": c.valid,
    }


def certificate_from_dict(d: dict) -> Certificate:
    return Certificate(
        int(d["n"]), _r(d["R1"]), _r(d["R2"]), _r(d["certified_R1"]), _r(d["certified_R2"]),
        int(d["k"]), int(d["ell"]), _r(d["r1"]), _r(d["r2"]), int(d["p"]),
        _run_from_dict(d["run1"]), _run_from_dict(d["run2"]), tuple(d["narrative"]),
    )


def room_to_dict(r: RoomReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "type": "room_report",
        "m": r.m,
        "kappa": r.kappa,
        "b": r.b,
        "sandwich_holds": r.sandwich_holds,
        "strong_holds": r.strong_holds,
        "required_room": _q(r.required_room),
        "ekp_bound": fmt(r.ekp_bound),
        "construction_bound": fmt(r.construction_bound),
        "gap": None if r.gap is None else [fmt(r.gap[0]), fmt(r.gap[1])],
    }


def room_from_dict(d: dict) -> RoomReport:
    gap = d.get("gap")
    return RoomReport(
        int(d["m"]), int(d["kappa"]), int(d["b"]), bool(d["sandwich_holds"]), bool(d["strong_holds"]),
        _r(d["required_room"]), _r(d["ekp_bound"]), _r(d["construction_bound"]),
        None if gap is None else (_r(gap[0]), _r(gap[1])),
    )


_WRITERS = {
    PLProfile: profile_to_dict,
    Certificate: certificate_to_dict,
    RoomReport: room_to_dict,
    LadderSpec: LadderSpec.to_dict,
}
_READERS = {
    "profile": profile_from_dict,
    "certificate": certificate_from_dict,
    "room_report": room_from_dict,
    "ladder": LadderSpec.from_dict,
}


def to_document(obj) -> dict:
    try:
        return _WRITERS[type(obj)](obj)
    except KeyError:
        raise TypeError(f"cannot serialize {type(obj).__name__}") from None


def from_document(d: dict) -> Any:
    version = d.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {version}")
    kind = d.get("type")
    if kind not in _READERS:
        raise ValueError(f"unknown document type {kind!r}")
    return _READERS[kind](d)


def dumps(obj) -> str:
    return json.dumps(to_document(obj), indent=2)


def loads(text: str) -> Any:
    return from_document(json.loads(text))
