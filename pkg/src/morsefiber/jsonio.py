"""Canonical JSON payloads shared by the CLI and the HTTP API.

Rationals travel as strings so they round-trip without precision loss;
objects are serialized with sorted keys and no whitespace so equal
payloads are byte-identical.
"""

from __future__ import annotations

import json

from .diagram import FiberDiagram
from .rationals import format_rational, format_vector


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def diagram_from_points_payload(line, degrees, payload: list[dict]) -> FiberDiagram:
    from .diagram import DiagramPoint
    from .rationals import parse_rational

    points = []
    for raw in payload:
        death_t = None if raw["deathT"] == "inf" else parse_rational(raw["deathT"])
        points.append(
            DiagramPoint(
                dim=int(raw["dim"]),
                birth_t=parse_rational(raw["birthT"]),
                death_t=death_t,
                birth_point=tuple(parse_rational(x) for x in raw["birthPoint"]),
                death_point=None
                if raw["deathPoint"] is None
                else tuple(parse_rational(x) for x in raw["deathPoint"]),
                multiplicity=int(raw["multiplicity"]),
            )
        )
    return FiberDiagram.build(line, degrees, points)


def diagram_points_payload(diagram: FiberDiagram) -> list[dict]:
    out = []
    for p in diagram.points:
        out.append(
            {
                "dim": p.dim,
                "birthT": format_rational(p.birth_t),
                "deathT": "inf" if p.death_t is None else format_rational(p.death_t),
                "birthPoint": format_vector(p.birth_point),
                "deathPoint": None if p.death_point is None else format_vector(p.death_point),
                "multiplicity": p.multiplicity,
            }
        )
    return out


def pushed_criticals_payload(stops) -> list[dict]:
    return [
        {
            "t": format_rational(s.t),
            "point": format_vector(s.point),
            "floor": format_vector(s.floor),
        }
        for s in stops
    ]


def fiber_payload(class_id: str, diagram: FiberDiagram, stops) -> dict:
    return {
        "classId": class_id,
        "points": diagram_points_payload(diagram),
        "pushedCriticals": pushed_criticals_payload(stops),
    }


def line_payload(line) -> dict:
    return {
        "base": format_vector(line.base),
        "dir": format_vector(line.direction),
    }
