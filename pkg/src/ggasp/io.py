"""JSON forms of instances and assignments.

Instance::

    {"players": 3, "edges": [[0, 1], [1, 2]],
     "activities": [{"id": "a", "copies": 1}],
     "prefs": [[{"activity": "a", "size": 2, "rank": 3}], [], []]}

Assignment::

    {"assignment": [{"player": 0, "activity": "a", "copy": 0},
                    {"player": 1, "activity": null}]}

Players are 0-based.  Generated instances may carry ``names`` and a
``provenance`` object; both are optional.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .model import Assignment, Instance, InstanceError, build_instance, validate_assignment


def instance_to_dict(inst: Instance, provenance: Mapping | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {
        "players": inst.n,
        "edges": [list(e) for e in sorted(inst.edges)],
        "activities": [{"id": a, "copies": c} for a, c in inst.activities],
        "prefs": [
            [
                {"activity": alt.activity, "size": alt.size, "rank": r}
                for alt, r in sorted(table.items(), key=lambda kv: (-kv[1], kv[0]))
            ]
            for table in inst.prefs
        ],
    }
    if inst.names:
        out["names"] = list(inst.names)
    if provenance is not None:
        out["provenance"] = dict(provenance)
    return out


def assignment_to_dict(pi: Assignment) -> dict[str, Any]:
    rows = []
    for i, s in enumerate(pi.slots):
        if s is None:
            rows.append({"player": i, "activity": None})
        else:
            rows.append({"player": i, "activity": s[0], "copy": s[1]})
    return {"assignment": rows}


def assignment_from_dict(raw: Mapping, inst: Instance | None = None) -> Assignment:
    try:
        rows = raw["assignment"]
        n = inst.n if inst is not None else len(rows)
        slots: list = [None] * n
        seen = set()
        for row in rows:
            i = row["player"]
            if not isinstance(i, int) or not 0 <= i < n:
                raise InstanceError(f"assignment row for unknown player {i!r}")
            if i in seen:
                raise InstanceError(f"player {i} listed twice")
            seen.add(i)
            a = row.get("activity")
            slots[i] = None if a is None else (a, int(row.get("copy", 0)))
    except (KeyError, TypeError, AttributeError) as exc:
        raise InstanceError(f"malformed assignment description: {exc!r}") from exc
    pi = Assignment(tuple(slots))
    if inst is not None:
        validate_assignment(inst, pi)
    return pi


def _read_json(path: str | Path) -> Any:
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"{path}: invalid JSON ({exc})") from exc


def load_instance(path: str | Path) -> Instance:
    return build_instance(_read_json(path))


def load_assignment(path: str | Path, inst: Instance | None = None) -> Assignment:
    return assignment_from_dict(_read_json(path), inst)


def write_json(path: str | Path, payload: Any) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")
