"""Deterministic text and JSON rendering of per-node results.

Class labels are internal, so reports list classes as sorted term strings,
sorted again across classes; re-running an analysis (with either solver)
reproduces the output byte for byte. By default singleton classes and terms
mentioning a reserved constant are hidden; ``full=True`` shows everything.
Filtering affects visibility only, never membership.
"""

from __future__ import annotations

import json
from typing import Iterable

from .congruence import LatticeElem, Partition, is_top
from .terms import RESERVED, AtomRef, Sum, Term, format_term


def _mentions_reserved(t: Term) -> bool:
    if isinstance(t, AtomRef):
        return t.atom.kind == RESERVED
    assert isinstance(t, Sum)
    return _mentions_reserved(t.left) or _mentions_reserved(t.right)


def visible_classes(elem: LatticeElem, full: bool = False) -> list[list[str]] | None:
    """Class lists for one node, or ``None`` for a ``TOP`` node."""
    if is_top(elem):
        return None
    assert isinstance(elem, Partition)
    rows = []
    for members in elem.classes():
        if not full:
            members = [t for t in members if not _mentions_reserved(t)]
            if len(members) < 2:
                continue
        rows.append(sorted(format_term(t) for t in members))
    rows.sort()
    return rows


def point_entries(state: Iterable[LatticeElem], full: bool = False) -> list[dict]:
    points = []
    for node_id, elem in enumerate(state, start=1):
        rows = visible_classes(elem, full)
        if rows is None:
            points.append({"id": node_id, "status": "top"})
        else:
            points.append({"id": node_id, "status": "partition", "classes": rows})
    return points


def render_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def render_points_text(points: list[dict], indent: str = "") -> list[str]:
    lines = []
    for point in points:
        lines.append(f"{indent}node {point['id']}: {point['status']}")
        for row in point.get("classes", ()):
            lines.append(f"{indent}  [" + ", ".join(row) + "]")
    return lines


def emit_report(
    state: Iterable[LatticeElem],
    solver: str,
    iterations: int,
    fmt: str = "text",
    full: bool = False,
    trace: list[tuple[LatticeElem, ...]] | None = None,
) -> str:
    """Render an analysis state; ``fmt`` is ``text`` or ``json``."""
    points = point_entries(state, full)
    if fmt == "json":
        payload: dict = {"solver": solver, "iterations": iterations, "points": points}
        if trace is not None:
            payload["trace"] = [
                {"iteration": l, "points": point_entries(row, full)}
                for l, row in enumerate(trace)
            ]
        return render_json(payload)
    lines = [f"solver: {solver}", f"iterations: {iterations}"]
    lines.extend(render_points_text(points))
    if trace is not None:
        for l, row in enumerate(trace):
            lines.append(f"iterate {l}:")
            lines.extend(render_points_text(point_entries(row, full), indent="  "))
    return "\n".join(lines) + "\n"
