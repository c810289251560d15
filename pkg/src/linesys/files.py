"""Reading and writing instance files and labeling sidecars.

An instance file is a single JSON document of the form

    {"points": 7, "lines": [[0, 1, 2], [0, 3, 4], ...]}

where every line is a strictly increasing list of point indices and the
line list itself is sorted lexicographically.  The writer always emits
this normal form, so load(dump(s)) == s and dump(load(text)) == text
byte for byte.  The reader is strict: files violating the normal form
(or any system invariant) are rejected with InstanceFormatError.

A labeling sidecar maps point and line indices to the printable labels a
construction assigned, as a JSON document with (index, label) pairs.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import LinearSystem, LinearSystemError, new_system


class InstanceFormatError(LinearSystemError):
    """The file is not a well-formed instance document."""


def render_instance(num_points: int, lines) -> str:
    """Normal-form text for a point count and a line list."""
    doc = {"points": num_points, "lines": [list(l) for l in lines]}
    return json.dumps(doc) + "\n"


def dump_instance(s: LinearSystem) -> str:
    return render_instance(s.num_points, s.lines)


def load_instance(text: str) -> LinearSystem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or set(doc) != {"points", "lines"}:
        raise InstanceFormatError('expected an object with keys "points" and "lines"')
    n = doc["points"]
    lines = doc["lines"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InstanceFormatError('"points" must be a non-negative integer')
    if not isinstance(lines, list):
        raise InstanceFormatError('"lines" must be a list')
    for pos, line in enumerate(lines):
        if not isinstance(line, list):
            raise InstanceFormatError(f"line {pos} is not a list")
        for x in line:
            if not isinstance(x, int) or isinstance(x, bool):
                raise InstanceFormatError(f"line {pos}: {x!r} is not an integer")
        if any(a >= b for a, b in zip(line, line[1:])):
            raise InstanceFormatError(f"line {pos} is not strictly increasing")
    tuples = [tuple(l) for l in lines]
    if tuples != sorted(tuples):
        raise InstanceFormatError("line list is not sorted lexicographically")
    try:
        return new_system(n, tuples)
    except LinearSystemError as exc:
        raise InstanceFormatError(str(exc)) from None


def read_instance(path: str | Path) -> LinearSystem:
    return load_instance(Path(path).read_text())


def write_instance(path: str | Path, s: LinearSystem) -> None:
    Path(path).write_text(dump_instance(s))


def dump_labeling(name: str, point_labels, line_labels) -> str:
    doc = {
        "name": name,
        "points": [[i, lbl] for i, lbl in enumerate(point_labels)],
        "lines": [[i, lbl] for i, lbl in enumerate(line_labels)],
    }
    return json.dumps(doc, indent=1) + "\n"


def load_labeling(text: str) -> tuple[str, list[str], list[str]]:
    doc = json.loads(text)
    points = [lbl for _, lbl in doc["points"]]
    lines = [lbl for _, lbl in doc["lines"]]
    return doc["name"], points, lines
