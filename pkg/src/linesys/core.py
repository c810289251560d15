"""Incidence structures in which two lines meet in at most one point.

A linear system is a ground set of points, addressed by the integer
indices ``0 .. num_points - 1``, together with a family of lines.  Each
line is a nonempty set of points and any two distinct lines share at most
one point.  Lines of size one are allowed; duplicate lines are not.

Storage conventions, relied on throughout the package:

* each line is kept as a strictly increasing tuple of point indices;
* the line list is kept sorted lexicographically, so two systems with the
  same lines compare equal structurally and serialisations are canonical;
* ``LinearSystem`` values are immutable and every operation returns a new
  value (plus a small record of what was removed, where relevant).

Construct systems through :func:`new_system`, which validates all the
invariants; the dataclass constructor itself performs no checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

PointId = int

_REDUCE_DEGREE = 1  # points of degree <= this are stripped by reduce_system


class LinearSystemError(Exception):
    """Base class for every error raised by this package."""


class LinearityViolation(LinearSystemError):
    """Two lines share two or more points.

    ``first`` and ``second`` are the positions of the offending lines in
    the input order given to :func:`new_system`.
    """

    def __init__(self, first: int, second: int, shared: tuple[int, ...]):
        self.first = first
        self.second = second
        self.shared = shared
        super().__init__(
            f"lines {first} and {second} share points {sorted(shared)}"
        )


class DuplicateLineError(LinearSystemError):
    """The same point set appears twice in the line list."""

    def __init__(self, first: int, second: int):
        self.first = first
        self.second = second
        super().__init__(f"lines {first} and {second} are equal as sets")


class PointOutOfRangeError(LinearSystemError):
    """A line mentions a point index outside 0..num_points-1."""


class EmptyLineError(LinearSystemError):
    """A line with no points was supplied."""


class LineIndexError(LinearSystemError):
    """A line index outside 0..num_lines-1 was supplied."""


class NotUniformError(LinearSystemError):
    """An operation requiring all lines to have equal size was applied
    to a system whose line sizes differ (or which has no lines)."""


@dataclass(frozen=True)
class LinearSystem:
    """An immutable linear system.  Build via :func:`new_system`."""

    num_points: int
    lines: tuple[tuple[int, ...], ...]

    @property
    def num_lines(self) -> int:
        return len(self.lines)

    def line_sizes(self) -> tuple[int, ...]:
        return tuple(len(l) for l in self.lines)

    def point_lines(self) -> list[list[int]]:
        """Incidence lists: for each point, the indices of its lines."""
        inc: list[list[int]] = [[] for _ in range(self.num_points)]
        for j, line in enumerate(self.lines):
            for p in line:
                inc[p].append(j)
        return inc

    def line_sets(self) -> list[frozenset[int]]:
        return [frozenset(l) for l in self.lines]


@dataclass(frozen=True)
class DegreeProfile:
    """Per-point line counts of a system."""

    degrees: tuple[int, ...]
    max_degree: int

    def multiset(self) -> tuple[int, ...]:
        """Degrees in sorted order (an isomorphism invariant)."""
        return tuple(sorted(self.degrees))


@dataclass(frozen=True)
class PointDeletion:
    """Result of deleting one point.

    ``index_map`` sends each surviving original point index to its index
    in the new system.  ``dropped_lines`` lists, in original order, the
    lines that became empty and were removed.
    """

    system: LinearSystem
    index_map: dict[int, int]
    dropped_lines: tuple[int, ...]


@dataclass(frozen=True)
class ReducedSystem:
    """A system stripped of its low-degree points.

    ``removed_points`` holds original indices of all points removed (each
    had degree <= 1 at the moment it was stripped), ``dropped_lines`` the
    original indices of lines that no longer appear, and ``index_map``
    sends surviving original point indices to reduced ones.
    """

    system: LinearSystem
    removed_points: tuple[int, ...]
    dropped_lines: tuple[int, ...]
    index_map: dict[int, int]


def _make(num_points: int, lines: Iterable[Iterable[int]]) -> LinearSystem:
    """Build without validation; callers must already hold the invariants."""
    normalised = sorted(tuple(sorted(l)) for l in lines)
    return LinearSystem(num_points, tuple(normalised))


def new_system(num_points: int, lines: Sequence[Iterable[int]]) -> LinearSystem:
    """Validate and build a linear system.

    Lines may be given in any order and with points in any order; they are
    stored sorted.  Raises :class:`EmptyLineError`,
    :class:`PointOutOfRangeError`, :class:`DuplicateLineError` or
    :class:`LinearityViolation` (reporting positions in the input order).
    """
    if num_points < 0:
        raise PointOutOfRangeError(f"num_points must be >= 0, got {num_points}")
    as_sets: list[frozenset[int]] = []
    for pos, raw in enumerate(lines):
        pts = frozenset(raw)
        if not pts:
            raise EmptyLineError(f"line {pos} is empty")
        for p in pts:
            if not isinstance(p, int) or isinstance(p, bool):
                raise PointOutOfRangeError(f"line {pos}: {p!r} is not an int")
            if not 0 <= p < num_points:
                raise PointOutOfRangeError(
                    f"line {pos}: point {p} outside 0..{num_points - 1}"
                )
        as_sets.append(pts)
    seen: dict[frozenset[int], int] = {}
    for pos, pts in enumerate(as_sets):
        if pts in seen:
            raise DuplicateLineError(seen[pts], pos)
        seen[pts] = pos
    for i in range(len(as_sets)):
        for j in range(i + 1, len(as_sets)):
            shared = as_sets[i] & as_sets[j]
            if len(shared) > 1:
                raise LinearityViolation(i, j, tuple(sorted(shared)))
    return _make(num_points, as_sets)


def degree_profile(s: LinearSystem) -> DegreeProfile:
    """Number of lines through each point, and the maximum over points."""
    deg = [0] * s.num_points
    for line in s.lines:
        for p in line:
            deg[p] += 1
    return DegreeProfile(tuple(deg), max(deg, default=0))


def uniformity(s: LinearSystem) -> int | None:
    """The common line size if all lines have equal size, else None.

    A system with no lines has no uniformity.
    """
    sizes = {len(l) for l in s.lines}
    if len(sizes) == 1:
        return sizes.pop()
    return None


def is_intersecting(s: LinearSystem) -> bool:
    """True when every two distinct lines share exactly one point."""
    sets = s.line_sets()
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if not sets[i] & sets[j]:
                return False
    return True


def delete_point(s: LinearSystem, p: PointId) -> PointDeletion:
    """Remove a point from the ground set and from every line.

    Surviving points are re-indexed to stay contiguous; lines that become
    empty are dropped and reported.  If two lines would become equal after
    the removal (a one-line and a two-line through the same point), the
    result is not a valid system and :class:`DuplicateLineError` is raised.
    """
    if not 0 <= p < s.num_points:
        raise PointOutOfRangeError(f"point {p} outside 0..{s.num_points - 1}")
    index_map = {
        old: (old if old < p else old - 1)
        for old in range(s.num_points)
        if old != p
    }
    kept: list[tuple[int, ...]] = []
    kept_orig: list[int] = []
    dropped: list[int] = []
    for j, line in enumerate(s.lines):
        rest = tuple(index_map[x] for x in line if x != p)
        if rest:
            kept.append(rest)
            kept_orig.append(j)
        else:
            dropped.append(j)
    seen: dict[tuple[int, ...], int] = {}
    for line, orig in zip(kept, kept_orig):
        if line in seen:
            raise DuplicateLineError(seen[line], orig)
        seen[line] = orig
    return PointDeletion(_make(s.num_points - 1, kept), index_map, tuple(dropped))


def delete_line(s: LinearSystem, index: int) -> LinearSystem:
    """Remove the line at ``index``; the ground set is unchanged."""
    if not 0 <= index < s.num_lines:
        raise LineIndexError(f"line index {index} outside 0..{s.num_lines - 1}")
    return _make(s.num_points, s.lines[:index] + s.lines[index + 1 :])


def reduce_system(s: LinearSystem) -> ReducedSystem:
    """Strip all points of degree 0 or 1, repeating until none remain.

    One pass normally suffices, since removing a degree-<=1 point never
    lowers another point's degree.  The exception is a pendant line whose
    other points all disappear: it can collapse onto an equal one-point
    line.  Collapsed copies are dropped (recorded in ``dropped_lines``)
    and stripping resumes, so the result is always a valid system in which
    every point has degree >= 2.  Applying the reduction again is the
    identity.
    """
    # Current state: surviving original point ids, and (point-set, original
    # line index) pairs in plain sets of original ids.
    points = list(range(s.num_points))
    lines: list[tuple[frozenset[int], int]] = [
        (frozenset(l), j) for j, l in enumerate(s.lines)
    ]
    removed: list[int] = []
    dropped: list[int] = []
    while True:
        deg: dict[int, int] = {p: 0 for p in points}
        for pts, _ in lines:
            for p in pts:
                deg[p] += 1
        low = {p for p in points if deg[p] <= _REDUCE_DEGREE}
        if not low:
            break
        removed.extend(sorted(low))
        points = [p for p in points if p not in low]
        next_lines: list[tuple[frozenset[int], int]] = []
        seen: dict[frozenset[int], int] = {}
        for pts, orig in lines:
            rest = pts - low
            if not rest or rest in seen:
                dropped.append(orig)
            else:
                seen[rest] = orig
                next_lines.append((rest, orig))
        lines = next_lines
    index_map = {old: new for new, old in enumerate(points)}
    reduced = _make(len(points), [{index_map[p] for p in pts} for pts, _ in lines])
    return ReducedSystem(reduced, tuple(removed), tuple(sorted(dropped)), index_map)
