"""Generators for the linear-system families used throughout the package.

Families and their CLI codes:

* ``cnn n``   -- for odd n >= 3, an n-uniform system on the cyclic group
  of order n with two extra apex points.  It has n(n-1)+2 points and
  3n-1 lines, every grid point has degree 3 and both apexes degree n,
  and its transversal and 2-packing numbers are both n+1.
* ``plane q`` -- the projective plane of prime order q, built from
  homogeneous coordinates: (q+1)-uniform, q^2+q+1 points and lines,
  any two lines meet.
* ``C``       -- the order-3 plane with one triangle deleted (both the
  three vertices and the three connecting lines): 10 points, 10 lines,
  four 4-lines and six 3-lines.
* ``c44``     -- all systems squeezed between C and the order-3 plane
  (every line is the trace of a plane line, every line of C is a trace
  of a system line) whose 2-packing number is 4, up to isomorphism.
* ``matching`` / ``star`` -- disjoint r-lines, and r-lines through a
  common centre.
* ``random``  -- rejection sampling of random distinct lines with the
  pairwise-intersection constraint, seeded and reproducible.
* ``pad``     -- extend a uniform system to a larger uniformity by
  appending fresh degree-1 points to every line.

Generators that assign meaningful names return a ConstructionLabeling
whose entries line up with the (sorted) point and line order of the
returned system.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .canon import canonical_form
from .core import (
    LinearSystem,
    LinearSystemError,
    NotUniformError,
    _make,
    new_system,
    uniformity,
)


class InvalidParameterError(LinearSystemError):
    """A construction parameter is outside its allowed range."""


class PrimePowerNotSupported(InvalidParameterError):
    """Planes of prime-power order need field arithmetic we do not build."""


class NotATriangleError(LinearSystemError):
    """The given triple is not a triangle of the given system."""


class GenerationExhausted(LinearSystemError):
    """Rejection sampling failed to place the requested number of lines."""


@dataclass(frozen=True)
class ConstructionLabeling:
    """Printable labels for the points and lines of a generated system."""

    name: str
    point_labels: tuple[str, ...]
    line_labels: tuple[str, ...]


@dataclass(frozen=True)
class Triangle:
    """Three pairwise-adjacent, non-collinear points and their lines.

    ``lines`` holds the indices of the lines through (a,b), (a,c) and
    (b,c) in that order, where points = (a, b, c).
    """

    points: tuple[int, int, int]
    lines: tuple[int, int, int]


@dataclass(frozen=True)
class PaddingRecord:
    """How a system was padded up to a larger uniformity.

    ``added_points[j]`` lists the fresh points appended to line j of the
    base system (base and padded systems have their lines in the same
    order).
    """

    base: LinearSystem
    target_size: int
    added_points: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class C44Member:
    """One member of the c44 family, with its provenance inside the
    order-3 plane: which deleted triangle vertices and triangle lines
    were restored (given as plane point/line indices and labels)."""

    system: LinearSystem
    restored_points: tuple[int, ...]
    restored_lines: tuple[int, ...]
    restored_point_labels: tuple[str, ...]
    restored_line_labels: tuple[str, ...]


def _assemble(
    name: str,
    num_points: int,
    point_labels: list[str],
    labelled_lines: list[tuple[tuple[int, ...], str]],
) -> tuple[LinearSystem, ConstructionLabeling]:
    """Sort lines together with their labels and validate the system."""
    pairs = sorted((tuple(sorted(pts)), lbl) for pts, lbl in labelled_lines)
    system = new_system(num_points, [pts for pts, _ in pairs])
    assert system.lines == tuple(pts for pts, _ in pairs)
    labeling = ConstructionLabeling(
        name, tuple(point_labels), tuple(lbl for _, lbl in pairs)
    )
    return system, labeling


def build_cnn(n: int) -> tuple[LinearSystem, ConstructionLabeling]:
    """The two-apex cyclic construction for odd n >= 3.

    Grid points are pairs (h, g) with h mod n arbitrary and g mod n
    nonzero, indexed h*(n-1) + (g-1); the apexes p and q get the last
    two indices.  Lines: for g != 0, the column L_g = {(h, g): all h};
    for each g, l_p_g = {(g, h): h != 0} + p and
    l_q_g = {(h, h+g): h+g != 0} + q.
    """
    if n < 3 or n % 2 == 0:
        raise InvalidParameterError(f"n must be odd and >= 3, got {n}")

    def grid(h: int, g: int) -> int:
        return (h % n) * (n - 1) + (g % n) - 1

    p = n * (n - 1)
    q = p + 1
    point_labels = [""] * (n * (n - 1) + 2)
    for h in range(n):
        for g in range(1, n):
            point_labels[grid(h, g)] = f"({h},{g})"
    point_labels[p] = "p"
    point_labels[q] = "q"

    lines: list[tuple[tuple[int, ...], str]] = []
    for g in range(1, n):
        lines.append((tuple(grid(h, g) for h in range(n)), f"L_{g}"))
    for g in range(n):
        pts = tuple(grid(g, h) for h in range(1, n)) + (p,)
        lines.append((pts, f"l_p_{g}"))
    for g in range(n):
        pts = tuple(grid(h, h + g) for h in range(n) if (h + g) % n != 0) + (q,)
        lines.append((pts, f"l_q_{g}"))
    return _assemble(f"cnn_{n}", n * (n - 1) + 2, point_labels, lines)


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            while q % d == 0:
                q //= d
            return q == 1
        d += 1
    return True  # q itself prime


def projective_plane(q: int) -> tuple[LinearSystem, ConstructionLabeling]:
    """The projective plane of prime order q over the integers mod q.

    Points and lines are both labelled by normalised homogeneous triples
    (first nonzero coordinate 1), points as "(x:y:z)" and lines as
    "[a:b:c]"; the point (x:y:z) lies on the line [a:b:c] when
    ax + by + cz is divisible by q.
    """
    if not isinstance(q, int) or q < 2:
        raise InvalidParameterError(f"order must be an integer >= 2, got {q}")
    if not _is_prime(q):
        if _is_prime_power(q):
            raise PrimePowerNotSupported(
                f"order {q} is a prime power but not prime; "
                "field arithmetic beyond prime fields is not implemented"
            )
        raise InvalidParameterError(f"order {q} is not a prime")
    reps = sorted(
        (x, y, z)
        for x in range(q)
        for y in range(q)
        for z in range(q)
        if (x, y, z) != (0, 0, 0)
        and next(v for v in (x, y, z) if v != 0) == 1
    )
    point_labels = [f"({x}:{y}:{z})" for x, y, z in reps]
    lines: list[tuple[tuple[int, ...], str]] = []
    for a, b, c in reps:
        pts = tuple(
            i
            for i, (x, y, z) in enumerate(reps)
            if (a * x + b * y + c * z) % q == 0
        )
        lines.append((pts, f"[{a}:{b}:{c}]"))
    return _assemble(f"plane_{q}", len(reps), point_labels, lines)


def _pair_lines(s: LinearSystem) -> dict[tuple[int, int], int]:
    """Map each adjacent point pair (a < b) to its unique line index."""
    out: dict[tuple[int, int], int] = {}
    for j, line in enumerate(s.lines):
        for a, b in combinations(line, 2):
            out[(a, b)] = j
    return out


def find_triangles(s: LinearSystem) -> list[Triangle]:
    """All triangles, ordered lexicographically by point triple."""
    pairs = _pair_lines(s)
    out: list[Triangle] = []
    for a, b, c in combinations(range(s.num_points), 3):
        jab = pairs.get((a, b))
        jac = pairs.get((a, c))
        jbc = pairs.get((b, c))
        if jab is None or jac is None or jbc is None:
            continue
        if jab == jac or jab == jbc or jac == jbc:
            continue  # the three points are collinear
        out.append(Triangle((a, b, c), (jab, jac, jbc)))
    return out


def _remove(
    s: LinearSystem, points: set[int], line_idxs: set[int]
) -> tuple[LinearSystem, dict[int, int], list[tuple[tuple[int, ...], int]]]:
    """Drop the given lines, delete the given points, re-index.

    Returns the new system, the old-to-new point map, and (line, original
    index) pairs aligned with the new system's line order.
    """
    survivors = [p for p in range(s.num_points) if p not in points]
    pmap = {old: new for new, old in enumerate(survivors)}
    pairs: list[tuple[tuple[int, ...], int]] = []
    for j, line in enumerate(s.lines):
        if j in line_idxs:
            continue
        rest = tuple(sorted(pmap[x] for x in line if x not in points))
        if rest:
            pairs.append((rest, j))
    pairs.sort()
    return _make(len(survivors), [pts for pts, _ in pairs]), pmap, pairs


def delete_triangle(s: LinearSystem, t: Triangle) -> LinearSystem:
    """Remove a triangle's three points and three lines from a system."""
    _check_triangle(s, t)
    system, _, _ = _remove(s, set(t.points), set(t.lines))
    return system


def _check_triangle(s: LinearSystem, t: Triangle) -> None:
    a, b, c = t.points
    if not (0 <= a < b < c < s.num_points):
        raise NotATriangleError(f"points {t.points} are not increasing indices")
    pairs = _pair_lines(s)
    expect = (pairs.get((a, b)), pairs.get((a, c)), pairs.get((b, c)))
    if None in expect:
        raise NotATriangleError(f"points {t.points} are not pairwise adjacent")
    if len(set(expect)) < 3:
        raise NotATriangleError(f"points {t.points} are collinear")
    if tuple(expect) != t.lines:
        raise NotATriangleError(
            f"line indices {t.lines} do not match the joining lines {expect}"
        )


def build_c() -> tuple[LinearSystem, ConstructionLabeling]:
    """The order-3 plane minus its lexicographically first triangle.

    Labels are inherited from the plane construction, so the provenance
    of each surviving point and line stays readable.
    """
    plane, plab = projective_plane(3)
    t = find_triangles(plane)[0]
    system, pmap, pairs = _remove(plane, set(t.points), set(t.lines))
    point_labels = [
        plab.point_labels[old]
        for old in range(plane.num_points)
        if old not in t.points
    ]
    line_labels = [plab.line_labels[orig] for _, orig in pairs]
    return system, ConstructionLabeling("C", tuple(point_labels), tuple(line_labels))


def enumerate_c44(max_nodes: int = 200_000) -> list[C44Member]:
    """All systems between C and the order-3 plane with 2-packing number 4.

    Candidates restore a subset of the deleted triangle's vertices and a
    subset of its lines; every line is the full trace of a plane line on
    the candidate's point set and every line of C is the trace of a
    candidate line.  Both containment conditions are re-checked
    explicitly, the 2-packing number is computed exactly, and the
    survivors are deduplicated by canonical form.  Members are listed in
    the enumeration order (growing restored sets), so C itself is first.
    """
    from .solvers import two_packing_number

    plane, plab = projective_plane(3)
    t = find_triangles(plane)[0]
    tri_pts = set(t.points)
    tri_lines = set(t.lines)
    line_sets = plane.line_sets()
    base_idxs = [j for j in range(plane.num_lines) if j not in tri_lines]
    c_pts = frozenset(range(plane.num_points)) - tri_pts
    c_lines = [line_sets[j] & c_pts for j in base_idxs]

    members: list[C44Member] = []
    seen: set[bytes] = set()
    vertex_subsets = [
        comb for size in range(4) for comb in combinations(sorted(tri_pts), size)
    ]
    line_subsets = [
        comb for size in range(4) for comb in combinations(sorted(tri_lines), size)
    ]
    for restored_pts in vertex_subsets:
        pset = c_pts | set(restored_pts)
        for restored_lns in line_subsets:
            idxs = base_idxs + list(restored_lns)
            traces = [line_sets[j] & pset for j in idxs]
            assert all(traces), "every trace keeps at least the two mid points"
            # containment in the plane: each line is a full plane-line trace
            assert all(
                traces[k] == line_sets[idxs[k]] & pset for k in range(len(idxs))
            )
            # containment of C: each line of C is the trace of some line
            if not all(
                any(trace & c_pts == cl for trace in traces) for cl in c_lines
            ):
                continue
            pmap = {old: new for new, old in enumerate(sorted(pset))}
            system = new_system(
                len(pset), [sorted(pmap[x] for x in tr) for tr in traces]
            )
            packing = two_packing_number(system)
            assert packing.proven_optimal
            if packing.optimum != 4:
                continue
            key = canonical_form(system, max_nodes)
            if key in seen:
                continue
            seen.add(key)
            members.append(
                C44Member(
                    system,
                    tuple(restored_pts),
                    tuple(restored_lns),
                    tuple(plab.point_labels[i] for i in restored_pts),
                    tuple(plab.line_labels[j] for j in restored_lns),
                )
            )
    return members


def pad_uniform(s: LinearSystem, r: int) -> tuple[LinearSystem, PaddingRecord]:
    """Append fresh degree-1 points to every line of a uniform system.

    The base must be r0-uniform with r0 <= r; each line gains r - r0 new
    points, numbered consecutively from the old point count in line
    order.  Stripping low-degree points undoes the padding.
    """
    r0 = uniformity(s)
    if r0 is None:
        raise NotUniformError("padding needs a uniform base system")
    if r < r0:
        raise InvalidParameterError(f"target size {r} below line size {r0}")
    k = r - r0
    fresh = s.num_points
    new_lines: list[tuple[int, ...]] = []
    added: list[tuple[int, ...]] = []
    for line in s.lines:
        extra = tuple(range(fresh, fresh + k))
        fresh += k
        new_lines.append(line + extra)
        added.append(extra)
    padded = _make(fresh, new_lines)
    assert padded.lines == tuple(new_lines), "padding preserves line order"
    return padded, PaddingRecord(s, r, tuple(added))


def matching(m: int, r: int) -> LinearSystem:
    """m pairwise-disjoint lines of size r."""
    if m < 1 or r < 2:
        raise InvalidParameterError(f"need m >= 1 and r >= 2, got {m}, {r}")
    lines = [tuple(range(i * r, (i + 1) * r)) for i in range(m)]
    return _make(m * r, lines)


def star(k: int, r: int) -> LinearSystem:
    """k lines of size r through the single common point 0."""
    if k < 1 or r < 2:
        raise InvalidParameterError(f"need k >= 1 and r >= 2, got {k}, {r}")
    lines = []
    for i in range(k):
        first = 1 + i * (r - 1)
        lines.append((0,) + tuple(range(first, first + r - 1)))
    return _make(1 + k * (r - 1), lines)


def random_linear_system(
    num_points: int,
    num_lines: int,
    size_range: tuple[int, int],
    seed: int,
    max_attempts: int | None = None,
) -> LinearSystem:
    """Sample a random system by rejection, reproducibly for a fixed seed.

    Each attempt draws a line size uniformly from size_range and a random
    point subset of that size; the line is kept if it is new and meets
    every kept line in at most one point.  Raises GenerationExhausted
    when the attempt budget runs out before num_lines lines are placed.
    """
    lo, hi = size_range
    if lo < 1 or lo > hi:
        raise InvalidParameterError(f"bad size range {size_range}")
    if num_points < 0 or num_lines < 0:
        raise InvalidParameterError("counts must be non-negative")
    if num_lines > 0 and num_points < lo:
        raise InvalidParameterError("not enough points for even one line")
    if max_attempts is None:
        max_attempts = 1000 * max(1, num_lines)
    rng = random.Random(seed)
    chosen: list[frozenset[int]] = []
    attempts = 0
    while len(chosen) < num_lines:
        if attempts >= max_attempts:
            raise GenerationExhausted(
                f"placed {len(chosen)} of {num_lines} lines "
                f"after {attempts} attempts"
            )
        attempts += 1
        size = rng.randint(lo, hi)
        if size > num_points:
            continue
        cand = frozenset(rng.sample(range(num_points), size))
        if cand in chosen:
            continue
        if all(len(cand & old) <= 1 for old in chosen):
            chosen.append(cand)
    return _make(num_points, chosen)
