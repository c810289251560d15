"""Canonical forms and isomorphism of linear systems.

Two systems are considered isomorphic when, after stripping points of
degree 0 or 1 from both, some bijection of the surviving points carries
one line family onto the other.  The stripping is a single simultaneous
deletion; if several pendant lines collapse onto the same point set they
are kept as repeated lines, since the comparison is between line
families and multiplicity matters (a triple star and a triple matching
must not be identified).

The canonical form of a system is the lexicographically least relabeled
line list of its stripped version, over all point bijections.  It is
found by colour refinement (points and lines refine each other until
stable) plus backtracking: when the colouring is not discrete, each
point of the first smallest non-singleton colour class is individualised
in turn and the least leaf code wins.  Equal canonical forms are
equivalent to isomorphism.

The search is budgeted; exceeding the node budget raises
SearchBudgetExceeded and never returns a wrong answer.
"""

from __future__ import annotations

from .core import LinearSystem, LinearSystemError
from .files import render_instance

DEFAULT_MAX_NODES = 200_000

_STRIP_DEGREE = 1


class SearchBudgetExceeded(LinearSystemError):
    """The canonical labeling search hit its node budget."""


def _strip_low_degree(s: LinearSystem) -> tuple[int, list[tuple[int, ...]]]:
    """One simultaneous deletion of all degree-<=1 points.

    Returns the surviving point count and the relabeled line family, with
    repeated lines preserved and empty lines dropped.
    """
    deg = [0] * s.num_points
    for line in s.lines:
        for p in line:
            deg[p] += 1
    survivors = [p for p in range(s.num_points) if deg[p] > _STRIP_DEGREE]
    relabel = {old: new for new, old in enumerate(survivors)}
    lines = []
    for line in s.lines:
        rest = tuple(sorted(relabel[p] for p in line if p in relabel))
        if rest:
            lines.append(rest)
    return len(survivors), lines


def _refine(
    lines: list[tuple[int, ...]],
    incidence: list[list[int]],
    colors: list[int],
) -> list[int]:
    """Propagate colours between points and lines until stable.

    Colour ids are ranks of sorted signatures, so they depend only on the
    isomorphism class of the coloured system, never on input labels.
    """
    while True:
        line_sigs = [
            (len(l), tuple(sorted(colors[p] for p in l))) for l in lines
        ]
        line_rank = {sig: i for i, sig in enumerate(sorted(set(line_sigs)))}
        line_colors = [line_rank[sig] for sig in line_sigs]
        point_sigs = [
            (colors[p], tuple(sorted(line_colors[j] for j in incidence[p])))
            for p in range(len(colors))
        ]
        point_rank = {sig: i for i, sig in enumerate(sorted(set(point_sigs)))}
        new = [point_rank[sig] for sig in point_sigs]
        if new == colors:
            return colors
        colors = new


def _individualize(colors: list[int], v: int) -> list[int]:
    """Give point v a fresh colour sorting before its old classmates."""
    sigs = [(c, 0 if i == v else 1) for i, c in enumerate(colors)]
    rank = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
    return [rank[sig] for sig in sigs]


def _canonical_code(
    num_points: int,
    lines: list[tuple[int, ...]],
    max_nodes: int,
) -> tuple[tuple[int, ...], ...]:
    """Least relabeled line list over all point bijections."""
    if num_points == 0:
        return ()
    incidence: list[list[int]] = [[] for _ in range(num_points)]
    for j, line in enumerate(lines):
        for p in line:
            incidence[p].append(j)

    best: list[tuple[tuple[int, ...], ...] | None] = [None]
    nodes = [0]

    def search(colors: list[int]) -> None:
        nodes[0] += 1
        if nodes[0] > max_nodes:
            raise SearchBudgetExceeded(
                f"canonical labeling exceeded {max_nodes} nodes"
            )
        colors = _refine(lines, incidence, colors)
        cells: dict[int, list[int]] = {}
        for p, c in enumerate(colors):
            cells.setdefault(c, []).append(p)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                if target is None or len(cells[c]) < len(cells[target]):
                    target = c
        if target is None:
            code = tuple(sorted(tuple(sorted(colors[p] for p in l)) for l in lines))
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        for v in cells[target]:
            search(_individualize(colors, v))

    search([0] * num_points)
    assert best[0] is not None
    return best[0]


def canonical_form(s: LinearSystem, max_nodes: int = DEFAULT_MAX_NODES) -> bytes:
    """Canonical encoding of the stripped system, as instance-format bytes.

    Two systems have equal encodings exactly when they are isomorphic (in
    the strip-then-compare sense above).  Note the encoding can contain
    repeated lines when pendant lines collapsed, in which case it is not
    itself a loadable instance file.
    """
    n, lines = _strip_low_degree(s)
    code = _canonical_code(n, lines, max_nodes)
    return render_instance(n, code).encode()


def is_isomorphic(
    a: LinearSystem, b: LinearSystem, max_nodes: int = DEFAULT_MAX_NODES
) -> bool:
    """Decide isomorphism after stripping low-degree points from both.

    May raise SearchBudgetExceeded (undecided), never a wrong answer.
    """
    na, la = _strip_low_degree(a)
    nb, lb = _strip_low_degree(b)
    if na != nb or sorted(map(len, la)) != sorted(map(len, lb)):
        return False
    if _degree_multiset(na, la) != _degree_multiset(nb, lb):
        return False
    return _canonical_code(na, la, max_nodes) == _canonical_code(nb, lb, max_nodes)


def _degree_multiset(n: int, lines: list[tuple[int, ...]]) -> list[int]:
    deg = [0] * n
    for line in lines:
        for p in line:
            deg[p] += 1
    return sorted(deg)
