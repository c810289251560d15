"""Exact solvers for the transversal and 2-packing numbers.

The transversal number is the least number of points meeting every line;
the 2-packing number is the largest number of lines no point of which
lies on three of them.  Both are computed by budgeted branch and bound
over bitmask representations:

* transversal: branch on the points of an uncovered line of least size,
  pruned by a greedy count of pairwise-disjoint uncovered lines and a
  coverage-arithmetic bound, warm-started by the greedy transversal;
* 2-packing: depth-first over the lines in index order (include first),
  pruned by current size plus the number of still-addable lines.

In deterministic mode (the default) the returned witness is the
lexicographically least optimal one.  When the node budget runs out the
best incumbent is returned with proven_optimal False; that answer is
still a feasible witness and a valid bound, just not a proven optimum.

``brute_force_tau`` and ``brute_force_nu2`` are deliberately independent
oracles: plain subset enumeration in size order, sharing no search code
with the branch-and-bound paths, and refusing instances beyond small
hard caps.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import LinearSystem, LinearSystemError, degree_profile

DEFAULT_MAX_NODES = 2_000_000

_ORACLE_MAX_POINTS = 20
_ORACLE_MAX_LINES = 20


class TooLargeError(LinearSystemError):
    """The instance exceeds the brute-force oracle's hard caps."""


class PreconditionError(LinearSystemError):
    """The operation's structural precondition does not hold."""


@dataclass(frozen=True)
class SearchBudget:
    """Limits and mode for one solver call.

    ``max_nodes`` caps the number of search-tree nodes across all phases
    of the call.  ``deterministic`` asks for the lexicographically least
    optimal witness; switching it off skips that extraction and returns
    an arbitrary optimal witness (the run is still reproducible).
    """

    max_nodes: int = DEFAULT_MAX_NODES
    deterministic: bool = True


@dataclass(frozen=True)
class SolveResult:
    optimum: int
    witness: tuple[int, ...]
    nodes_explored: int
    proven_optimal: bool


@dataclass(frozen=True)
class DegreeTwoCover:
    """The structured transversal built from a maximum independent set of
    degree-2 points.

    ``anchors`` is a maximum set of pairwise non-adjacent degree-2 points
    (lexicographically least such set), ``leftover_lines`` the indices of
    lines through no anchor, and ``cover`` the anchors plus the least
    point of each leftover line.  The cover is always a transversal of
    size num_lines - len(anchors).
    """

    cover: tuple[int, ...]
    anchors: tuple[int, ...]
    leftover_lines: tuple[int, ...]


class _BudgetHit(Exception):
    pass


class _Counter:
    __slots__ = ("nodes", "cap")

    def __init__(self, cap: int):
        self.nodes = 0
        self.cap = cap

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.cap:
            raise _BudgetHit


def greedy_transversal(s: LinearSystem) -> tuple[int, ...]:
    """Pick the point on the most uncovered lines until all are covered.

    Ties go to the least point index, so the result is deterministic.
    """
    uncovered = set(range(s.num_lines))
    chosen: list[int] = []
    while uncovered:
        counts = [0] * s.num_points
        for j in uncovered:
            for p in s.lines[j]:
                counts[p] += 1
        best = max(range(s.num_points), key=lambda p: (counts[p], -p))
        chosen.append(best)
        uncovered = {j for j in uncovered if best not in s.lines[j]}
    return tuple(sorted(chosen))


def transversal_number(
    s: LinearSystem, budget: SearchBudget | None = None
) -> SolveResult:
    budget = budget or SearchBudget()
    m = s.num_lines
    n = s.num_points
    if m == 0:
        return SolveResult(0, (), 0, True)
    pmask = [0] * m  # line -> point bitmask
    cover = [0] * n  # point -> line bitmask
    for j, line in enumerate(s.lines):
        for p in line:
            pmask[j] |= 1 << p
            cover[p] |= 1 << j
    all_lines = (1 << m) - 1
    order = sorted(range(m), key=lambda j: (len(s.lines[j]), j))

    def disjoint_bound(covered: int) -> int:
        used = 0
        count = 0
        for j in order:
            if covered >> j & 1:
                continue
            pm = pmask[j]
            if pm & used == 0:
                count += 1
                used |= pm
        return count

    counter = _Counter(budget.max_nodes)
    incumbent = greedy_transversal(s)
    best_size = len(incumbent)
    best = list(incumbent)
    chosen: list[int] = []

    def pick_line(covered: int) -> int:
        jstar = -1
        size = n + 1
        for j in range(m):
            if covered >> j & 1:
                continue
            lsize = len(s.lines[j])
            if lsize < size:
                size = lsize
                jstar = j
                if lsize == 1:
                    break
        return jstar

    def search(covered: int) -> None:
        nonlocal best_size, best
        counter.tick()
        if covered == all_lines:
            if len(chosen) < best_size:
                best_size = len(chosen)
                best = sorted(chosen)
            return
        bound = disjoint_bound(covered)
        if len(chosen) + bound >= best_size:
            return
        # second bound: each extra point covers at most max_hit lines
        uncovered_count = m - covered.bit_count()
        max_hit = max(
            (cover[p] & ~covered).bit_count() for p in range(n)
        )
        need = -(-uncovered_count // max_hit)
        if len(chosen) + need >= best_size:
            return
        j = pick_line(covered)
        for p in s.lines[j]:
            chosen.append(p)
            search(covered | cover[p])
            chosen.pop()

    try:
        search(0)
    except _BudgetHit:
        return SolveResult(best_size, tuple(best), counter.nodes, False)

    if not budget.deterministic:
        return SolveResult(best_size, tuple(best), counter.nodes, True)

    # Lexicographically least optimal witness: fix points one at a time,
    # each time checking that a completion with strictly larger points
    # exists.  An optimal transversal never contains a redundant point,
    # so candidates covering nothing new can be skipped.
    fixed: list[int] = []
    covered = 0
    try:
        floor = -1
        while len(fixed) < best_size:
            c = floor + 1
            while True:
                assert c < n
                if cover[c] & ~covered and _exists_completion(
                    s, cover, pmask, order, all_lines, counter,
                    covered | cover[c], best_size - len(fixed) - 1, c,
                ):
                    break
                c += 1
            fixed.append(c)
            covered |= cover[c]
            floor = c
        witness = tuple(fixed)
    except _BudgetHit:
        witness = tuple(best)  # value proven, lex extraction abandoned
    return SolveResult(best_size, witness, counter.nodes, True)


def _exists_completion(
    s: LinearSystem,
    cover: list[int],
    pmask: list[int],
    order: list[int],
    all_lines: int,
    counter: _Counter,
    covered: int,
    left: int,
    floor: int,
) -> bool:
    """Is there a transversal completion of size <= left using only
    points strictly above floor?"""
    counter.tick()
    if covered == all_lines:
        return True
    if left == 0:
        return False
    used = 0
    count = 0
    for j in order:
        if covered >> j & 1:
            continue
        if pmask[j] & used == 0:
            count += 1
            used |= pmask[j]
            if count > left:
                return False
    jstar = -1
    size = None
    for j in range(len(s.lines)):
        if covered >> j & 1:
            continue
        if size is None or len(s.lines[j]) < size:
            size = len(s.lines[j])
            jstar = j
    for p in s.lines[jstar]:
        if p > floor and _exists_completion(
            s, cover, pmask, order, all_lines, counter,
            covered | cover[p], left - 1, floor,
        ):
            return True
    return False


def two_packing_number(
    s: LinearSystem, budget: SearchBudget | None = None
) -> SolveResult:
    budget = budget or SearchBudget()
    m = s.num_lines
    if m == 0:
        return SolveResult(0, (), 0, True)
    lines = s.lines
    usage = [0] * s.num_points

    def addable(j: int) -> bool:
        return all(usage[p] < 2 for p in lines[j])

    # greedy incumbent: scan in index order
    greedy: list[int] = []
    for j in range(m):
        if addable(j):
            greedy.append(j)
            for p in lines[j]:
                usage[p] += 1
    for j in greedy:
        for p in lines[j]:
            usage[p] -= 1

    counter = _Counter(budget.max_nodes)
    best_size = len(greedy)
    witness: list[int] | None = None
    fallback = list(greedy)
    chosen: list[int] = []

    def search(idx: int) -> None:
        nonlocal best_size, witness, fallback
        counter.tick()
        if idx == m:
            if len(chosen) > best_size:
                best_size = len(chosen)
                witness = list(chosen)
                fallback = witness
            elif len(chosen) == best_size and witness is None:
                witness = list(chosen)
            return
        feasible = sum(1 for j in range(idx, m) if addable(j))
        potential = len(chosen) + feasible
        if potential < best_size:
            return
        if potential == best_size and (witness is not None or not budget.deterministic):
            return
        if addable(idx):
            chosen.append(idx)
            for p in lines[idx]:
                usage[p] += 1
            search(idx + 1)
            for p in lines[idx]:
                usage[p] -= 1
            chosen.pop()
        search(idx + 1)

    try:
        search(0)
    except _BudgetHit:
        return SolveResult(
            len(fallback), tuple(fallback), counter.nodes, False
        )
    final = witness if witness is not None else fallback
    return SolveResult(best_size, tuple(final), counter.nodes, True)


def brute_force_tau(s: LinearSystem) -> SolveResult:
    """Oracle: try all point subsets in size order, smallest hit first."""
    if s.num_points > _ORACLE_MAX_POINTS or s.num_lines > _ORACLE_MAX_LINES:
        raise TooLargeError(
            f"oracle caps: {_ORACLE_MAX_POINTS} points, {_ORACLE_MAX_LINES} lines"
        )
    sets = s.line_sets()
    tried = 0
    for k in range(s.num_points + 1):
        for comb in combinations(range(s.num_points), k):
            tried += 1
            cset = set(comb)
            if all(line & cset for line in sets):
                return SolveResult(k, comb, tried, True)
    raise AssertionError("the full point set is always a transversal")


def brute_force_nu2(s: LinearSystem) -> SolveResult:
    """Oracle: try all line subsets from largest size down."""
    if s.num_points > _ORACLE_MAX_POINTS or s.num_lines > _ORACLE_MAX_LINES:
        raise TooLargeError(
            f"oracle caps: {_ORACLE_MAX_POINTS} points, {_ORACLE_MAX_LINES} lines"
        )
    tried = 0
    for k in range(s.num_lines, -1, -1):
        for comb in combinations(range(s.num_lines), k):
            tried += 1
            counts = [0] * s.num_points
            ok = True
            for j in comb:
                for p in s.lines[j]:
                    counts[p] += 1
                    if counts[p] > 2:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return SolveResult(k, comb, tried, True)
    raise AssertionError("the empty set is always a 2-packing")


def degree_two_cover(s: LinearSystem) -> DegreeTwoCover:
    """Build the structured transversal for a system of maximum degree 2.

    Anchors are a maximum independent set among the degree-2 points
    (independent means no two share a line), chosen lexicographically
    least; every line misses at most one anchor-free line per anchor, and
    the cover adds the least point of each anchor-free line.
    """
    profile = degree_profile(s)
    if profile.max_degree != 2:
        raise PreconditionError(
            f"maximum degree is {profile.max_degree}, need exactly 2"
        )
    doubles = [p for p in range(s.num_points) if profile.degrees[p] == 2]
    pos = {p: i for i, p in enumerate(doubles)}
    k = len(doubles)
    adj = [0] * k
    for line in s.lines:
        here = [pos[p] for p in line if p in pos]
        for a, b in combinations(here, 2):
            adj[a] |= 1 << b
            adj[b] |= 1 << a

    best_size = -1
    best: list[int] | None = None
    chosen: list[int] = []

    def search(i: int, banned: int) -> None:
        nonlocal best_size, best
        if i == k:
            if len(chosen) > best_size:
                best_size = len(chosen)
                best = list(chosen)
            return
        avail = sum(1 for j in range(i, k) if not banned >> j & 1)
        potential = len(chosen) + avail
        if potential < best_size or (potential == best_size and best is not None):
            return
        if not banned >> i & 1:
            chosen.append(i)
            search(i + 1, banned | adj[i] | 1 << i)
            chosen.pop()
        search(i + 1, banned)

    search(0, 0)
    assert best is not None
    anchors = [doubles[i] for i in best]
    anchor_set = set(anchors)
    leftover = [
        j for j, line in enumerate(s.lines) if not anchor_set & set(line)
    ]
    cover = sorted(anchor_set | {min(s.lines[j]) for j in leftover})
    assert len(cover) == s.num_lines - len(anchors)
    assert all(set(line) & set(cover) for line in s.lines)
    return DegreeTwoCover(tuple(cover), tuple(anchors), tuple(leftover))
