"""Inequality checks linking the transversal number, the 2-packing
number and the size ratio, with exact rational arithmetic throughout.

Every check turns into CheckEntry rows (name, lhs, relation, rhs,
status).  Status is "pass" when the stated relation holds, "equality"
when it holds with lhs equal to rhs, "fail" otherwise, and
"skipped-precondition" when the check does not apply to the instance.
A check is only evaluated against proven optimal values; when a solver
budget runs out the affected rows are emitted as skipped with the
unproven flag, so an unproven input can never produce a fail.

Rows produced by the experimental refined degree-2 bound carry
``experimental=True`` and are excluded from suite pass/fail accounting.

No floating point is used anywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (
    LinearSystem,
    LinearSystemError,
    NotUniformError,
    degree_profile,
    uniformity,
)
from .solvers import (
    PreconditionError,
    SearchBudget,
    SolveResult,
    degree_two_cover,
    transversal_number,
    two_packing_number,
)

Number = Fraction | int


class UnprovenInputError(LinearSystemError):
    """A check was invoked with a solver result that is not proven."""


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    EQUALITY = "equality"
    SKIPPED = "skipped-precondition"


@dataclass(frozen=True)
class CheckEntry:
    name: str
    lhs: Number | None
    relation: str
    rhs: Number | None
    status: CheckStatus
    experimental: bool = False
    unproven: bool = False
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status in (CheckStatus.PASS, CheckStatus.EQUALITY)

    def to_jsonable(self) -> dict:
        return {
            "name": self.name,
            "lhs": _fmt(self.lhs),
            "relation": self.relation,
            "rhs": _fmt(self.rhs),
            "status": self.status.value,
            "experimental": self.experimental,
            "unproven": self.unproven,
            "note": self.note,
        }


@dataclass(frozen=True)
class InstanceSummary:
    name: str
    num_points: int
    num_lines: int
    line_size: int | None
    max_degree: int
    tau: int | None
    nu2: int | None
    tau_proven: bool
    nu2_proven: bool

    def to_jsonable(self) -> dict:
        return {
            "name": self.name,
            "points": self.num_points,
            "lines": self.num_lines,
            "line_size": self.line_size,
            "max_degree": self.max_degree,
            "tau": self.tau,
            "nu2": self.nu2,
            "tau_proven": self.tau_proven,
            "nu2_proven": self.nu2_proven,
        }


@dataclass(frozen=True)
class CheckReport:
    summary: InstanceSummary
    entries: tuple[CheckEntry, ...]

    def failures(self) -> list[CheckEntry]:
        return [
            e
            for e in self.entries
            if e.status is CheckStatus.FAIL and not e.experimental
        ]

    def has_unproven(self) -> bool:
        return any(e.unproven for e in self.entries)

    def to_jsonable(self) -> dict:
        return {
            "summary": self.summary.to_jsonable(),
            "checks": [e.to_jsonable() for e in self.entries],
        }


@dataclass(frozen=True)
class SuiteReport:
    reports: tuple[CheckReport, ...]

    @property
    def any_fail(self) -> bool:
        return any(r.failures() for r in self.reports)

    @property
    def any_unproven(self) -> bool:
        return any(r.has_unproven() for r in self.reports)

    def exit_code(self) -> int:
        if self.any_fail:
            return 1
        if self.any_unproven:
            return 3
        return 0

    def to_jsonable(self) -> dict:
        return {"instances": [r.to_jsonable() for r in self.reports]}

    def render_text(self) -> str:
        out: list[str] = []
        tallies = {status: 0 for status in CheckStatus}
        for rep in self.reports:
            s = rep.summary
            out.append(
                f"instance {s.name}: points={s.num_points} lines={s.num_lines}"
                f" line_size={_fmt(s.line_size)} max_degree={s.max_degree}"
                f" tau={_fmt(s.tau)}{'' if s.tau_proven else '?'}"
                f" nu2={_fmt(s.nu2)}{'' if s.nu2_proven else '?'}"
            )
            for e in rep.entries:
                tallies[e.status] += 1
                flags = "".join(
                    [" (experimental)" if e.experimental else "",
                     " (unproven)" if e.unproven else ""]
                )
                if e.status is CheckStatus.SKIPPED:
                    body = e.note or "precondition not met"
                else:
                    body = f"{_fmt(e.lhs)} {e.relation} {_fmt(e.rhs)}"
                out.append(f"  [{e.status.value}] {e.name}: {body}{flags}")
        out.append(
            "total: "
            + " ".join(f"{st.value}={n}" for st, n in tallies.items())
            + f" instances={len(self.reports)}"
        )
        return "\n".join(out) + "\n"


def _fmt(x: Number | None) -> str:
    if x is None:
        return "-"
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _entry(
    name: str,
    lhs: Number,
    relation: str,
    rhs: Number,
    *,
    experimental: bool = False,
    note: str = "",
) -> CheckEntry:
    lhs = Fraction(lhs)
    rhs = Fraction(rhs)
    if relation == "<=":
        ok = lhs <= rhs
    elif relation == "<":
        ok = lhs < rhs
    elif relation == "==":
        ok = lhs == rhs
    else:
        raise ValueError(f"unknown relation {relation!r}")
    if not ok:
        status = CheckStatus.FAIL
    elif lhs == rhs:
        status = CheckStatus.EQUALITY
    else:
        status = CheckStatus.PASS
    return CheckEntry(name, lhs, relation, rhs, status,
                      experimental=experimental, note=note)


def _skip(
    name: str, note: str, *, experimental: bool = False, unproven: bool = False
) -> CheckEntry:
    return CheckEntry(
        name, None, "", None, CheckStatus.SKIPPED,
        experimental=experimental, unproven=unproven, note=note,
    )


def _require_proven(*results: SolveResult) -> None:
    for r in results:
        if not r.proven_optimal:
            raise UnprovenInputError(
                "checks need proven optimal values; re-run with a larger budget"
            )


def points_lines_ratio(s: LinearSystem) -> Fraction:
    """(points + lines) / (line size + 1) for a uniform system, exact."""
    r = uniformity(s)
    if r is None:
        raise NotUniformError("the ratio needs a uniform system")
    return Fraction(s.num_points + s.num_lines, r + 1)


def check_packing_bounds(
    s: LinearSystem, tau: SolveResult, nu2: SolveResult
) -> list[CheckEntry]:
    """ceil(nu2/2) <= tau and tau <= nu2*(nu2-1)/2.

    The upper bound presumes the non-degenerate shapes studied here; it
    is honestly reported as fail on a single line or two disjoint lines.
    """
    _require_proven(tau, nu2)
    v = nu2.optimum
    return [
        _entry("packing_lower", -(-v // 2), "<=", tau.optimum),
        _entry("packing_upper", tau.optimum, "<=", Fraction(v * (v - 1), 2)),
    ]


def check_ratio_bound(
    s: LinearSystem, tau: SolveResult, nu2: SolveResult
) -> list[CheckEntry]:
    """tau <= (points+lines)/(r+1); strict when nu2 is 2 or 3 and the
    system has more lines than nu2."""
    _require_proven(tau, nu2)
    ratio = points_lines_ratio(s)
    entries = [_entry("ratio_upper", tau.optimum, "<=", ratio)]
    if nu2.optimum in (2, 3) and s.num_lines > nu2.optimum:
        entries.append(_entry("ratio_upper_strict", tau.optimum, "<", ratio))
    else:
        entries.append(
            _skip("ratio_upper_strict", "needs nu2 in {2,3} and more lines than nu2")
        )
    return entries


def check_degree_two(
    s: LinearSystem, tau: SolveResult, nu2: SolveResult
) -> list[CheckEntry]:
    """The chain of consequences for systems of maximum degree 2.

    Every line set is a 2-packing, so nu2 equals the line count; the
    structured cover witnesses tau <= nu2 - 1; with no leftover lines
    (at most one) tau hits the lower bound, with the maximum possible
    leftover it hits nu2 - 1.  For uniform systems the ratio dominates
    tau, and with no isolated points the floor of the ratio sits between
    the two ends of the chain.
    """
    _require_proven(tau, nu2)
    profile = degree_profile(s)
    if profile.max_degree != 2:
        raise PreconditionError(f"max degree is {profile.max_degree}, need 2")
    v = nu2.optimum
    m = s.num_lines
    cover = degree_two_cover(s)
    entries = [
        _entry("degree_two_lines", v, "==", m),
        _entry("degree_two_upper", tau.optimum, "<=", v - 1),
        _entry("degree_two_cover_size", len(cover.cover), "==", m - len(cover.anchors)),
        _entry("degree_two_cover_bound", tau.optimum, "<=", len(cover.cover)),
    ]
    leftovers = len(cover.leftover_lines)
    if leftovers <= 1:
        entries.append(_entry("degree_two_tight_low", tau.optimum, "==", -(-v // 2)))
    else:
        entries.append(
            _skip("degree_two_tight_low", f"{leftovers} leftover lines, need <= 1")
        )
    if leftovers == v - 2:
        entries.append(_entry("degree_two_tight_high", tau.optimum, "==", v - 1))
    else:
        entries.append(
            _skip("degree_two_tight_high",
                  f"{leftovers} leftover lines, need exactly {v - 2}")
        )
    r = uniformity(s)
    if r is None:
        entries.append(_skip("degree_two_ratio", "not uniform"))
        entries.append(_skip("degree_two_floor_low", "not uniform"))
        entries.append(_skip("degree_two_floor_high", "not uniform"))
        return entries
    ratio = points_lines_ratio(s)
    entries.append(_entry("degree_two_ratio", tau.optimum, "<=", ratio))
    if 0 in profile.degrees:
        note = "isolated points inflate the ratio"
        entries.append(_skip("degree_two_floor_low", note))
        entries.append(_skip("degree_two_floor_high", note))
    else:
        fl = math.floor(ratio)
        entries.append(_entry("degree_two_floor_low", -(-v // 2), "<=", fl))
        entries.append(_entry("degree_two_floor_high", fl, "<=", v - 1))
    return entries


def check_degree_two_refined(
    s: LinearSystem, tau: SolveResult
) -> list[CheckEntry]:
    """Experimental sharpening for uniform odd line size and max degree
    at most 2: r(r^2-3)*tau against (r-2)(r+1)*points + (r-1)^2*lines
    plus a constant.

    With the constant r-1 the bound fails on disconnected instances (two
    disjoint 3-lines already break it), so a second row scales the
    constant by the number of line-containing connected components.
    Both rows are experimental and never affect suite pass/fail.
    """
    _require_proven(tau)
    r = uniformity(s)
    if r is None:
        raise NotUniformError("refined bound needs a uniform system")
    if r < 3 or r % 2 == 0:
        raise PreconditionError(f"line size must be odd and >= 3, got {r}")
    if degree_profile(s).max_degree > 2:
        raise PreconditionError("max degree must be at most 2")
    lhs = r * (r * r - 3) * tau.optimum
    base = (r - 2) * (r + 1) * s.num_points + (r - 1) ** 2 * s.num_lines
    c = _line_components(s)
    return [
        _entry("refined_degree_two", lhs, "<=", base + (r - 1), experimental=True),
        _entry(
            "refined_degree_two_componentwise",
            lhs, "<=", base + c * (r - 1),
            experimental=True,
            note=f"{c} line-containing components",
        ),
    ]


def _line_components(s: LinearSystem) -> int:
    """Connected components of the incidence structure that contain at
    least one line (isolated points do not count)."""
    parent = list(range(s.num_points))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for line in s.lines:
        root = find(line[0])
        for p in line[1:]:
            parent[find(p)] = root
    return len({find(line[0]) for line in s.lines})


def check_bounded_packing(
    s: LinearSystem, tau: SolveResult, nu2: SolveResult
) -> list[CheckEntry]:
    """When nu2 - 1 is at most the line size: ceil(nu2/2) <= ratio, and
    tau <= ratio whenever tau achieves the packing lower bound."""
    _require_proven(tau, nu2)
    r = uniformity(s)
    if r is None:
        raise NotUniformError("needs a uniform system")
    if nu2.optimum - 1 > r:
        raise PreconditionError(f"needs nu2 - 1 <= {r}, got nu2 = {nu2.optimum}")
    ratio = points_lines_ratio(s)
    half = -(-nu2.optimum // 2)
    entries = [_entry("bounded_packing_lower", half, "<=", ratio)]
    if tau.optimum == half:
        entries.append(_entry("bounded_packing_tau", tau.optimum, "<=", ratio))
    else:
        entries.append(
            _skip("bounded_packing_tau", "tau is above the packing lower bound")
        )
    return entries


def check_high_degree(
    s: LinearSystem, tau: SolveResult, nu2: SolveResult
) -> list[CheckEntry]:
    """When some point has degree at least nu2 - 1: nu2 - 1 <= ratio,
    and tau <= ratio whenever tau <= nu2 - 1."""
    _require_proven(tau, nu2)
    r = uniformity(s)
    if r is None:
        raise NotUniformError("needs a uniform system")
    delta = degree_profile(s).max_degree
    if delta < nu2.optimum - 1:
        raise PreconditionError(
            f"needs max degree >= nu2 - 1 = {nu2.optimum - 1}, got {delta}"
        )
    ratio = points_lines_ratio(s)
    entries = [_entry("high_degree_lower", nu2.optimum - 1, "<=", ratio)]
    if tau.optimum <= nu2.optimum - 1:
        entries.append(_entry("high_degree_tau", tau.optimum, "<=", ratio))
    else:
        entries.append(_skip("high_degree_tau", "tau exceeds nu2 - 1"))
    return entries


_CHECK_NAMES = (
    "packing_bounds",
    "ratio_bound",
    "degree_two",
    "degree_two_refined",
    "bounded_packing",
    "high_degree",
)


def evaluate_instance(
    name: str, s: LinearSystem, budget: SearchBudget | None = None
) -> CheckReport:
    """Solve both optima and run every applicable check on one instance."""
    budget = budget or SearchBudget()
    tau = transversal_number(s, budget)
    nu2 = two_packing_number(s, budget)
    r = uniformity(s)
    profile = degree_profile(s)
    summary = InstanceSummary(
        name, s.num_points, s.num_lines, r, profile.max_degree,
        tau.optimum, nu2.optimum, tau.proven_optimal, nu2.proven_optimal,
    )
    if not (tau.proven_optimal and nu2.proven_optimal):
        entries = [
            _skip(check, "solver budget exhausted; values unproven", unproven=True)
            for check in _CHECK_NAMES
        ]
        return CheckReport(summary, tuple(entries))

    entries: list[CheckEntry] = []
    entries += check_packing_bounds(s, tau, nu2)
    if r is not None:
        entries += check_ratio_bound(s, tau, nu2)
    else:
        entries.append(_skip("ratio_upper", "not uniform"))
    if profile.max_degree == 2:
        entries += check_degree_two(s, tau, nu2)
    else:
        entries.append(_skip("degree_two", f"max degree {profile.max_degree}"))
    if r is not None and r >= 3 and r % 2 == 1 and profile.max_degree <= 2:
        entries += check_degree_two_refined(s, tau)
    else:
        entries.append(
            _skip("refined_degree_two", "needs odd uniform size and max degree <= 2",
                  experimental=True)
        )
    if r is not None and nu2.optimum - 1 <= r:
        entries += check_bounded_packing(s, tau, nu2)
    else:
        entries.append(_skip("bounded_packing_lower", "nu2 - 1 exceeds line size"))
    if r is not None and profile.max_degree >= nu2.optimum - 1:
        entries += check_high_degree(s, tau, nu2)
    else:
        entries.append(_skip("high_degree_lower", "max degree below nu2 - 1"))
    return CheckReport(summary, tuple(entries))


def run_suite(
    instances: Iterable[tuple[str, LinearSystem]],
    budget: SearchBudget | None = None,
) -> SuiteReport:
    return SuiteReport(
        tuple(evaluate_instance(name, s, budget) for name, s in instances)
    )


# ---------------------------------------------------------------------------
# instance families for the suite


def cnn_family(ns: Sequence[int]) -> list[tuple[str, LinearSystem]]:
    from .constructions import build_cnn

    return [(f"cnn_{n}", build_cnn(n)[0]) for n in ns]


def plane_family(orders: Sequence[int]) -> list[tuple[str, LinearSystem]]:
    from .constructions import projective_plane

    return [(f"plane_{q}", projective_plane(q)[0]) for q in orders]


def c44_family() -> list[tuple[str, LinearSystem]]:
    from .constructions import enumerate_c44

    return [
        (f"c44_{i}", member.system)
        for i, member in enumerate(enumerate_c44())
    ]


def random_family(
    count: int, base_seed: int = 1
) -> list[tuple[str, LinearSystem]]:
    """Reproducible random corpus: instance i uses seed base_seed + i - 1.

    Point and line counts and the size range are derived from the seed by
    fixed formulas (at most 12 points and 12 lines); when a parameter set
    is too tight to realise, the line count is lowered deterministically
    until sampling succeeds.
    """
    from .constructions import GenerationExhausted, random_linear_system

    out: list[tuple[str, LinearSystem]] = []
    for i in range(count):
        seed = base_seed + i
        num_points = 4 + seed % 9
        num_lines = 3 + (seed // 3) % 10
        sizes = [(2, 2), (2, 3), (3, 3), (2, 4)][seed % 4]
        # greedy acceptance can wedge tight parameter sets (a 4-line on 4
        # points blocks every later 2-line), so fall back to a loose range
        if sizes == (3, 3) and num_points < 7:
            sizes = (2, 3)
        if sizes == (2, 4) and num_points < 5:
            sizes = (2, 3)
        while True:
            try:
                s = random_linear_system(num_points, num_lines, sizes, seed)
                break
            except GenerationExhausted:
                num_lines -= 1
                if num_lines < 3:
                    raise
        out.append((f"random_{seed}", s))
    return out


def file_family(paths: Sequence[str]) -> list[tuple[str, LinearSystem]]:
    from .files import read_instance

    return [(str(p), read_instance(p)) for p in paths]
