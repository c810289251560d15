"""Exact solvers against the brute-force oracles and known optima."""

import pytest

from linesys.constructions import (
    build_cnn,
    matching,
    projective_plane,
    random_linear_system,
    star,
)
from linesys.core import new_system
from linesys.solvers import (
    PreconditionError,
    SearchBudget,
    TooLargeError,
    brute_force_nu2,
    brute_force_tau,
    degree_two_cover,
    greedy_transversal,
    transversal_number,
    two_packing_number,
)

HEXAGON = new_system(6, [[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [0, 5]])
TRIANGLE = new_system(3, [[0, 1], [0, 2], [1, 2]])


def is_transversal(s, points):
    chosen = set(points)
    return all(chosen & set(line) for line in s.lines)


def is_two_packing(s, line_idxs):
    use = [0] * s.num_points
    for j in line_idxs:
        for p in s.lines[j]:
            use[p] += 1
    return all(u <= 2 for u in use)


@pytest.mark.parametrize(
    "system,tau,nu2",
    [
        (new_system(3, [[0, 1, 2]]), 1, 1),
        (TRIANGLE, 2, 3),
        (HEXAGON, 3, 6),
        (matching(3, 3), 3, 3),
        (star(5, 3), 1, 2),
    ],
)
def test_known_optima(system, tau, nu2):
    t = transversal_number(system)
    p = two_packing_number(system)
    assert (t.optimum, t.proven_optimal) == (tau, True)
    assert (p.optimum, p.proven_optimal) == (nu2, True)
    assert is_transversal(system, t.witness) and len(t.witness) == tau
    assert is_two_packing(system, p.witness) and len(p.witness) == nu2


def test_fano_golden():
    s, _ = projective_plane(2)
    t = transversal_number(s)
    p = two_packing_number(s)
    assert (t.optimum, t.witness) == (3, (0, 1, 2))
    assert (p.optimum, p.witness) == (4, (0, 1, 3, 6))


def test_empty_system():
    s = new_system(4, [])
    assert transversal_number(s).optimum == 0
    assert two_packing_number(s).optimum == 0


def test_witnesses_are_lexicographically_least():
    for seed in range(40, 60):
        s = random_linear_system(9, 6, (2, 3), seed=seed)
        t = transversal_number(s)
        p = two_packing_number(s)
        assert t.witness == brute_force_tau(s).witness
        assert p.witness == brute_force_nu2(s).witness


def test_oracle_agreement_small_batch():
    for seed in range(200, 230):
        s = random_linear_system(7 + seed % 4, 3 + seed % 4, (2, 3), seed=seed)
        assert transversal_number(s).optimum == brute_force_tau(s).optimum
        assert two_packing_number(s).optimum == brute_force_nu2(s).optimum


def test_greedy_is_a_transversal():
    for seed in (3, 14, 15, 92):
        s = random_linear_system(10, 7, (2, 4), seed=seed)
        g = greedy_transversal(s)
        assert is_transversal(s, g)
        assert len(g) >= transversal_number(s).optimum


def test_budget_exhaustion_is_reported():
    s, _ = build_cnn(5)
    t = transversal_number(s, SearchBudget(max_nodes=3))
    assert not t.proven_optimal
    assert is_transversal(s, t.witness)
    p = two_packing_number(s, SearchBudget(max_nodes=3))
    assert not p.proven_optimal
    assert is_two_packing(s, p.witness)


def test_tight_coverage_bound_can_close_fast():
    # 13 pairwise-meeting lines with max degree 4 force ceil(13/4) = 4
    # at the root, so even a tiny budget suffices here
    s, _ = projective_plane(3)
    t = transversal_number(s, SearchBudget(max_nodes=5))
    assert t.optimum == 4
    assert t.proven_optimal


def test_deterministic_repeat():
    s, _ = build_cnn(5)
    assert transversal_number(s) == transversal_number(s)
    assert two_packing_number(s) == two_packing_number(s)


def test_nondeterministic_mode_same_optimum():
    s, _ = build_cnn(3)
    fast = transversal_number(s, SearchBudget(deterministic=False))
    assert fast.optimum == 4
    assert fast.proven_optimal
    assert is_transversal(s, fast.witness)


def test_oracle_size_caps():
    big = matching(7, 3)  # 21 points
    with pytest.raises(TooLargeError):
        brute_force_tau(big)
    with pytest.raises(TooLargeError):
        brute_force_nu2(big)


class TestDegreeTwoCover:
    def test_hexagon(self):
        out = degree_two_cover(HEXAGON)
        assert len(out.cover) == 3
        assert is_transversal(HEXAGON, out.cover)
        # every leftover line is covered but holds no anchor
        anchors = set(out.anchors)
        for j in out.leftover_lines:
            assert not anchors & set(HEXAGON.lines[j])

    def test_triangle(self):
        out = degree_two_cover(TRIANGLE)
        assert len(out.cover) == 2  # nu2 - 1, the tight case

    def test_requires_max_degree_two(self):
        s, _ = projective_plane(2)
        with pytest.raises(PreconditionError):
            degree_two_cover(s)

    def test_cover_size_is_lines_minus_anchors(self):
        for seed in (11, 12, 13):
            s = random_linear_system(10, 5, (2, 3), seed=seed)
            from linesys.core import degree_profile

            if degree_profile(s).max_degree != 2:
                continue
            out = degree_two_cover(s)
            assert len(out.cover) == s.num_lines - len(out.anchors)
            assert is_transversal(s, out.cover)
