"""Instance generators: the cyclic family, planes, C and its relatives."""

from collections import Counter
from itertools import combinations

import pytest

from linesys.canon import is_isomorphic
from linesys.constructions import (
    GenerationExhausted,
    InvalidParameterError,
    NotATriangleError,
    PrimePowerNotSupported,
    build_c,
    build_cnn,
    delete_triangle,
    enumerate_c44,
    find_triangles,
    matching,
    pad_uniform,
    projective_plane,
    random_linear_system,
    star,
)
from linesys.core import degree_profile, is_intersecting, uniformity


class TestCnn:
    @pytest.mark.parametrize("n,points,lines", [(3, 8, 8), (5, 22, 14), (7, 44, 20)])
    def test_counts(self, n, points, lines):
        s, _ = build_cnn(n)
        assert s.num_points == points
        assert s.num_lines == lines
        assert uniformity(s) == n

    def test_degrees(self):
        s, _ = build_cnn(5)
        assert Counter(degree_profile(s).degrees) == {3: 20, 5: 2}

    def test_not_intersecting(self):
        # rows and diagonals with opposite offsets never meet
        for n in (3, 5):
            s, _ = build_cnn(n)
            assert not is_intersecting(s)

    def test_labeling_covers_everything(self):
        s, lab = build_cnn(3)
        assert lab.name == "cnn_3"
        assert len(lab.point_labels) == s.num_points
        assert len(lab.line_labels) == s.num_lines
        assert "p" in lab.point_labels and "q" in lab.point_labels

    def test_rejects_bad_n(self):
        with pytest.raises(InvalidParameterError):
            build_cnn(4)
        with pytest.raises(InvalidParameterError):
            build_cnn(1)


class TestProjectivePlane:
    @pytest.mark.parametrize("q", [2, 3, 5])
    def test_axioms(self, q):
        s, _ = projective_plane(q)
        n = q * q + q + 1
        assert s.num_points == n
        assert s.num_lines == n
        assert uniformity(s) == q + 1
        sets = [set(l) for l in s.lines]
        # two points determine exactly one line
        for a, b in combinations(range(n), 2):
            assert sum(1 for l in sets if a in l and b in l) == 1
        # two lines meet in exactly one point
        for x, y in combinations(sets, 2):
            assert len(x & y) == 1

    def test_general_position(self):
        # a quadrilateral: four points, no three on a common line
        s, _ = projective_plane(2)
        sets = [set(l) for l in s.lines]
        found = any(
            all(len(set(trio) & l) < 3 for trio in combinations(quad, 3) for l in sets)
            for quad in combinations(range(s.num_points), 4)
        )
        assert found

    def test_labels_are_coordinates(self):
        _, lab = projective_plane(2)
        assert lab.point_labels[0].startswith("(")
        assert lab.line_labels[0].startswith("[")

    def test_rejects_nonprime(self):
        with pytest.raises(PrimePowerNotSupported):
            projective_plane(4)
        with pytest.raises(InvalidParameterError):
            projective_plane(1)
        with pytest.raises(InvalidParameterError):
            projective_plane(6)


class TestTriangles:
    def test_fano_has_28(self):
        s, _ = projective_plane(2)
        assert len(find_triangles(s)) == 28

    def test_plane3_has_234(self):
        s, _ = projective_plane(3)
        assert len(find_triangles(s)) == 234

    def test_collinear_triples_excluded(self):
        s, _ = projective_plane(2)
        lines = set(s.lines)
        for t in find_triangles(s):
            assert t.points not in lines

    def test_delete_rejects_collinear(self):
        from linesys.constructions import Triangle

        s, _ = projective_plane(2)
        with pytest.raises(NotATriangleError, match="collinear"):
            delete_triangle(s, Triangle(s.lines[0], (0, 0, 0)))


class TestC:
    def test_shape(self):
        s, _ = build_c()
        assert s.num_points == 10
        assert s.num_lines == 10
        assert Counter(len(l) for l in s.lines) == {4: 4, 3: 6}
        assert Counter(degree_profile(s).degrees) == {3: 6, 4: 4}
        # lines that met at a removed vertex are now disjoint
        assert not is_intersecting(s)

    def test_is_a_triangle_deletion(self):
        p3, _ = projective_plane(3)
        c, _ = build_c()
        t = find_triangles(p3)[0]
        assert is_isomorphic(delete_triangle(p3, t), c)


class TestC44:
    def test_eight_members(self):
        members = enumerate_c44()
        assert len(members) == 8
        shapes = [(m.system.num_points, m.system.num_lines) for m in members]
        assert shapes == [
            (10, 10), (11, 10), (12, 10), (12, 11),
            (13, 10), (13, 11), (13, 12), (13, 13),
        ]

    def test_endpoints_of_the_family(self):
        members = enumerate_c44()
        c, _ = build_c()
        p3, _ = projective_plane(3)
        assert members[0].system == c
        assert is_isomorphic(members[-1].system, p3)

    def test_pairwise_distinct(self):
        from linesys.canon import canonical_form

        codes = {canonical_form(m.system) for m in enumerate_c44()}
        assert len(codes) == 8

    def test_restoration_records(self):
        for m in enumerate_c44():
            assert len(m.restored_points) == len(m.restored_point_labels)
            assert len(m.restored_lines) == len(m.restored_line_labels)
        base = enumerate_c44()[0]
        assert base.restored_points == ()
        assert base.restored_lines == ()


class TestPadding:
    def test_adds_fresh_points_per_line(self):
        s, _ = build_cnn(3)
        padded, record = pad_uniform(s, 5)
        assert uniformity(padded) == 5
        assert padded.num_points == s.num_points + 2 * s.num_lines
        assert all(len(extra) == 2 for extra in record.added_points)
        # old lines are prefixes of the padded ones, in the same order
        for old, new, extra in zip(s.lines, padded.lines, record.added_points):
            assert new == old + extra

    def test_target_must_cover(self):
        s, _ = build_cnn(3)
        with pytest.raises(InvalidParameterError):
            pad_uniform(s, 2)

    def test_noop_when_already_there(self):
        s, _ = build_cnn(3)
        padded, record = pad_uniform(s, 3)
        assert padded == s
        assert record.added_points == ((),) * s.num_lines


def test_matching_and_star_shapes():
    m = matching(3, 4)
    assert m.num_points == 12
    assert m.num_lines == 3
    assert uniformity(m) == 4
    st = star(4, 3)
    assert st.num_points == 9
    assert st.num_lines == 4
    assert max(degree_profile(st).degrees) == 4


class TestRandom:
    def test_valid_and_deterministic(self):
        a = random_linear_system(10, 6, (2, 4), seed=5)
        b = random_linear_system(10, 6, (2, 4), seed=5)
        assert a == b
        assert a.num_points == 10
        assert a.num_lines == 6
        assert all(2 <= len(l) <= 4 for l in a.lines)

    def test_seed_matters(self):
        a = random_linear_system(10, 6, (2, 4), seed=1)
        b = random_linear_system(10, 6, (2, 4), seed=2)
        assert a != b

    def test_exhaustion(self):
        # a 4-point set supports only one 3-line
        with pytest.raises(GenerationExhausted):
            random_linear_system(4, 2, (3, 3), seed=1)

    def test_bad_params(self):
        with pytest.raises(InvalidParameterError):
            random_linear_system(5, 2, (3, 2), seed=1)
        with pytest.raises(InvalidParameterError):
            random_linear_system(5, 2, (0, 2), seed=1)
