"""Tests for points, subspaces and incidence in PG(d, q).

Tests validate:
- Point and line counts for q = 2 and q = 4
- Canonical representatives of GF(4) points
- Span, join and intersection of subspaces
- Rejection of unsupported fields and mixed ambient spaces
"""

import random
from collections import Counter
from itertools import combinations

import pytest

from pauligeom.errors import ParameterError
from pauligeom.galois import OMEGA, ONE, GF2Vector, GF4Vector, gf2_nullspace
from pauligeom.projgeom import (
    ProjectivePoint,
    Subspace,
    count_lines,
    count_points,
    enumerate_lines,
    enumerate_points,
    intersection,
    join,
    points_of,
    span,
)


class TestCounts:
    """Test closed-form and enumerated counts."""

    @pytest.mark.parametrize(
        "d, q, points",
        [(1, 2, 3), (2, 2, 7), (3, 2, 15), (1, 4, 5), (2, 4, 21), (3, 4, 85)],
    )
    def test_point_counts(self, d, q, points):
        assert count_points(d, q) == points
        assert len(enumerate_points(d, q)) == points

    def test_line_counts(self):
        assert count_lines(3, 2) == 35
        assert count_lines(3, 4) == 357
        assert len(enumerate_lines(2, 2)) == 7
        assert len(enumerate_lines(3, 4)) == 357

    def test_unsupported_field_rejected(self):
        """NEGATIVE: only GF(2) and GF(4) are supported."""
        with pytest.raises(ParameterError):
            enumerate_points(2, 7)

    def test_dimension_zero_rejected(self):
        with pytest.raises(ParameterError):
            enumerate_points(0, 2)


class TestPoints:
    """Test canonical representatives."""

    def test_projective_line_over_gf4_in_order(self):
        assert [str(p) for p in enumerate_points(1, 4)] == [
            "(1,0)",
            "(0,1)",
            "(1,1)",
            "(1,w)",
            "(1,w2)",
        ]

    def test_from_vector_normalizes(self):
        p = ProjectivePoint.from_vector(GF4Vector.from_components([OMEGA, ONE]))
        assert str(p) == "(1,w2)"
        assert p.q == 4
        assert p.dim == 1

    def test_non_canonical_representative_rejected(self):
        """NEGATIVE: (w, 0) is not scaled to a leading 1."""
        with pytest.raises(ParameterError):
            ProjectivePoint(GF4Vector.from_components([OMEGA, 0]))

    def test_zero_vector_rejected(self):
        with pytest.raises(ParameterError):
            ProjectivePoint.from_vector(GF2Vector(0, 3))


class TestSubspaces:
    """Test span, join, intersection and containment."""

    def test_span_of_points(self):
        line = span([GF2Vector(0b0001, 4), GF2Vector(0b0010, 4)])
        assert line.rank == 2
        assert line.dim == 1
        assert line.point_bits == frozenset({1, 2, 3})

    def test_containment(self):
        line = Subspace.from_rows([1, 2], 4, 2)
        assert 3 in line
        assert GF2Vector(4, 4) not in line
        assert Subspace.from_rows([3], 4, 2).is_subspace_of(line)

    def test_meeting_lines(self):
        a = Subspace.from_rows([0b0001, 0b0010], 4, 2)
        b = Subspace.from_rows([0b0010, 0b0100], 4, 2)
        assert intersection(a, b).basis == (0b0010,)
        assert join(a, b).rank == 3

    def test_skew_lines(self):
        a = Subspace.from_rows([0b0001, 0b0010], 4, 2)
        b = Subspace.from_rows([0b0100, 0b1000], 4, 2)
        assert intersection(a, b).rank == 0
        assert join(a, b) == Subspace.whole(4, 2)

    def test_intersection_over_gf4(self):
        a = Subspace.from_rows([0b0001, 0b0100], 3, 4)
        b = Subspace.from_rows([0b0100, 0b010000], 3, 4)
        assert intersection(a, b).basis == (0b0100,)

    def test_points_of_lines(self):
        assert len(points_of(Subspace.from_rows([1, 2], 3, 2))) == 3
        assert len(points_of(Subspace.from_rows([1, 4], 2, 4))) == 5

    def test_every_pair_on_exactly_one_line(self):
        """Test the projective plane axiom in PG(2, 2)."""
        lines = enumerate_lines(2, 2)
        for p, r in combinations(range(1, 8), 2):
            assert sum(1 for line in lines if {p, r} <= line.point_bits) == 1

    def test_mixed_ambient_rejected(self):
        """NEGATIVE: subspaces of different spaces cannot be joined."""
        with pytest.raises(ParameterError):
            join(Subspace.zero(3, 2), Subspace.zero(4, 2))

    def test_empty_span_rejected(self):
        with pytest.raises(ParameterError):
            span([])

    def test_mixed_fields_rejected(self):
        with pytest.raises(ParameterError):
            span([GF2Vector(1, 2), GF4Vector(1, 2)])


def _random_subspace(rng: random.Random, n: int) -> Subspace:
    rows = [rng.randrange(1, 1 << n) for _ in range(rng.randint(1, n))]
    return Subspace.from_rows(rows, n, 2)


class TestIncidenceInvariants:
    """Test dimension formula, canonical bases and line counts through points."""

    def test_dimension_formula_on_random_pairs(self):
        rng = random.Random(2024)
        for _ in range(1000):
            a, b = _random_subspace(rng, 8), _random_subspace(rng, 8)
            meet = intersection(a, b)
            assert join(a, b).rank + meet.rank == a.rank + b.rank
            assert meet.is_subspace_of(a)
            assert meet.is_subspace_of(b)

    def test_span_of_points_is_canonical(self):
        """Test span(points_of(s)) == s for every line, plane and the solid of PG(3, 2)."""
        planes = [Subspace.from_rows(gf2_nullspace([p], 4), 4, 2) for p in range(1, 16)]
        subspaces = [*enumerate_lines(3, 2), *planes, Subspace.whole(4, 2)]
        for s in subspaces:
            assert span(points_of(s)) == s
        assert len(set(planes)) == 15

    def test_seven_lines_through_each_point(self):
        lines = enumerate_lines(3, 2)
        assert len(lines) == 35
        through = Counter(p for line in lines for p in line.point_bits)
        assert set(through) == set(range(1, 16))
        assert set(through.values()) == {7}

    def test_enumerated_lines_of_pg7(self):
        lines = enumerate_lines(7, 2)
        assert len(lines) == 10795 == count_lines(7, 2)
        assert len(set(lines)) == 10795
