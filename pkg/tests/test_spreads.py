"""Tests for line spreads, the geometric property and the Segre model."""

import pytest

from pauligeom import spreads
from pauligeom.errors import ParameterError, StructureError
from pauligeom.galois import GF2Matrix, GF2Vector, field_lift
from pauligeom.projgeom import (
    ProjectivePoint,
    Subspace,
    count_lines,
    count_points,
    enumerate_lines,
)
from pauligeom.spreads import (
    SOLID_LINES,
    Spread,
    collect_solids,
    desarguesian_line_spread,
    is_geometric,
    is_spread,
    segre_model,
    spread_admissible,
    spread_violation,
    transport,
)


def _swap_first_pair(n: int) -> GF2Matrix:
    """Exchange coordinates 0 and 1: conjugation on the first GF(4) component only."""
    columns = [1 << j for j in range(2 * n)]
    columns[0], columns[1] = columns[1], columns[0]
    return GF2Matrix(tuple(columns), 2 * n)


class TestSpreadExistence:
    """Test (t + 1) | (d + 1)."""

    def test_admissible(self):
        assert spread_admissible(3, 1)
        assert spread_admissible(5, 2)
        assert not spread_admissible(4, 1)

    def test_invalid_range_rejected(self):
        with pytest.raises(ParameterError):
            spread_admissible(3, 3)


class TestDesarguesianSpread:
    """Test the field-reduction spread of PG(2N-1, 2)."""

    @pytest.mark.parametrize("n, lines", [(2, 5), (3, 21), (4, 85), (5, 341)])
    def test_line_count_and_partition(self, n, lines):
        s = desarguesian_line_spread(n)
        assert len(s) == lines
        assert is_spread(s.lines, 2 * n - 1)
        assert len(s.line_index) == count_points(2 * n - 1, 2)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_geometric(self, n):
        assert is_geometric(desarguesian_line_spread(n))

    def test_solids_partitioned(self):
        solids, violation = collect_solids(desarguesian_line_spread(3))
        assert violation is None
        assert len(solids) == count_lines(2, 4)
        assert all(len(members) == SOLID_LINES for members in solids.values())

    def test_qubit_range(self):
        """NEGATIVE: N = 1 is below the supported range."""
        with pytest.raises(ParameterError):
            desarguesian_line_spread(1)


class TestSpreadViolations:
    """Test the witnesses returned for non-spreads."""

    def test_meeting_lines(self):
        lines = [Subspace.from_rows([1, 2], 3, 2), Subspace.from_rows([1, 4], 3, 2)]
        witness = spread_violation(lines, 2)
        assert witness["reason"] == "lines meet"
        assert witness["lines"] == [0, 1]

    def test_uncovered_points(self):
        witness = spread_violation([Subspace.from_rows([1, 2], 4, 2)], 3)
        assert witness["reason"] == "points not covered"
        assert witness["covered"] == 3
        assert witness["expected"] == 15

    def test_non_line_rejected(self):
        witness = spread_violation([Subspace.from_rows([1], 4, 2)], 3)
        assert witness["reason"] == "not a line of the ambient space"


class TestSegreModel:
    """Test the identification of spread lines with points of PG(N-1, 4)."""

    def test_pg14(self):
        model = segre_model(desarguesian_line_spread(2))
        assert model.is_bijective(2)
        assert len(model.line_map) == 1
        assert model.incidence_violation() is None

    @pytest.mark.parametrize("n", [3, 4])
    def test_solids_become_lines(self, n):
        model = segre_model(desarguesian_line_spread(n))
        assert model.is_bijective(n)
        assert len(set(model.line_map.values())) == count_lines(n - 1, 4)
        assert model.incidence_violation() is None

    def test_spread_not_closed_under_omega_rejected(self):
        """NEGATIVE: a geometric spread in another frame has no GF(4) structure to read."""
        moved = transport(desarguesian_line_spread(2), _swap_first_pair(2))
        assert is_geometric(moved)
        with pytest.raises(StructureError):
            segre_model(moved)


class TestTransport:
    """Test images of spreads under linear maps."""

    def test_identity_keeps_lines(self):
        s = desarguesian_line_spread(3)
        assert transport(s, GF2Matrix.identity(6)).lines == s.lines

    def test_image_is_spread_in_same_order(self):
        s = desarguesian_line_spread(2)
        m = _swap_first_pair(2)
        moved = transport(s, m)
        assert is_spread(moved.lines, 3)
        for line, image in zip(s.lines, moved.lines):
            assert {m.apply(p) for p in line.point_bits} == image.point_bits

    def test_singular_matrix_rejected(self):
        singular = GF2Matrix((1, 1, 4, 8), 4)
        with pytest.raises(ParameterError):
            transport(desarguesian_line_spread(2), singular)

    def test_size_mismatch_rejected(self):
        with pytest.raises(ParameterError):
            transport(desarguesian_line_spread(2), GF2Matrix.identity(6))


def _regulus_switch(n: int) -> tuple[Subspace, ...]:
    """Replace three spread lines of one solid by the three lines meeting all of them."""
    s = desarguesian_line_spread(n)
    solids, _ = collect_solids(s)
    members = next(iter(solids.values()))
    switched = [s.lines[k] for k in members[:3]]
    cover = frozenset().union(*(line.point_bits for line in switched))
    transversals = [
        line
        for line in enumerate_lines(2 * n - 1, 2)
        if line.point_bits <= cover and line not in switched
    ]
    assert len(transversals) == 3
    kept = tuple(line for line in s.lines if line not in switched)
    return kept + tuple(transversals)


class TestNonGeometricSpread:
    """Test a spread of PG(5, 2) that is not geometric."""

    def test_regulus_switch_keeps_spread(self):
        lines = _regulus_switch(3)
        assert len(lines) == 21
        assert is_spread(lines, 5)

    def test_regulus_switch_is_not_geometric(self):
        """NEGATIVE: a solid now meets spread lines in single points."""
        switched = Spread(lines=_regulus_switch(3), half_dim=3)
        assert not is_geometric(switched)
        _, violation = collect_solids(switched)
        assert violation["reason"] == "solid not partitioned by spread lines"
        with pytest.raises(StructureError):
            segre_model(switched)


class TestFieldReductionLines:
    """Test that each Desarguesian line is one GF(4) point."""

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_points_lift_to_proportional_vectors(self, n):
        for line in desarguesian_line_spread(n):
            lifted = {
                ProjectivePoint.from_vector(field_lift(GF2Vector(p, 2 * n)))
                for p in line.point_bits
            }
            assert len(lifted) == 1


class TestSegreModelReuse:
    """Test that precomputed solids are not recomputed."""

    def test_solids_passed_in_skip_collection(self, monkeypatch):
        s = desarguesian_line_spread(3)
        solids, _ = collect_solids(s)
        calls = []

        def counting(spread):
            calls.append(spread)
            return collect_solids(spread)

        monkeypatch.setattr(spreads, "collect_solids", counting)
        model = segre_model(s, solids)
        assert calls == []
        assert model.incidence_violation() is None
        segre_model(s)
        assert len(calls) == 1
