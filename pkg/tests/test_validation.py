"""Tests for centralized parameter validation.

Tests validate:
- Qubit counts inside [MIN_QUBITS, high] and integer typing
- Field orders restricted to 2 and 4
- Projective dimensions that fit one machine word
- The enumeration budget
"""

import pytest

from pauligeom.errors import ParameterError
from pauligeom.validation import ParameterValidator


class TestQubitCount:
    """Test validate_qubit_count."""

    def test_range(self):
        assert ParameterValidator.validate_qubit_count(2) == 2
        assert ParameterValidator.validate_qubit_count(6) == 6

    @pytest.mark.parametrize("n", [0, 1, 7])
    def test_out_of_range(self, n):
        """NEGATIVE: N outside [2, 6] is rejected with its bounds in details."""
        with pytest.raises(ParameterError) as exc:
            ParameterValidator.validate_qubit_count(n)
        assert exc.value.details["n"] == n

    def test_custom_upper_bound(self):
        with pytest.raises(ParameterError):
            ParameterValidator.validate_qubit_count(5, high=ParameterValidator.MAX_COMMUTING_QUBITS)

    @pytest.mark.parametrize("n", [True, 2.0, "2", None])
    def test_non_integer_rejected(self, n):
        with pytest.raises(ParameterError):
            ParameterValidator.validate_qubit_count(n)


class TestHalfDimension:
    """Test validate_half_dimension."""

    def test_one_allowed(self):
        assert ParameterValidator.validate_half_dimension(1) == 1

    def test_too_large(self):
        with pytest.raises(ParameterError):
            ParameterValidator.validate_half_dimension(17)


class TestFieldAndDimension:
    """Test validate_field_order and validate_dimension."""

    def test_supported_orders(self):
        assert ParameterValidator.validate_field_order(2) == 2
        assert ParameterValidator.validate_field_order(4) == 4

    @pytest.mark.parametrize("q", [3, 7, 8])
    def test_unsupported_orders(self, q):
        with pytest.raises(ParameterError) as exc:
            ParameterValidator.validate_field_order(q)
        assert "unsupported field order" in str(exc.value)

    def test_dimension_fits_word(self):
        assert ParameterValidator.validate_dimension(31, 2) == 31
        assert ParameterValidator.validate_dimension(15, 4) == 15
        with pytest.raises(ParameterError):
            ParameterValidator.validate_dimension(16, 4)

    def test_dimension_zero_rejected(self):
        with pytest.raises(ParameterError):
            ParameterValidator.validate_dimension(0, 2)


class TestBudget:
    """Test check_budget."""

    def test_within_budget(self):
        assert ParameterValidator.check_budget(1000, "points") == 1000

    def test_over_budget(self):
        with pytest.raises(ParameterError) as exc:
            ParameterValidator.check_budget(ParameterValidator.ENUMERATION_BUDGET + 1, "points")
        assert exc.value.details["budget"] == ParameterValidator.ENUMERATION_BUDGET
