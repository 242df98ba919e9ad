"""Centralized parameter validation.

All supported ranges live here as class constants so that library operations and the
CLI parameter models reject the same inputs with the same messages.
"""

from pauligeom.errors import ParameterError


class ParameterValidator:
    """Range checks shared by every public operation."""

    MIN_QUBITS = 2
    MAX_QUBITS = 6
    MAX_VERIFY_QUBITS = 5
    MAX_COMMUTING_QUBITS = 4
    SUPPORTED_FIELD_ORDERS = (2, 4)
    ENUMERATION_BUDGET = 1_000_000
    MAX_GENERATOR_DIM = 8
    MAX_VECTOR_BITS = 32

    @staticmethod
    def validate_qubit_count(n: int, high: int = MAX_QUBITS) -> int:
        """Validate a qubit count / half-dimension N.

        Args:
            n: The requested N.
            high: Largest N the calling operation supports.

        Returns:
            The validated N.

        Raises:
            ParameterError: If N is not an integer in [MIN_QUBITS, high].
        """
        if isinstance(n, bool) or not isinstance(n, int):
            raise ParameterError(f"N must be an integer, got {type(n).__name__}")

        if n < ParameterValidator.MIN_QUBITS or n > high:
            raise ParameterError(
                f"N must be between {ParameterValidator.MIN_QUBITS} and {high}, got {n}",
                details={"n": n, "min": ParameterValidator.MIN_QUBITS, "max": high},
            )

        return n

    @staticmethod
    def validate_half_dimension(n: int) -> int:
        """Validate the N of a form on GF(2)^{2N}; N = 1 is allowed here."""
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ParameterError(f"half-dimension must be a positive integer, got {n!r}")

        if 2 * n > ParameterValidator.MAX_VECTOR_BITS:
            raise ParameterError(
                f"half-dimension too large (max {ParameterValidator.MAX_VECTOR_BITS // 2})"
            )

        return n

    @staticmethod
    def validate_field_order(q: int) -> int:
        """Reject field orders other than 2 and 4."""
        if q not in ParameterValidator.SUPPORTED_FIELD_ORDERS:
            raise ParameterError(
                f"unsupported field order {q} (supported: 2, 4)",
                details={"q": q},
            )
        return q

    @staticmethod
    def validate_dimension(d: int, q: int) -> int:
        """Validate a projective dimension d of PG(d, q).

        The coordinate vector must fit one machine word: d + 1 coordinates of
        one bit (q = 2) or two bits (q = 4).
        """
        ParameterValidator.validate_field_order(q)

        if isinstance(d, bool) or not isinstance(d, int) or d < 1:
            raise ParameterError(f"projective dimension must be at least 1, got {d!r}")

        width = 1 if q == 2 else 2
        if (d + 1) * width > ParameterValidator.MAX_VECTOR_BITS:
            raise ParameterError(
                f"PG({d},{q}) does not fit in {ParameterValidator.MAX_VECTOR_BITS} bits",
                details={"d": d, "q": q},
            )

        return d

    @staticmethod
    def check_budget(count: int, what: str) -> int:
        """Refuse enumerations larger than ENUMERATION_BUDGET objects."""
        if count > ParameterValidator.ENUMERATION_BUDGET:
            raise ParameterError(
                f"enumeration of {count} {what} exceeds the budget of "
                f"{ParameterValidator.ENUMERATION_BUDGET}",
                details={"count": count, "budget": ParameterValidator.ENUMERATION_BUDGET},
            )
        return count
