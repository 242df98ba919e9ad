"""Finite geometry of line spreads, quadrics and multi-qubit Pauli groups over GF(2)/GF(4)."""

__version__ = "0.1.0"
