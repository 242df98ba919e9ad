"""Generalized Pauli operators of N qubits as points of W(2N-1, 2).

An operator (a|b) with X-part a and Z-part b is the point of PG(2N-1, 2) with
interleaved coordinates x_{2i} = a_i, x_{2i+1} = b_i. Phases are ignored and the
identity is excluded.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from functools import reduce

import numpy as np

from pauligeom.errors import ParameterError, ParseError
from pauligeom.forms import QuadricKind, SymplecticForm, maximal_isotropic_subspaces, standard_form
from pauligeom.galois import GF2Vector
from pauligeom.projgeom import Subspace
from pauligeom.validation import ParameterValidator

logger = logging.getLogger(__name__)

_LABEL_PATTERN = re.compile(r"[IXYZ]+")
# (a_i, b_i) per factor
_ENCODING = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_DECODING = {v: k for k, v in _ENCODING.items()}

# Real single-qubit matrices; Y = X Z is real antisymmetric
_MATRICES = {
    "I": np.eye(2, dtype=np.int64),
    "X": np.array([[0, 1], [1, 0]], dtype=np.int64),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.int64),
}
_MATRICES["Y"] = _MATRICES["X"] @ _MATRICES["Z"]


@dataclass(frozen=True, slots=True)
class PauliOperator:
    """Pauli operator up to phase; ``a`` is the X-part, ``b`` the Z-part."""

    a: GF2Vector
    b: GF2Vector

    def __post_init__(self):
        if self.a.length != self.b.length:
            raise ParameterError("X and Z parts must have the same length")
        if self.a.is_zero() and self.b.is_zero():
            raise ParameterError("the identity is not a point of W(2N-1, 2)")

    @classmethod
    def from_label(cls, label: str) -> PauliOperator:
        return parse_label(label)

    @classmethod
    def from_point(cls, point: GF2Vector) -> PauliOperator:
        """Operator of a nonzero vector of GF(2)^{2N} in interleaved coordinates."""
        if point.length % 2:
            raise ParameterError(f"symplectic vectors have even length, got {point.length}")
        n = point.length // 2
        a = sum(((point.bits >> (2 * i)) & 1) << i for i in range(n))
        b = sum(((point.bits >> (2 * i + 1)) & 1) << i for i in range(n))
        return cls(GF2Vector(a, n), GF2Vector(b, n))

    @property
    def n_qubits(self) -> int:
        return self.a.length

    @property
    def point(self) -> GF2Vector:
        bits = 0
        for i in range(self.n_qubits):
            bits |= ((self.a.bits >> i) & 1) << (2 * i)
            bits |= ((self.b.bits >> i) & 1) << (2 * i + 1)
        return GF2Vector(bits, 2 * self.n_qubits)

    @property
    def label(self) -> str:
        return "".join(
            _DECODING[((self.a.bits >> i) & 1, (self.b.bits >> i) & 1)]
            for i in range(self.n_qubits)
        )

    def __str__(self) -> str:
        return self.label


def parse_label(label: str) -> PauliOperator:
    """Decode a label over {I, X, Y, Z}; character i describes qubit i.

    Raises:
        ParseError: If the label is empty, shorter than two qubits, contains another
            character or is the identity.
    """
    if not isinstance(label, str) or not label:
        raise ParseError("Pauli label must be a non-empty string")
    if _LABEL_PATTERN.fullmatch(label) is None:
        raise ParseError(f'Pauli label "{label}" is not valid', details={"label": label})
    if len(label) < ParameterValidator.MIN_QUBITS:
        raise ParseError(
            f"Pauli label needs at least {ParameterValidator.MIN_QUBITS} qubits",
            details={"label": label},
        )
    if set(label) == {"I"}:
        raise ParseError("the identity is excluded", details={"label": label})
    a = sum(_ENCODING[c][0] << i for i, c in enumerate(label))
    b = sum(_ENCODING[c][1] << i for i, c in enumerate(label))
    return PauliOperator(GF2Vector(a, len(label)), GF2Vector(b, len(label)))


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    """True iff a.b' + a'.b = 0."""
    if p.n_qubits != q.n_qubits:
        raise ParameterError(f"operators act on {p.n_qubits} and {q.n_qubits} qubits")
    return (p.a.dot(q.b) ^ q.a.dot(p.b)) == 0


def is_symmetric(p: PauliOperator) -> bool:
    """True iff a.b = 0, i.e. an even number of Y factors."""
    return p.a.dot(p.b) == 0


def symmetric_set(n: int) -> tuple[PauliOperator, ...]:
    """Symmetric operators of N qubits, ordered by their point."""
    ParameterValidator.validate_qubit_count(n)
    hyperbolic = standard_form(QuadricKind.HYPERBOLIC, n)
    ops = tuple(
        PauliOperator.from_point(GF2Vector(x, 2 * n))
        for x in range(1, 1 << (2 * n))
        if hyperbolic.value(x) == 0
    )
    logger.info("Enumerated symmetric operators", extra={"n": n, "count": len(ops)})
    return ops


def maximal_commuting_sets(n: int) -> list[Subspace]:
    """Maximal totally isotropic subspaces of W(2N-1, 2), for 2 <= N <= 4."""
    ParameterValidator.validate_qubit_count(n, high=ParameterValidator.MAX_COMMUTING_QUBITS)
    form = SymplecticForm.standard(n)
    subspaces = maximal_isotropic_subspaces(range(1, 1 << (2 * n)), form.image, 2 * n)
    logger.info("Enumerated maximal commuting sets", extra={"n": n, "count": len(subspaces)})
    return subspaces


def operators_of(s: Subspace) -> tuple[PauliOperator, ...]:
    """Operators on the points of a subspace of PG(2N-1, 2)."""
    return tuple(
        PauliOperator.from_point(GF2Vector(x, s.ambient_dim)) for x in sorted(s.point_bits)
    )


def to_matrix(p: PauliOperator) -> np.ndarray:
    """Tensor product of real single-qubit matrices, qubit 0 as the first factor."""
    return reduce(np.kron, (_MATRICES[c] for c in p.label))


def matrix_is_symmetric(p: PauliOperator) -> bool:
    m = to_matrix(p)
    return bool(np.array_equal(m, m.T))


def matrices_commute(p: PauliOperator, q: PauliOperator) -> bool:
    mp, mq = to_matrix(p), to_matrix(q)
    return bool(np.array_equal(mp @ mq, mq @ mp))
