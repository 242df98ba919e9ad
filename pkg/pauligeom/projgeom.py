"""Points, subspaces, spans and incidence of PG(d, q) for q in {2, 4}.

Subspaces are stored by their canonical reduced row-echelon basis on packed words, so
equality, hashing and containment never touch point sets. Every enumeration is in
increasing order of the packed word (deterministic across runs).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Sequence, Union

from pauligeom.errors import ParameterError
from pauligeom.galois import (
    GF2,
    GF4,
    GF2Vector,
    GF4Vector,
    PackedField,
    packed_field,
    reduce_against,
    row_reduce,
)
from pauligeom.validation import ParameterValidator

logger = logging.getLogger(__name__)

Vector = Union[GF2Vector, GF4Vector]


def make_vector(word: int, n: int, q: int) -> Vector:
    return GF2Vector(word, n) if q == 2 else GF4Vector(word, n)


def count_points(d: int, q: int) -> int:
    """Number of points of PG(d, q)."""
    return (q ** (d + 1) - 1) // (q - 1)


def count_lines(d: int, q: int) -> int:
    """Number of lines of PG(d, q)."""
    return ((q ** (d + 1) - 1) * (q**d - 1)) // ((q**2 - 1) * (q - 1))


@dataclass(frozen=True, slots=True)
class ProjectivePoint:
    """A point of PG(d, q) held by its canonical representative.

    For q = 2 the representative is the nonzero vector itself; for q = 4 it is scaled
    so that the first nonzero coordinate equals 1.
    """

    coords: Vector

    def __post_init__(self):
        if self.coords.packed == 0:
            raise ParameterError("the zero vector is not a projective point")
        if self.coords.field.normalize(self.coords.packed) != self.coords.packed:
            raise ParameterError(f"{self.coords} is not a canonical representative")

    @classmethod
    def from_vector(cls, v: Vector) -> ProjectivePoint:
        if v.is_zero():
            raise ParameterError("the zero vector is not a projective point")
        return cls(make_vector(v.field.normalize(v.packed), v.length, v.field.q))

    @property
    def q(self) -> int:
        return self.coords.field.q

    @property
    def bits(self) -> int:
        return self.coords.packed

    @property
    def dim(self) -> int:
        """Projective dimension of the ambient space."""
        return self.coords.length - 1

    def __str__(self) -> str:
        return str(self.coords)


@dataclass(frozen=True)
class Subspace:
    """Subspace of GF(q)^n held by its canonical reduced row-echelon basis."""

    basis: tuple[int, ...]
    ambient_dim: int
    q: int

    @classmethod
    def from_rows(cls, rows: Iterable[int], n: int, q: int) -> Subspace:
        return cls(row_reduce(rows, n, packed_field(q)), n, q)

    @classmethod
    def zero(cls, n: int, q: int) -> Subspace:
        return cls((), n, q)

    @classmethod
    def whole(cls, n: int, q: int) -> Subspace:
        field = packed_field(q)
        return cls(tuple(1 << (field.width * i) for i in range(n)), n, q)

    @property
    def field(self) -> PackedField:
        return GF2 if self.q == 2 else GF4

    @property
    def rank(self) -> int:
        """Vector dimension."""
        return len(self.basis)

    @property
    def dim(self) -> int:
        """Projective dimension; -1 for the zero subspace."""
        return len(self.basis) - 1

    @property
    def vectors(self) -> tuple[Vector, ...]:
        return tuple(make_vector(b, self.ambient_dim, self.q) for b in self.basis)

    @property
    def sort_key(self) -> tuple[int, ...]:
        return self.basis

    @cached_property
    def point_bits(self) -> frozenset[int]:
        """Packed canonical representatives of all points."""
        return frozenset(_combinations(self.basis, self.field))

    def contains(self, v: Union[Vector, ProjectivePoint, int]) -> bool:
        word = _word(v)
        return reduce_against(word, self.basis, self.field) == 0

    def __contains__(self, v: Union[Vector, ProjectivePoint, int]) -> bool:
        return self.contains(v)

    def is_subspace_of(self, other: Subspace) -> bool:
        _check_same_ambient(self, other)
        return all(other.contains(b) for b in self.basis)

    def __str__(self) -> str:
        rows = ", ".join(str(v) for v in self.vectors)
        return f"<{rows}>"


def _word(v: Union[Vector, ProjectivePoint, int]) -> int:
    if isinstance(v, int):
        return v
    if isinstance(v, ProjectivePoint):
        return v.bits
    return v.packed


def _combinations(basis: Sequence[int], field: PackedField) -> list[int]:
    """Packed canonical points spanned by an RREF basis.

    A combination is canonical exactly when its first nonzero coefficient is 1.
    """
    words = []
    k = len(basis)
    for lead in range(k):
        tail = basis[lead + 1 :]
        for coeffs in product(field.elements, repeat=len(tail)):
            w = basis[lead]
            for c, b in zip(coeffs, tail):
                if c:
                    w ^= field.scale(b, c)
            words.append(w)
    words.sort()
    return words


def _check_same_ambient(a: Subspace, b: Subspace) -> None:
    if a.q != b.q or a.ambient_dim != b.ambient_dim:
        raise ParameterError(
            f"subspaces live in different spaces: GF({a.q})^{a.ambient_dim} "
            f"vs GF({b.q})^{b.ambient_dim}"
        )


@lru_cache(maxsize=64)
def enumerate_points(d: int, q: int) -> tuple[ProjectivePoint, ...]:
    """All points of PG(d, q) in increasing packed order."""
    ParameterValidator.validate_dimension(d, q)
    ParameterValidator.check_budget(count_points(d, q), "points")
    field = packed_field(q)
    n = d + 1
    points = tuple(
        ProjectivePoint(make_vector(w, n, q))
        for w in range(1, 1 << (field.width * n))
        if field.coord(w, field.leading(w)) == 1
    )
    logger.debug("Enumerated points", extra={"d": d, "q": q, "count": len(points)})
    return points


def span(generators: Sequence[Union[Vector, ProjectivePoint]]) -> Subspace:
    """Canonical subspace spanned by vectors (or points) over one field and dimension."""
    if not generators:
        raise ParameterError("span of an empty list has no ambient space")
    vectors = [g.coords if isinstance(g, ProjectivePoint) else g for g in generators]
    first = vectors[0]
    for v in vectors[1:]:
        if type(v) is not type(first) or v.length != first.length:
            raise ParameterError("cannot span vectors over different fields or dimensions")
    return Subspace.from_rows((v.packed for v in vectors), first.length, first.field.q)


def join(a: Subspace, b: Subspace) -> Subspace:
    """Sum a + b."""
    _check_same_ambient(a, b)
    return Subspace.from_rows(a.basis + b.basis, a.ambient_dim, a.q)


def intersection(a: Subspace, b: Subspace) -> Subspace:
    """Intersection of two subspaces (Zassenhaus).

    Reducing the rows (u | u) for u in a and (v | 0) for v in b, the rows whose left
    half vanishes carry a basis of a ∩ b in their right half.
    """
    _check_same_ambient(a, b)
    field = a.field
    n = a.ambient_dim
    shift = field.width * n
    low = field.mask(n)
    rows = [u | (u << shift) for u in a.basis] + list(b.basis)
    reduced = row_reduce(rows, 2 * n, field)
    common = [r >> shift for r in reduced if r & low == 0]
    return Subspace.from_rows(common, n, a.q)


def points_of(s: Subspace) -> tuple[ProjectivePoint, ...]:
    """All canonical points of a subspace, in increasing packed order."""
    ParameterValidator.check_budget(count_points(s.rank - 1, s.q) if s.rank else 0, "points")
    return tuple(ProjectivePoint(make_vector(w, s.ambient_dim, s.q)) for w in sorted(s.point_bits))


@lru_cache(maxsize=32)
def enumerate_lines(d: int, q: int) -> tuple[Subspace, ...]:
    """All lines of PG(d, q), each once, ordered by canonical basis."""
    ParameterValidator.validate_dimension(d, q)
    ParameterValidator.check_budget(count_lines(d, q), "lines")
    points = [p.bits for p in enumerate_points(d, q)]
    n = d + 1
    seen: dict[tuple[int, ...], Subspace] = {}
    for i, p in enumerate(points):
        done: set[int] = set()
        for r in points[i + 1 :]:
            if r in done:
                continue
            line = Subspace.from_rows((p, r), n, q)
            done |= line.point_bits
            seen.setdefault(line.basis, line)
    lines = tuple(seen[key] for key in sorted(seen))
    logger.debug("Enumerated lines", extra={"d": d, "q": q, "count": len(lines)})
    return lines
