"""Quadratic, symplectic and Hermitian forms; quadrics, Hermitian varieties, generators.

Quadratic forms over GF(2) are stored by their upper-triangular coefficient matrix with
row i packed as a bitmask of the columns j >= i. Symplectic coordinates are interleaved:
coordinate 2i is the X-part a_i and 2i+1 the Z-part b_i of an operator (a|b), so the
standard hyperbolic form x0x1 + x2x3 + ... is exactly a.b and its polar form is the
symplectic pairing a.b' + a'.b.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Callable, Sequence

from pauligeom.errors import (
    DimensionError,
    InternalConsistencyError,
    NoEquivalenceError,
    ParameterError,
    StructureError,
)
from pauligeom.galois import (
    GF4,
    GF4_ELEMENTS,
    GF2Matrix,
    GF2Vector,
    gf2_nullspace,
    gf2_rank,
    gf4_conj,
    gf4_mul,
    row_reduce,
)
from pauligeom.projgeom import ProjectivePoint, Subspace, enumerate_points
from pauligeom.validation import ParameterValidator

logger = logging.getLogger(__name__)

_LOW = 0x5555_5555_5555_5555
_HIGH = _LOW << 1


class QuadricKind(str, Enum):
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"
    DEGENERATE = "degenerate"


def quadric_size(kind: QuadricKind, n: int) -> int:
    """Points of Q+(2N-1, 2) or Q-(2N-1, 2)."""
    if kind is QuadricKind.HYPERBOLIC:
        return 2 ** (2 * n - 1) + 2 ** (n - 1) - 1
    if kind is QuadricKind.ELLIPTIC:
        return 2 ** (2 * n - 1) - 2 ** (n - 1) - 1
    raise ParameterError("degenerate quadrics have no closed-form size")


def hermitian_size(n: int) -> int:
    """Points of H(N-1, 4)."""
    return ((2**n + (-1) ** (n - 1)) * (2 ** (n - 1) - (-1) ** (n - 1))) // 3


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric bilinear form over GF(2) with packed Gram rows."""

    gram: tuple[int, ...]
    dim: int

    def image(self, x: int) -> int:
        """The linear functional B(x, .) as a packed word."""
        y = 0
        for i in _bits(x):
            y ^= self.gram[i]
        return y

    def value(self, x: int, y: int) -> int:
        return (self.image(x) & y).bit_count() & 1

    def __call__(self, x: GF2Vector, y: GF2Vector) -> int:
        if x.length != self.dim or y.length != self.dim:
            raise DimensionError(f"form of dimension {self.dim} applied to other lengths")
        return self.value(x.bits, y.bits)

    def radical(self) -> Subspace:
        return Subspace.from_rows(gf2_nullspace(self.gram, self.dim), self.dim, 2)

    def is_nondegenerate(self) -> bool:
        return gf2_rank(self.gram, self.dim) == self.dim


class SymplecticForm(BilinearForm):
    """The pairing a.b' + a'.b on interleaved coordinates of GF(2)^{2N}."""

    @classmethod
    def standard(cls, n: int) -> SymplecticForm:
        ParameterValidator.validate_half_dimension(n)
        gram = []
        for i in range(n):
            gram += [1 << (2 * i + 1), 1 << (2 * i)]
        return cls(tuple(gram), 2 * n)

    @property
    def half_dim(self) -> int:
        return self.dim // 2

    def image(self, x: int) -> int:
        # B(x, .) swaps the two coordinates of every pair
        return ((x & _LOW) << 1) | ((x & _HIGH) >> 1)

    def is_totally_isotropic(self, words: Sequence[int]) -> bool:
        return all(self.value(x, y) == 0 for x, y in combinations(words, 2))


@dataclass(frozen=True)
class QuadraticForm:
    """Q(x) = sum over i <= j of U[i][j] x_i x_j, with ``rows[i]`` holding row i of U."""

    rows: tuple[int, ...]
    dim: int

    def __post_init__(self):
        if len(self.rows) != self.dim:
            raise DimensionError(f"expected {self.dim} coefficient rows, got {len(self.rows)}")
        for i, row in enumerate(self.rows):
            if row < 0 or row >> self.dim or row & ((1 << i) - 1):
                raise ParameterError(f"coefficient row {i} is not upper triangular")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> QuadraticForm:
        n = len(matrix)
        if any(len(r) != n for r in matrix):
            raise DimensionError("coefficient matrix must be square")
        for i in range(n):
            for j in range(i):
                if matrix[i][j]:
                    raise ParameterError("coefficient matrix must be upper triangular")
        return cls(tuple(sum((matrix[i][j] & 1) << j for j in range(n)) for i in range(n)), n)

    @classmethod
    def interpolate(cls, func: Callable[[int], int], dim: int) -> QuadraticForm:
        """Coefficients of the quadratic form agreeing with ``func`` on e_i and e_i + e_j."""
        diag = [func(1 << i) & 1 for i in range(dim)]
        rows = []
        for i in range(dim):
            row = diag[i] << i
            for j in range(i + 1, dim):
                if func((1 << i) | (1 << j)) ^ diag[i] ^ diag[j]:
                    row |= 1 << j
            rows.append(row)
        return cls(tuple(rows), dim)

    def matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple((row >> j) & 1 for j in range(self.dim)) for row in self.rows)

    def value(self, x: int) -> int:
        acc = 0
        for i in _bits(x):
            acc ^= (self.rows[i] & x).bit_count()
        return acc & 1

    def __call__(self, x: GF2Vector) -> int:
        return eval_quadratic(self, x)

    @cached_property
    def polar(self) -> BilinearForm:
        gram = []
        for i in range(self.dim):
            upper = self.rows[i] & ~(1 << i)
            lower = sum(((self.rows[j] >> i) & 1) << j for j in range(i))
            gram.append(upper | lower)
        return BilinearForm(tuple(gram), self.dim)


def eval_quadratic(q: QuadraticForm, x: GF2Vector) -> int:
    if x.length != q.dim:
        raise DimensionError(f"form of dimension {q.dim} applied to a vector of length {x.length}")
    return q.value(x.bits)


def polar_form(q: QuadraticForm) -> BilinearForm:
    """B(x, y) = Q(x + y) + Q(x) + Q(y)."""
    return q.polar


def standard_form(kind: QuadricKind, n: int) -> QuadraticForm:
    """x0x1 + x2x3 + ..., the last block replaced by x^2 + xy + y^2 when elliptic."""
    kind = QuadricKind(kind)
    if kind is QuadricKind.DEGENERATE:
        raise ParameterError("there is no standard degenerate form")
    ParameterValidator.validate_half_dimension(n)
    rows = []
    for i in range(n):
        rows += [1 << (2 * i + 1), 0]
    if kind is QuadricKind.ELLIPTIC:
        rows[2 * n - 2] |= 1 << (2 * n - 2)
        rows[2 * n - 1] = 1 << (2 * n - 1)
    return QuadraticForm(tuple(rows), 2 * n)


def _zero_words(q: QuadraticForm) -> list[int]:
    ParameterValidator.check_budget((1 << q.dim) - 1, "vectors")
    return [x for x in range(1, 1 << q.dim) if q.value(x) == 0]


def quadric_points(q: QuadraticForm) -> tuple[ProjectivePoint, ...]:
    """Projective zeros of Q, in increasing packed order."""
    return tuple(ProjectivePoint(GF2Vector(x, q.dim)) for x in _zero_words(q))


def classify_quadric(q: QuadraticForm) -> QuadricKind:
    """Degenerate iff the polar form has a radical; otherwise decided by point count."""
    if q.dim % 2:
        raise DimensionError(f"classification needs even dimension, got {q.dim}")
    if not q.polar.is_nondegenerate():
        return QuadricKind.DEGENERATE
    n = q.dim // 2
    count = len(_zero_words(q))
    for kind in (QuadricKind.HYPERBOLIC, QuadricKind.ELLIPTIC):
        if count == quadric_size(kind, n):
            return kind
    raise InternalConsistencyError(
        "non-degenerate quadric with impossible point count",
        details={"dim": q.dim, "points": count},
    )


# ---------------------------------------------------------------
# Hermitian forms over GF(4)


@dataclass(frozen=True)
class HermitianForm:
    """h(u, v) = sum u_i M[i][j] conj(v_j), with M equal to its conjugate transpose."""

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.gram)
        if n < 1 or any(len(row) != n for row in self.gram):
            raise DimensionError("Hermitian Gram matrix must be square and non-empty")
        for i in range(n):
            for j in range(n):
                if self.gram[i][j] not in GF4_ELEMENTS:
                    raise ParameterError(f"entry ({i},{j}) is not a GF(4) code")
                if self.gram[j][i] != gf4_conj(self.gram[i][j]):
                    raise ParameterError(f"Gram matrix is not Hermitian at ({i},{j})")

    @property
    def dim(self) -> int:
        return len(self.gram)

    def value(self, u: int, v: int) -> int:
        """h on packed GF(4) words."""
        n = self.dim
        uc = [(u >> (2 * i)) & 3 for i in range(n)]
        vc = [gf4_conj((v >> (2 * j)) & 3) for j in range(n)]
        acc = 0
        for i in range(n):
            if not uc[i]:
                continue
            for j in range(n):
                if vc[j] and self.gram[i][j]:
                    acc ^= gf4_mul(gf4_mul(uc[i], self.gram[i][j]), vc[j])
        return acc

    def norm(self, v: int) -> int:
        """h(v, v), always 0 or 1."""
        return self.value(v, v)

    def is_nonsingular(self) -> bool:
        rows = [sum(c << (2 * j) for j, c in enumerate(row)) for row in self.gram]
        return len(row_reduce(rows, self.dim, GF4)) == self.dim


def standard_hermitian(n: int) -> HermitianForm:
    """Identity Gram matrix: h(u, v) = sum u_i conj(v_i)."""
    ParameterValidator.validate_half_dimension(n)
    return HermitianForm(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def hermitian_variety(h: HermitianForm) -> tuple[ProjectivePoint, ...]:
    """Points of PG(N-1, 4) with h(v, v) = 0."""
    if not h.is_nonsingular():
        raise ParameterError("Hermitian form is singular")
    if h.dim < 2:
        return ()
    return tuple(p for p in enumerate_points(h.dim - 1, 4) if h.norm(p.bits) == 0)


def pullback_quadratic(h: HermitianForm) -> QuadraticForm:
    """Quadratic form w -> h(lift(w), lift(w)) on GF(2)^{2N}."""
    if not h.is_nonsingular():
        raise ParameterError("Hermitian form is singular")
    dim = 2 * h.dim

    def norm_bit(w: int) -> int:
        value = h.norm(w)
        if value > 1:
            raise InternalConsistencyError("h(v, v) left GF(2)", details={"word": w})
        return value

    q = QuadraticForm.interpolate(norm_bit, dim)
    mismatch = next((w for w in range(1 << dim) if q.value(w) != norm_bit(w)), None)
    if mismatch is not None:
        raise InternalConsistencyError(
            "pullback is not reproduced by its coefficients", details={"word": mismatch}
        )
    return q


# ---------------------------------------------------------------
# Witt bases and isometries


def _span_words(basis: Sequence[int]) -> list[int]:
    words = [0]
    for b in basis:
        words += [w ^ b for w in words]
    return sorted(words[1:])


def witt_basis(q: QuadraticForm) -> tuple[tuple[int, ...], QuadricKind]:
    """Basis (e1, f1, ..., em, fm) of mutually orthogonal pairs with B(ei, fi) = 1.

    All pairs but the last are hyperbolic (Q(e) = Q(f) = 0). The last pair is hyperbolic
    or elliptic (Q(e) = Q(f) = 1), which decides the kind. At each step the smallest
    singular vector of the remaining space is taken.
    """
    if q.dim % 2 or q.dim == 0:
        raise DimensionError(f"Witt basis needs positive even dimension, got {q.dim}")
    polar = q.polar
    if not polar.is_nondegenerate():
        raise NoEquivalenceError("degenerate form has no Witt basis")

    space = tuple(1 << i for i in range(q.dim))
    basis: list[int] = []
    kind = QuadricKind.HYPERBOLIC
    while space:
        words = _span_words(space)
        e = next((w for w in words if q.value(w) == 0), None)
        if e is None:
            if len(space) != 2:
                raise InternalConsistencyError("anisotropic subspace of dimension above 2")
            e, f = words[0], words[1]
            kind = QuadricKind.ELLIPTIC
        else:
            f = next(w for w in words if polar.value(e, w))
            if q.value(f):
                f ^= e
        basis += [e, f]
        # w -> w + B(w, f) e + B(w, e) f lands in <e, f>^perp
        projected = [
            w ^ (e if polar.value(w, f) else 0) ^ (f if polar.value(w, e) else 0) for w in space
        ]
        space = row_reduce(projected, q.dim)
    return tuple(basis), kind


def form_equivalence_map(q1: QuadraticForm, q2: QuadraticForm) -> GF2Matrix:
    """Invertible T with Q2(T x) = Q1(x) for all x.

    Raises:
        NoEquivalenceError: If the forms are degenerate or of different kinds.
    """
    if q1.dim != q2.dim:
        raise NoEquivalenceError(f"forms live in dimensions {q1.dim} and {q2.dim}")
    kind1, kind2 = classify_quadric(q1), classify_quadric(q2)
    if QuadricKind.DEGENERATE in (kind1, kind2) or kind1 is not kind2:
        raise NoEquivalenceError(
            f"no isometry between {kind1.value} and {kind2.value} forms",
            details={"first": kind1.value, "second": kind2.value},
        )

    basis1, _ = witt_basis(q1)
    basis2, _ = witt_basis(q2)
    n = q1.dim
    to_basis1 = GF2Matrix(basis1, n).inverse()
    t = GF2Matrix(basis2, n).compose(to_basis1)

    bad = next((x for x in range(1 << n) if q2.value(t.apply(x)) != q1.value(x)), None)
    if bad is not None or not t.is_invertible():
        raise InternalConsistencyError("isometry failed its exhaustive check", details={"x": bad})
    logger.debug("Computed form equivalence", extra={"dim": n, "kind": kind1.value})
    return t


# ---------------------------------------------------------------
# Maximal totally singular / isotropic subspaces


def maximal_isotropic_subspaces(
    candidates: Sequence[int], pairing: Callable[[int], int], dim: int
) -> list[Subspace]:
    """All maximal subspaces whose points lie in ``candidates`` and are pairwise orthogonal.

    ``pairing(x)`` is the functional B(x, .) as a packed word. Depth-first extension adds
    points in increasing order and accepts x only if x is the smallest point of the new
    coset span(S, x) minus S, so every subspace is visited exactly once. A node is maximal
    when no candidate orthogonal to it lies outside it.
    """
    functional = {x: pairing(x) for x in candidates}
    found: list[Subspace] = []

    def extend(basis: list[int], points: list[int], last: int, pool: list[int]) -> None:
        if not pool:
            if basis:
                found.append(Subspace.from_rows(basis, dim, 2))
            return
        for x in pool:
            if x <= last or any(x ^ s < x for s in points):
                continue
            coset = [x] + [x ^ s for s in points]
            members = set(coset)
            fx = functional[x]
            child_pool = [
                y for y in pool if y not in members and not (fx & y).bit_count() & 1
            ]
            extend(basis + [x], points + coset, x, child_pool)

    extend([], [], 0, sorted(candidates))
    found.sort(key=lambda s: s.sort_key)
    return found


def enumerate_generators(q: QuadraticForm) -> list[Subspace]:
    """Maximal totally singular subspaces of a non-degenerate quadric (2N <= 8)."""
    if q.dim > ParameterValidator.MAX_GENERATOR_DIM:
        raise ParameterError(
            f"generator search limited to dimension {ParameterValidator.MAX_GENERATOR_DIM}",
            details={"dim": q.dim},
        )
    if classify_quadric(q) is QuadricKind.DEGENERATE:
        raise ParameterError("degenerate quadric has no generator structure")
    gens = maximal_isotropic_subspaces(_zero_words(q), q.polar.image, q.dim)
    logger.info("Enumerated generators", extra={"dim": q.dim, "count": len(gens)})
    return gens


def _same_family(g: Subspace, h: Subspace) -> bool:
    meet = g.rank + h.rank - gf2_rank(g.basis + h.basis, g.ambient_dim)
    return (meet - g.rank) % 2 == 0


def generator_families(gens: Sequence[Subspace]) -> tuple[list[Subspace], list[Subspace]]:
    """Split generators by parity of intersection dimension into exactly two families.

    Raises:
        StructureError: If the relation is not an equivalence with two classes.
    """
    if not gens:
        raise StructureError("no generators to split")
    first = [g for g in gens if _same_family(gens[0], g)]
    second = [g for g in gens if not _same_family(gens[0], g)]
    if not second:
        raise StructureError("generators form a single family")
    for family in (first, second):
        for g, h in combinations(family, 2):
            if not _same_family(g, h):
                raise StructureError(
                    "intersection parity is not transitive",
                    details={"first": str(g), "second": str(h)},
                )
    for g in first:
        for h in second:
            if _same_family(g, h):
                raise StructureError(
                    "generators of different families related",
                    details={"first": str(g), "second": str(h)},
                )
    return first, second
