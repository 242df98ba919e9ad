"""Arithmetic over GF(2) and GF(4) on bit-packed machine words.

GF(4) = {0, 1, w, w^2} with w^2 = w + 1. An element is stored in two bits with codes
0 -> 00, 1 -> 01, w -> 10, w^2 -> 11, so addition is XOR and the low and high bits are
the coordinates over the basis {1, w}. A GF(4) vector packs component i into bits 2i
and 2i+1; read as a GF(2) word of twice the length this is exactly its field reduction.
GF(2) vectors pack coordinate i into bit i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from pauligeom.errors import DimensionError, ParameterError
from pauligeom.validation import ParameterValidator

ZERO, ONE, OMEGA, OMEGA2 = 0, 1, 2, 3
GF4_ELEMENTS = (ZERO, ONE, OMEGA, OMEGA2)
GF4_SYMBOLS = ("0", "1", "w", "w2")

_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)
_INV = (None, 1, 3, 2)

# Bits 0, 2, 4, ... of a 64-bit word
_LOW = 0x5555_5555_5555_5555


def gf4_add(x: int, y: int) -> int:
    return x ^ y


def gf4_mul(x: int, y: int) -> int:
    """Product in GF(4) under w^2 = w + 1."""
    return _MUL[x][y]


def gf4_inv(x: int) -> int:
    """Multiplicative inverse; x^2 for x in {w, w^2}, 1 for 1."""
    if x == ZERO:
        raise ParameterError("zero has no inverse in GF(4)")
    return _INV[x]


def gf4_conj(x: int) -> int:
    """Frobenius conjugation x -> x^2, an involution fixing GF(2)."""
    return _MUL[x][x]


def gf4_trace(x: int) -> int:
    """Trace x + x^2 onto GF(2)."""
    return x ^ _MUL[x][x]


def gf4_scale_packed(word: int, lam: int) -> int:
    """Multiply every GF(4) component of a packed word by ``lam``."""
    if lam == ZERO:
        return 0
    if lam == ONE:
        return word
    lo = word & _LOW
    hi = (word >> 1) & _LOW
    if lam == OMEGA:
        # w * (x0 + x1 w) = x1 + (x0 + x1) w
        return hi | ((lo ^ hi) << 1)
    # w^2 * (x0 + x1 w) = (x0 + x1) + x0 w
    return (lo ^ hi) | (lo << 1)


@dataclass(frozen=True, slots=True)
class PackedField:
    """Coordinate access and scaling for a field whose vectors are packed words."""

    q: int
    width: int

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(range(self.q))

    def coord(self, word: int, i: int) -> int:
        return (word >> (self.width * i)) & (self.q - 1)

    def scale(self, word: int, lam: int) -> int:
        if self.q == 2:
            return word if lam else 0
        return gf4_scale_packed(word, lam)

    def inverse(self, lam: int) -> int:
        if self.q == 2:
            if lam == 0:
                raise ParameterError("zero has no inverse in GF(2)")
            return 1
        return gf4_inv(lam)

    def leading(self, word: int) -> int:
        """Index of the first nonzero coordinate of a nonzero word."""
        return ((word & -word).bit_length() - 1) // self.width

    def normalize(self, word: int) -> int:
        """Scale a nonzero word so its first nonzero coordinate is 1."""
        return self.scale(word, self.inverse(self.coord(word, self.leading(word))))

    def mask(self, n: int) -> int:
        return (1 << (self.width * n)) - 1


GF2 = PackedField(q=2, width=1)
GF4 = PackedField(q=4, width=2)


def packed_field(q: int) -> PackedField:
    ParameterValidator.validate_field_order(q)
    return GF2 if q == 2 else GF4


@dataclass(frozen=True, slots=True, order=True)
class GF2Vector:
    """Vector of GF(2)^n; coordinate i is bit i of ``bits``."""

    bits: int
    length: int

    def __post_init__(self):
        if not 0 <= self.length <= ParameterValidator.MAX_VECTOR_BITS:
            raise DimensionError(f"GF(2) vector length {self.length} out of range")
        if self.bits < 0 or self.bits >> self.length:
            raise DimensionError(f"bits {self.bits:#x} do not fit length {self.length}")

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> GF2Vector:
        bits = 0
        for i, c in enumerate(coords):
            if c not in (0, 1):
                raise ParameterError(f"GF(2) coordinate must be 0 or 1, got {c!r}")
            bits |= c << i
        return cls(bits, len(coords))

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.length))

    @property
    def field(self) -> PackedField:
        return GF2

    @property
    def packed(self) -> int:
        return self.bits

    def __add__(self, other: GF2Vector) -> GF2Vector:
        if self.length != other.length:
            raise DimensionError(f"cannot add vectors of length {self.length} and {other.length}")
        return GF2Vector(self.bits ^ other.bits, self.length)

    def dot(self, other: GF2Vector) -> int:
        if self.length != other.length:
            raise DimensionError("dot product of vectors with different lengths")
        return (self.bits & other.bits).bit_count() & 1

    def is_zero(self) -> bool:
        return self.bits == 0

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True, slots=True, order=True)
class GF4Vector:
    """Vector of GF(4)^n with component i in bits 2i, 2i+1 of ``packed``."""

    packed: int
    length: int

    def __post_init__(self):
        if not 0 <= 2 * self.length <= ParameterValidator.MAX_VECTOR_BITS:
            raise DimensionError(f"GF(4) vector length {self.length} out of range")
        if self.packed < 0 or self.packed >> (2 * self.length):
            raise DimensionError(f"word {self.packed:#x} does not fit length {self.length}")

    @classmethod
    def from_components(cls, components: Sequence[int]) -> GF4Vector:
        packed = 0
        for i, c in enumerate(components):
            if c not in GF4_ELEMENTS:
                raise ParameterError(f"GF(4) component must be a code in 0..3, got {c!r}")
            packed |= c << (2 * i)
        return cls(packed, len(components))

    @property
    def components(self) -> tuple[int, ...]:
        return tuple((self.packed >> (2 * i)) & 3 for i in range(self.length))

    @property
    def field(self) -> PackedField:
        return GF4

    def __add__(self, other: GF4Vector) -> GF4Vector:
        if self.length != other.length:
            raise DimensionError(f"cannot add vectors of length {self.length} and {other.length}")
        return GF4Vector(self.packed ^ other.packed, self.length)

    def scale(self, lam: int) -> GF4Vector:
        return GF4Vector(gf4_scale_packed(self.packed, lam), self.length)

    def is_zero(self) -> bool:
        return self.packed == 0

    def __str__(self) -> str:
        return "(" + ",".join(GF4_SYMBOLS[c] for c in self.components) + ")"


def field_reduce(v: GF4Vector) -> GF2Vector:
    """Write each x = x0 + x1 w as the bit pair (x0, x1) at positions 2i, 2i+1."""
    return GF2Vector(v.packed, 2 * v.length)


def field_lift(w: GF2Vector) -> GF4Vector:
    """Inverse of :func:`field_reduce`."""
    if w.length % 2:
        raise DimensionError(f"cannot lift a GF(2) vector of odd length {w.length}")
    return GF4Vector(w.bits, w.length // 2)


# ---------------------------------------------------------------
# Linear algebra on packed rows


def row_reduce(rows: Iterable[int], n: int, field: PackedField = GF2) -> tuple[int, ...]:
    """Canonical reduced row-echelon basis of the span of ``rows``.

    Pivots are the first nonzero coordinates, strictly increasing; every pivot is 1
    and the pivot column is zero in all other rows.
    """
    work = [r for r in rows if r]
    basis: list[int] = []
    for col in range(n):
        if not work:
            break
        pivot_idx = next((k for k, r in enumerate(work) if field.coord(r, col)), None)
        if pivot_idx is None:
            continue
        pivot = work.pop(pivot_idx)
        pivot = field.scale(pivot, field.inverse(field.coord(pivot, col)))
        work = [r ^ field.scale(pivot, field.coord(r, col)) for r in work]
        work = [r for r in work if r]
        basis = [b ^ field.scale(pivot, field.coord(b, col)) for b in basis]
        basis.append(pivot)
    return tuple(basis)


def reduce_against(word: int, basis: Sequence[int], field: PackedField = GF2) -> int:
    """Remainder of ``word`` modulo a reduced row-echelon ``basis``; zero iff contained."""
    for b in basis:
        c = field.coord(word, field.leading(b))
        if c:
            word ^= field.scale(b, c)
    return word


def gf2_rank(rows: Iterable[int], n: int) -> int:
    """Compute rank over GF(2)."""
    return len(row_reduce(rows, n, GF2))


def gf2_nullspace(rows: Iterable[int], n: int) -> list[int]:
    """Basis of {x : popcount(r & x) even for every row r}."""
    basis = row_reduce(rows, n, GF2)
    pivots = {GF2.leading(b): b for b in basis}
    kernel = []
    for free in range(n):
        if free in pivots:
            continue
        x = 1 << free
        for p, b in pivots.items():
            if (b >> free) & 1:
                x |= 1 << p
        kernel.append(x)
    return kernel


@dataclass(frozen=True, slots=True)
class GF2Matrix:
    """Square n x n matrix over GF(2) stored by column images: columns[j] = M e_j."""

    columns: tuple[int, ...]
    n: int

    def __post_init__(self):
        if len(self.columns) != self.n:
            raise DimensionError(f"expected {self.n} columns, got {len(self.columns)}")
        if any(c < 0 or c >> self.n for c in self.columns):
            raise DimensionError("column does not fit the matrix dimension")

    @classmethod
    def identity(cls, n: int) -> GF2Matrix:
        return cls(tuple(1 << j for j in range(n)), n)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> GF2Matrix:
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionError("matrix must be square")
        columns = tuple(sum((rows[i][j] & 1) << i for i in range(n)) for j in range(n))
        return cls(columns, n)

    def rows(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        return tuple(tuple((self.columns[j] >> i) & 1 for j in range(n)) for i in range(n))

    def apply(self, x: int) -> int:
        y = 0
        j = 0
        while x:
            if x & 1:
                y ^= self.columns[j]
            x >>= 1
            j += 1
        return y

    def apply_vector(self, v: GF2Vector) -> GF2Vector:
        if v.length != self.n:
            raise DimensionError(f"vector length {v.length} does not match matrix size {self.n}")
        return GF2Vector(self.apply(v.bits), self.n)

    def compose(self, other: GF2Matrix) -> GF2Matrix:
        """Matrix of ``self`` after ``other``."""
        if other.n != self.n:
            raise DimensionError("cannot compose matrices of different size")
        return GF2Matrix(tuple(self.apply(c) for c in other.columns), self.n)

    def is_invertible(self) -> bool:
        return gf2_rank(self.columns, self.n) == self.n

    def inverse(self) -> GF2Matrix:
        """Inverse by Gauss-Jordan elimination on [M^T | I]."""
        n = self.n
        # Row j of M^T is column j of M; reducing [M^T | I] yields [I | (M^T)^-1]
        augmented = [self.columns[j] | (1 << (n + j)) for j in range(n)]
        reduced = row_reduce(augmented, 2 * n, GF2)
        left = (1 << n) - 1
        if len(reduced) < n or any(reduced[i] & left != 1 << i for i in range(n)):
            raise ParameterError("matrix is singular")
        # Rows of (M^T)^-1 are the columns of M^-1
        return GF2Matrix(tuple(r >> n for r in reduced[:n]), n)
