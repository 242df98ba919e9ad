"""Line spreads of PG(2N-1, 2) and the Segre model of PG(N-1, 4).

The Desarguesian spread is obtained by field reduction: every point <v> of PG(N-1, 4)
becomes the GF(2) line {v, w v, w^2 v} of PG(2N-1, 2). Pairs of spread lines span solids,
and a spread is geometric when each such solid is partitioned by the spread lines in it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Any, Iterable, Optional

from pauligeom.errors import ParameterError, StructureError
from pauligeom.galois import OMEGA, GF2Matrix, GF2Vector, field_lift, gf4_scale_packed
from pauligeom.projgeom import (
    ProjectivePoint,
    Subspace,
    count_points,
    enumerate_points,
    join,
    points_of,
    span,
)
from pauligeom.validation import ParameterValidator

logger = logging.getLogger(__name__)

LINE_POINTS = 3
SOLID_LINES = 5


@dataclass(frozen=True)
class Spread:
    """Ordered set of pairwise disjoint lines covering PG(2N-1, 2)."""

    lines: tuple[Subspace, ...]
    half_dim: int

    @property
    def ambient_dim(self) -> int:
        """Vector dimension 2N."""
        return 2 * self.half_dim

    def __len__(self) -> int:
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    @cached_property
    def line_index(self) -> dict[int, int]:
        """Packed point -> index of the spread line through it."""
        return {p: i for i, line in enumerate(self.lines) for p in line.point_bits}

    @cached_property
    def position(self) -> dict[Subspace, int]:
        return {line: i for i, line in enumerate(self.lines)}


@dataclass(frozen=True, eq=False)
class SegreModel:
    """PG(N-1, 4) realized on a geometric spread.

    ``point_map`` sends spread lines to points of PG(N-1, 4), ``line_map`` sends the solids
    spanned by pairs of spread lines to lines of PG(N-1, 4), and ``solid_lines`` lists the
    spread lines contained in each solid.
    """

    point_map: dict[Subspace, ProjectivePoint]
    line_map: dict[Subspace, Subspace]
    solid_lines: dict[Subspace, tuple[Subspace, ...]] = field(repr=False)

    def is_bijective(self, half_dim: int) -> bool:
        """point_map is onto the points of PG(N-1, 4) without repetition."""
        targets = set(self.point_map.values())
        return len(targets) == len(self.point_map) and targets == set(
            enumerate_points(half_dim - 1, 4)
        )

    def incidence_violation(self) -> Optional[dict[str, Any]]:
        """First solid whose spread lines do not map onto the points of its image line."""
        images = set()
        for solid, members in self.solid_lines.items():
            image_line = self.line_map[solid]
            images.add(image_line)
            mapped = {self.point_map[line] for line in members}
            if mapped != set(points_of(image_line)):
                return {
                    "solid": str(solid),
                    "image_line": str(image_line),
                    "mapped_points": sorted(str(p) for p in mapped),
                }
        if len(images) != len(self.line_map):
            return {"reason": "two solids share an image line"}
        return None


def spread_admissible(d: int, t: int) -> bool:
    """PG(d, q) has a t-spread iff (t + 1) | (d + 1)."""
    if d < 1 or not 0 <= t < d:
        raise ParameterError(f"need d >= 1 and 0 <= t < d, got d={d}, t={t}")
    return (d + 1) % (t + 1) == 0


@lru_cache(maxsize=8)
def desarguesian_line_spread(n: int) -> Spread:
    """Field-reduction spread of PG(2N-1, 2), line i coming from point i of PG(N-1, 4)."""
    ParameterValidator.validate_qubit_count(n)
    lines = tuple(
        Subspace.from_rows((p.bits, gf4_scale_packed(p.bits, OMEGA)), 2 * n, 2)
        for p in enumerate_points(n - 1, 4)
    )
    logger.info("Built Desarguesian spread", extra={"n": n, "lines": len(lines)})
    return Spread(lines=lines, half_dim=n)


def spread_violation(candidate: Iterable[Subspace], d: int) -> Optional[dict[str, Any]]:
    """Witness that ``candidate`` is not a line spread of PG(d, 2), or None."""
    owner: dict[int, int] = {}
    for i, line in enumerate(candidate):
        if line.q != 2 or line.ambient_dim != d + 1 or line.rank != 2:
            return {"reason": "not a line of the ambient space", "line": i}
        for p in line.point_bits:
            if p in owner:
                return {
                    "reason": "lines meet",
                    "lines": [owner[p], i],
                    "point": str(GF2Vector(p, d + 1)),
                }
            owner[p] = i
    total = count_points(d, 2)
    if len(owner) != total:
        missing = next(p for p in range(1, total + 1) if p not in owner)
        return {
            "reason": "points not covered",
            "covered": len(owner),
            "expected": total,
            "point": str(GF2Vector(missing, d + 1)),
        }
    return None


def is_spread(candidate: Iterable[Subspace], d: int) -> bool:
    """True iff the lines are pairwise disjoint and cover PG(d, 2)."""
    return spread_violation(candidate, d) is None


def collect_solids(
    s: Spread,
) -> tuple[dict[Subspace, tuple[int, ...]], Optional[dict[str, Any]]]:
    """Solids spanned by pairs of spread lines, with the indices of the lines inside.

    Every pair of lines is visited, but pairs already lying in a verified solid are
    skipped since their span is that solid. Returns the solids found so far and a
    witness for the first solid that is not partitioned by the spread.
    """
    index = s.line_index
    solids: dict[Subspace, tuple[int, ...]] = {}
    covered: set[tuple[int, int]] = set()
    for i, j in combinations(range(len(s.lines)), 2):
        if (i, j) in covered:
            continue
        solid = join(s.lines[i], s.lines[j])
        members = tuple(sorted({index[p] for p in solid.point_bits}))
        inside = all(s.lines[k].point_bits <= solid.point_bits for k in members)
        if len(members) != SOLID_LINES or not inside:
            return solids, {
                "reason": "solid not partitioned by spread lines",
                "pair": [i, j],
                "lines_meeting_solid": len(members),
            }
        solids[solid] = members
        covered.update(combinations(members, 2))
    return solids, None


def is_geometric(s: Spread) -> bool:
    """True iff every solid spanned by two spread lines is partitioned by spread lines."""
    if not is_spread(s.lines, s.ambient_dim - 1):
        return False
    _, violation = collect_solids(s)
    return violation is None


def segre_model(
    s: Spread, solids: Optional[dict[Subspace, tuple[int, ...]]] = None
) -> SegreModel:
    """Identify spread lines with points and pair-spanned solids with lines of PG(N-1, 4).

    ``solids`` may be passed from an earlier successful ``collect_solids(s)`` run, in
    which case the spread and geometric checks are not repeated.

    Raises:
        StructureError: If the spread is not a geometric spread closed under
            multiplication by w (the Desarguesian spread in the standard frame).
    """
    if solids is None:
        violation = spread_violation(s.lines, s.ambient_dim - 1)
        if violation is None:
            solids, violation = collect_solids(s)
        if violation is not None:
            raise StructureError("spread is not geometric", details=violation)

    point_map: dict[Subspace, ProjectivePoint] = {}
    for line in s.lines:
        rep = min(line.point_bits)
        if gf4_scale_packed(rep, OMEGA) not in line.point_bits:
            raise StructureError(
                "spread line is not a GF(4) point under field reduction",
                details={"line": str(line)},
            )
        point_map[line] = ProjectivePoint.from_vector(field_lift(GF2Vector(rep, s.ambient_dim)))

    line_map: dict[Subspace, Subspace] = {}
    solid_lines: dict[Subspace, tuple[Subspace, ...]] = {}
    for solid, members in solids.items():
        lines = tuple(s.lines[k] for k in members)
        line_map[solid] = span([point_map[lines[0]], point_map[lines[1]]])
        solid_lines[solid] = lines

    logger.info(
        "Built Segre model",
        extra={"n": s.half_dim, "points": len(point_map), "lines": len(line_map)},
    )
    return SegreModel(point_map=point_map, line_map=line_map, solid_lines=solid_lines)


def transport(s: Spread, matrix: GF2Matrix) -> Spread:
    """Image of a spread under an invertible linear map, keeping line order."""
    if matrix.n != s.ambient_dim:
        raise ParameterError(f"matrix size {matrix.n} does not match spread dimension")
    if not matrix.is_invertible():
        raise ParameterError("cannot transport a spread through a singular matrix")
    lines = tuple(
        Subspace.from_rows((matrix.apply(b) for b in line.basis), s.ambient_dim, 2)
        for line in s.lines
    )
    return Spread(lines=lines, half_dim=s.half_dim)
