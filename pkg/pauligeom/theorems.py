"""Verification pipelines from spreads and forms to reports.

Each pipeline composes pure stages and turns the first failing stage into a failed
:class:`VerificationReport` carrying a witness; parameter errors still raise.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, Hashable, Optional

from pauligeom.errors import ParameterError, StructureError
from pauligeom.forms import (
    QuadraticForm,
    QuadricKind,
    SymplecticForm,
    classify_quadric,
    enumerate_generators,
    form_equivalence_map,
    generator_families,
    hermitian_size,
    hermitian_variety,
    pullback_quadratic,
    quadric_points,
    quadric_size,
    standard_form,
    standard_hermitian,
)
from pauligeom.galois import GF2Matrix
from pauligeom.pauli import (
    PauliOperator,
    commutes,
    maximal_commuting_sets,
    operators_of,
    symmetric_set,
)
from pauligeom.projgeom import (
    ProjectivePoint,
    Subspace,
    count_points,
    enumerate_lines,
    enumerate_points,
)
from pauligeom.reports import VerificationReport
from pauligeom.spreads import (
    SegreModel,
    Spread,
    collect_solids,
    desarguesian_line_spread,
    segre_model,
    spread_violation,
    transport,
)
from pauligeom.validation import ParameterValidator

logger = logging.getLogger(__name__)

GQ_HALF_DIM = 4


@dataclass(frozen=True)
class PointLineGeometry:
    """Points with lines given as sets of point identifiers."""

    points: tuple[Hashable, ...]
    lines: tuple[frozenset, ...]

    def __post_init__(self):
        known = set(self.points)
        if len(known) != len(self.points):
            raise StructureError("repeated point identifier")
        if len(set(self.lines)) != len(self.lines):
            raise StructureError("repeated line")
        for i, line in enumerate(self.lines):
            if not line <= known:
                raise StructureError(f"line {i} contains unknown points")

    @property
    def parameters(self) -> Optional[tuple[int, int]]:
        """(s, t) when every line has s + 1 points and every point is on t + 1 lines."""
        sizes = {len(line) for line in self.lines}
        degrees = set(self.degrees().values())
        if len(sizes) != 1 or len(degrees) != 1:
            return None
        return sizes.pop() - 1, degrees.pop() - 1

    def degrees(self) -> dict[Hashable, int]:
        counts = Counter(p for line in self.lines for p in line)
        return {p: counts.get(p, 0) for p in self.points}


@dataclass(frozen=True)
class SpreadAlignment:
    """The Desarguesian spread carried onto the symmetric-operator quadric.

    ``transform`` satisfies Qh(T x) = Qs(x) for the Hermitian pullback Qh and the
    standard hyperbolic form Qs; ``transported`` holds T^-1 of every spread line in the
    same order, and ``partition`` the indices of the lines lying on Qs.
    """

    half_dim: int
    spread: Spread
    transported: Spread
    transform: GF2Matrix
    model: SegreModel
    partition: tuple[int, ...]

    def image_of(self, index: int) -> ProjectivePoint:
        return self.model.point_map[self.spread.lines[index]]


def _report(
    name: str, passed: bool, details: dict[str, Any], witness: Optional[dict[str, Any]] = None
) -> VerificationReport:
    if not passed and witness is None:
        witness = {"reason": "check failed"}
    logger.info(
        f"Check {name}: {'pass' if passed else 'fail'}",
        extra={"check": name, "passed": passed},
    )
    return VerificationReport(name=name, passed=passed, details=details, witness=witness)


def induced_spread_on_quadric(s: Spread, q: QuadraticForm) -> Optional[tuple[Subspace, ...]]:
    """Spread lines inside the quadric, if they exactly cover its points."""
    if q.dim != s.ambient_dim:
        raise ParameterError(f"quadric dimension {q.dim} does not match the spread")
    on_quadric = tuple(
        line for line in s.lines if all(q.value(p) == 0 for p in line.point_bits)
    )
    covered = {p for line in on_quadric for p in line.point_bits}
    zeros = {p.bits for p in quadric_points(q)}
    return on_quadric if covered == zeros else None


def counting_obstruction(n: int, kind: QuadricKind) -> VerificationReport:
    """|quadric| mod 3 against the parity rule.

    Hyperbolic with N odd and elliptic with N even must leave remainder 2, so no
    partition of the quadric into lines exists; the matching parities leave 0.
    """
    kind = QuadricKind(kind)
    ParameterValidator.validate_half_dimension(n)
    if kind is QuadricKind.DEGENERATE:
        raise ParameterError("counting obstruction needs a hyperbolic or elliptic quadric")
    count = len(quadric_points(standard_form(kind, n)))
    remainder = count % 3
    mismatched = (kind is QuadricKind.HYPERBOLIC) == (n % 2 == 1)
    expected = 2 if mismatched else 0
    details = {
        "n": n,
        "kind": kind.value,
        "quadric_points": count,
        "remainder": remainder,
        "obstructed": remainder != 0,
        "obstruction": f"{count} mod 3 = {remainder}",
    }
    witness = None if remainder == expected else {"expected_remainder": expected}
    name = f"counting_obstruction_{kind.value}"
    return _report(name, remainder == expected, details, witness)


def dye_verify(n: int) -> VerificationReport:
    """Induced spread on the Hermitian pullback quadric and its Segre image."""
    ParameterValidator.validate_qubit_count(n, high=ParameterValidator.MAX_VERIFY_QUBITS)
    h = standard_hermitian(n)
    q = pullback_quadratic(h)
    kind = classify_quadric(q)
    expected = QuadricKind.HYPERBOLIC if n % 2 == 0 else QuadricKind.ELLIPTIC
    zeros = len(quadric_points(q))
    details: dict[str, Any] = {"n": n, "quadric_kind": kind.value, "quadric_points": zeros}
    if kind is not expected:
        return _report(
            "dye", False, details, {"stage": "classify", "expected": expected.value}
        )

    spread = desarguesian_line_spread(n)
    partition = induced_spread_on_quadric(spread, q)
    if partition is None:
        return _report("dye", False, details, {"stage": "induced_spread"})
    details["spread_lines_on_quadric"] = len(partition)

    model = segre_model(spread)
    image = {model.point_map[line] for line in partition}
    hermitian = set(hermitian_variety(h))
    details["hermitian_points"] = len(hermitian)
    details["image_points"] = len(image)
    details["spread_lines"] = len(spread)
    if image != hermitian:
        witness = {
            "stage": "segre_image",
            "outside_variety": sorted(str(p) for p in image - hermitian)[:5],
            "missed": sorted(str(p) for p in hermitian - image)[:5],
        }
        return _report("dye", False, details, witness)
    return _report("dye", True, details)


@lru_cache(maxsize=4)
def align_symmetric_quadric(n: int) -> SpreadAlignment:
    """Carry the Desarguesian spread onto the standard hyperbolic quadric (N even).

    Raises:
        ParameterError: If N is odd.
        StructureError: If the transported spread does not partition the quadric.
    """
    ParameterValidator.validate_qubit_count(n, high=ParameterValidator.MAX_VERIFY_QUBITS)
    if n % 2:
        raise ParameterError("the symmetric quadric carries an induced spread only for even N")
    standard = standard_form(QuadricKind.HYPERBOLIC, n)
    pullback = pullback_quadratic(standard_hermitian(n))
    t = form_equivalence_map(standard, pullback)
    spread = desarguesian_line_spread(n)
    transported = transport(spread, t.inverse())
    partition = induced_spread_on_quadric(transported, standard)
    if partition is None:
        raise StructureError("transported spread does not partition the quadric", {"n": n})
    positions = transported.position
    alignment = SpreadAlignment(
        half_dim=n,
        spread=spread,
        transported=transported,
        transform=t,
        model=segre_model(spread),
        partition=tuple(sorted(positions[line] for line in partition)),
    )
    logger.info(
        "Aligned spread with symmetric quadric",
        extra={"n": n, "lines_on_quadric": len(alignment.partition)},
    )
    return alignment


def main_observation(n: int) -> VerificationReport:
    """Symmetric operators map onto H(N-1, 4) through a geometric spread iff N is even."""
    ParameterValidator.validate_qubit_count(n, high=ParameterValidator.MAX_VERIFY_QUBITS)
    symmetric = symmetric_set(n)
    standard = standard_form(QuadricKind.HYPERBOLIC, n)
    points = {op.point.bits for op in symmetric}
    details: dict[str, Any] = {"n": n, "symmetric_operators": len(symmetric)}
    if points != {p.bits for p in quadric_points(standard)}:
        return _report("main_observation", False, details, {"stage": "symmetric_quadric"})

    if n % 2:
        details["branch"] = "odd"
        obstruction = counting_obstruction(n, QuadricKind.HYPERBOLIC)
        details["remainder"] = obstruction.details["remainder"]
        details["obstruction"] = obstruction.details["obstruction"]
        if obstruction.details["remainder"] != 2:
            return _report("main_observation", False, details, {"stage": "obstruction"})
        return _report("main_observation", True, details)

    details["branch"] = "even"
    try:
        alignment = align_symmetric_quadric(n)
    except StructureError as exc:
        return _report("main_observation", False, details, {"stage": "alignment", **exc.details})

    transported = alignment.transported
    violation = spread_violation(transported.lines, transported.ambient_dim - 1)
    if violation is None:
        _, violation = collect_solids(transported)
    if violation is not None:
        return _report("main_observation", False, details, {"stage": "transport", **violation})

    image = {alignment.image_of(i) for i in alignment.partition}
    hermitian = set(hermitian_variety(standard_hermitian(n)))
    details["spread_lines_on_quadric"] = len(alignment.partition)
    details["hermitian_points"] = len(hermitian)
    details["operators_per_point"] = len(symmetric) // max(len(alignment.partition), 1)
    if image != hermitian:
        return _report("main_observation", False, details, {"stage": "segre_image"})
    return _report("main_observation", True, details)


def three_to_one_table(n: int) -> list[dict[str, Any]]:
    """One row per point of H(N-1, 4): its coordinates and the three operator labels.

    Raises:
        ParameterError: If N is odd.
        StructureError: If the rows do not partition the symmetric operators.
    """
    alignment = align_symmetric_quadric(n)
    rows = []
    for i in alignment.partition:
        point = alignment.image_of(i)
        labels = sorted(op.label for op in operators_of(alignment.transported.lines[i]))
        rows.append((point.bits, {"point": str(point), "labels": labels}))
    rows.sort(key=lambda row: row[0])
    table = [row for _, row in rows]

    seen = [label for row in table for label in row["labels"]]
    expected = {op.label for op in symmetric_set(n)}
    if len(seen) != len(set(seen)) or set(seen) != expected:
        raise StructureError("rows do not partition the symmetric operators", {"n": n})
    return table


def three_to_one_report(n: int) -> VerificationReport:
    table = three_to_one_table(n)
    commuting = all(
        commutes(PauliOperator.from_label(x), PauliOperator.from_label(y))
        for row in table
        for x, y in combinations(row["labels"], 2)
    )
    details = {
        "n": n,
        "rows": len(table),
        "operators": sum(len(row["labels"]) for row in table),
        "rows_commute": commuting,
        "table": table,
    }
    passed = commuting and len(table) == hermitian_size(n)
    return _report("three_to_one", passed, details, None if passed else {"rows": len(table)})


# ---------------------------------------------------------------
# Generalized quadrangles


def gq_from_hermitian_surface() -> PointLineGeometry:
    """H(3, 4) with the lines of PG(3, 4) it contains; points are numbered 0..44."""
    points = hermitian_variety(standard_hermitian(GQ_HALF_DIM))
    index = {p.bits: i for i, p in enumerate(points)}
    lines = tuple(
        frozenset(index[w] for w in line.point_bits)
        for line in enumerate_lines(GQ_HALF_DIM - 1, 4)
        if line.point_bits <= index.keys()
    )
    logger.info("Built GQ from H(3,4)", extra={"points": len(points), "lines": len(lines)})
    return PointLineGeometry(points=tuple(range(len(points))), lines=lines)


def dual_geometry(g: PointLineGeometry) -> PointLineGeometry:
    """Swap points and lines: line j becomes point j, point p the set of lines through p."""
    through: dict[Hashable, list[int]] = {p: [] for p in g.points}
    for j, line in enumerate(g.lines):
        for p in line:
            through[p].append(j)
    return PointLineGeometry(
        points=tuple(range(len(g.lines))),
        lines=tuple(frozenset(through[p]) for p in g.points),
    )


def verify_gq_axioms(g: PointLineGeometry, name: str = "gq_axioms") -> VerificationReport:
    """Regularity, at most one line per point pair, and the anti-flag axiom."""
    details: dict[str, Any] = {"points": len(g.points), "lines": len(g.lines)}
    params = g.parameters
    if params is None:
        return _report(name, False, details, {"reason": "line sizes or point degrees vary"})
    s, t = params
    details["s"], details["t"] = s, t

    line_of_pair: dict[frozenset, int] = {}
    for j, line in enumerate(g.lines):
        for pair in combinations(sorted(line), 2):
            key = frozenset(pair)
            if key in line_of_pair:
                witness = {"reason": "two points on two lines", "points": list(pair)}
                return _report(name, False, details, witness)
            line_of_pair[key] = j

    for j, line in enumerate(g.lines):
        for p in g.points:
            if p in line:
                continue
            collinear = sum(1 for x in line if frozenset((p, x)) in line_of_pair)
            if collinear != 1:
                witness = {"reason": "anti-flag", "point": p, "line": j, "collinear": collinear}
                return _report(name, False, details, witness)

    details["point_identity"] = (s + 1) * (s * t + 1) == len(g.points)
    details["line_identity"] = (t + 1) * (s * t + 1) == len(g.lines)
    passed = details["point_identity"] and details["line_identity"]
    return _report(name, passed, details, None if passed else {"reason": "counting identity"})


def gq_reports() -> list[VerificationReport]:
    gq = gq_from_hermitian_surface()
    return [verify_gq_axioms(gq, "gq_hermitian"), verify_gq_axioms(dual_geometry(gq), "gq_dual")]


# ---------------------------------------------------------------
# Reports behind the remaining CLI commands


def points_report(d: int, q: int) -> VerificationReport:
    points = enumerate_points(d, q)
    expected = count_points(d, q)
    details = {"d": d, "q": q, "count": len(points), "points": [str(p) for p in points]}
    passed = len(points) == expected
    return _report("points", passed, details, None if passed else {"expected": expected})


def spread_report(n: int, check_geometric: bool = False) -> list[VerificationReport]:
    """Spread axioms, and with ``check_geometric`` the geometric property and Segre model."""
    spread = desarguesian_line_spread(n)
    expected = (4**n - 1) // 3
    violation = spread_violation(spread.lines, 2 * n - 1)
    if violation is None and len(spread) != expected:
        violation = {"reason": "line count", "expected": expected}
    details = {"n": n, "lines": len(spread), "points": count_points(2 * n - 1, 2)}
    reports = [_report("spread", violation is None, details, violation)]
    if not check_geometric:
        return reports

    solids, violation = collect_solids(spread)
    reports.append(
        _report("geometric", violation is None, {"n": n, "solids": len(solids)}, violation)
    )
    if violation is not None:
        return reports

    model = segre_model(spread, solids)
    witness = model.incidence_violation()
    if witness is None and not model.is_bijective(n):
        witness = {"reason": "point map is not a bijection onto PG(N-1,4)"}
    segre_details = {
        "n": n,
        "points": len(set(model.point_map.values())),
        "lines": len(set(model.line_map.values())),
        "expected_points": count_points(n - 1, 4),
        "expected_lines": len(enumerate_lines(n - 1, 4)),
    }
    if witness is None and segre_details["lines"] != segre_details["expected_lines"]:
        witness = {"reason": "line map is not onto the lines of PG(N-1,4)"}
    reports.append(_report("segre", witness is None, segre_details, witness))
    return reports


def symmetric_set_report(n: int) -> VerificationReport:
    ops = symmetric_set(n)
    standard = standard_form(QuadricKind.HYPERBOLIC, n)
    on_quadric = {op.point.bits for op in ops} == {p.bits for p in quadric_points(standard)}
    expected = quadric_size(QuadricKind.HYPERBOLIC, n)
    details = {
        "n": n,
        "count": len(ops),
        "expected": expected,
        "equals_hyperbolic_quadric": on_quadric,
        "labels": [op.label for op in ops],
    }
    passed = on_quadric and len(ops) == expected
    return _report("symmetric_set", passed, details, None if passed else {"count": len(ops)})


def triality_numerology() -> VerificationReport:
    """Q+(7,2): 135 points, 270 generators in two families of 135."""
    q = standard_form(QuadricKind.HYPERBOLIC, GQ_HALF_DIM)
    points = len(quadric_points(q))
    gens = enumerate_generators(q)
    details: dict[str, Any] = {"quadric_points": points, "generators": len(gens)}
    try:
        first, second = generator_families(gens)
    except StructureError as exc:
        return _report("triality", False, details, {"stage": "families", **exc.details})
    details["families"] = [len(first), len(second)]
    passed = points == len(first) == len(second) == 135 and len(gens) == 270
    return _report("triality", passed, details, None if passed else {"stage": "counts"})


def commuting_sets_report(n: int) -> VerificationReport:
    """Maximal commuting sets: count prod(2^i + 1), isotropy and maximality."""
    subspaces = maximal_commuting_sets(n)
    expected = 1
    for i in range(1, n + 1):
        expected *= 2**i + 1
    form = SymplecticForm.standard(n)
    witness = None
    for s in subspaces:
        if s.rank != n or not form.is_totally_isotropic(sorted(s.point_bits)):
            witness = {"reason": "not a maximal totally isotropic subspace", "subspace": str(s)}
            break
    details = {
        "n": n,
        "count": len(subspaces),
        "expected": expected,
        "operators_per_set": 2**n - 1,
    }
    if witness is None and len(subspaces) != expected:
        witness = {"reason": "count", "expected": expected}
    return _report("maximal_commuting_sets", witness is None, details, witness)


def obstruction_reports(n: int) -> list[VerificationReport]:
    """Remainder check for both quadric kinds in dimension 2N."""
    kinds = (QuadricKind.HYPERBOLIC, QuadricKind.ELLIPTIC)
    return [counting_obstruction(n, kind) for kind in kinds]

