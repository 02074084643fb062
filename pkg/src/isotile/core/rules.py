"""Local rules: edge matching, color alternation, legal crossings, validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from math import gcd

import structlog

from isotile.core.crossings import (
    CrossingClass,
    CrossingKind,
    CrossingPattern,
    CrossingTableError,
    LegalCrossingTable,
    alternation_errors,
    alternative_reading_holds,
    canonical_codes,
    chirality_errors,
    classify_crossing,
    crossing_at,
    pattern_constraint_errors,
)
from isotile.core.geometry import LatticePoint
from isotile.core.substitution import DEFAULT_SEED, SupertileSpec, supertile
from isotile.core.tiles import EdgeKey, Patch, TileColor

logger = structlog.get_logger()

MIN_ORACLE_LEVEL = 8


class ProseConstraintViolation(RuntimeError):
    """Raised when a harvested crossing breaks a stated crossing constraint."""

    def __init__(self, vertex: LatticePoint, problems: list[str]) -> None:
        self.vertex = vertex
        self.problems = problems
        super().__init__(f"Crossing at {vertex.as_pair()}: {'; '.join(problems)}")


class ValidationMode(StrEnum):
    """Which vertices carry crossing constraints.

    ``interior`` reads the patch as a piece of a plane tiling: every vertex
    covering at least a half turn must be a full legal crossing.
    ``supertile`` accepts halves of legal crossings on the boundary.
    ``region`` constrains only vertices the patch surrounds completely.
    """

    PLANE_INTERIOR = "interior"
    SUPERTILE_BOUNDARY = "supertile"
    REGION = "region"



class EdgeViolationKind(StrEnum):
    MISMATCH = "mismatch"
    PARTIAL_CONTACT = "partial-contact"
    OVERLAP = "overlap"


@dataclass(frozen=True, order=True)
class EdgeViolation:
    edge: EdgeKey
    kind: EdgeViolationKind
    detail: str = field(default="", compare=False)


@dataclass(frozen=True, order=True)
class ColorViolation:
    edge: EdgeKey
    color: TileColor


@dataclass(frozen=True, order=True)
class CrossingViolation:
    vertex: LatticePoint
    found: CrossingClass
    detail: str = field(default="", compare=False)


@dataclass(frozen=True)
class ValidationReport:
    """All rule violations of a patch, in vertex and edge order."""

    mode: ValidationMode
    edge_violations: tuple[EdgeViolation, ...] = ()
    color_violations: tuple[ColorViolation, ...] = ()
    crossing_violations: tuple[CrossingViolation, ...] = ()

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    @property
    def violation_count(self) -> int:
        return (
            len(self.edge_violations)
            + len(self.color_violations)
            + len(self.crossing_violations)
        )


def check_edges(p: Patch) -> list[EdgeViolation]:
    """Shared sides must carry the same color and the same absolute arrow.

    Non-edge-to-edge contact (a vertex inside another tile's side) is reported
    as a partial contact on that side.
    """
    violations: list[EdgeViolation] = []
    vertices = p.vertex_index
    for key, entries in p.edge_index.items():
        start, end = key
        delta = end - start
        steps = gcd(delta.x, delta.y)
        unit = LatticePoint(delta.x // steps, delta.y // steps)
        for i in range(1, steps):
            inner = start + unit.scaled(i)
            if inner in vertices:
                violations.append(
                    EdgeViolation(
                        key,
                        EdgeViolationKind.PARTIAL_CONTACT,
                        f"vertex {inner.as_pair()} lies inside the side",
                    )
                )
                break
        if len(entries) > 2:
            violations.append(
                EdgeViolation(key, EdgeViolationKind.OVERLAP, f"{len(entries)} tiles")
            )
            continue
        if len(entries) < 2:
            continue
        (first, first_side), (second, second_side) = entries
        first_color = first.decoration(first_side).color
        second_color = second.decoration(second_side).color
        if first_color is not second_color:
            violations.append(
                EdgeViolation(
                    key,
                    EdgeViolationKind.MISMATCH,
                    f"colors {first_color.value} and {second_color.value}",
                )
            )
        elif first.arrow(first_side) != second.arrow(second_side):
            violations.append(
                EdgeViolation(key, EdgeViolationKind.MISMATCH, "opposite arrows")
            )
    return violations


def check_colors(p: Patch) -> list[ColorViolation]:
    """Tiles sharing a side must have different body colors."""
    violations: list[ColorViolation] = []
    for key, entries in p.edge_index.items():
        if len(entries) != 2:
            continue
        (first, _), (second, _) = entries
        if first.body is second.body:
            violations.append(ColorViolation(key, first.body))
    return violations


def default_crossing_table() -> LegalCrossingTable:
    """The packaged crossing table, or the settings override."""
    from isotile.formats.document import load_crossing_table  # noqa: PLC0415

    return load_crossing_table()


def validate(
    p: Patch,
    mode: ValidationMode = ValidationMode.PLANE_INTERIOR,
    table: LegalCrossingTable | None = None,
) -> ValidationReport:
    """Check all local rules.

    Interior vertices must be legal C4 or C8 crossings in every mode. A
    non-extreme boundary vertex must be a full legal crossing in interior
    mode, a half of one in supertile mode, and is free in region mode.
    Extreme vertices are never constrained, so interior mode reports every
    vertex supertile mode reports.

    Args:
        p: Patch to validate
        mode: Validation mode
        table: Legal crossing table; the packaged table when omitted

    Returns:
        Report listing every violation with its location
    """
    if table is None:
        table = default_crossing_table()
    crossing_violations: list[CrossingViolation] = []
    for v, units in p.angle_units.items():
        interior = p.is_interior_vertex(v)
        if interior or (mode is ValidationMode.PLANE_INTERIOR and units >= 4):
            found = classify_crossing(crossing_at(p, v), table, at_boundary=False)
            if found not in (CrossingClass.C4, CrossingClass.C8):
                reason = "interior" if interior else "incomplete boundary"
                crossing_violations.append(
                    CrossingViolation(v, found, f"{reason} crossing is not legal")
                )
        elif mode is ValidationMode.SUPERTILE_BOUNDARY and units >= 4:
            found = classify_crossing(crossing_at(p, v), table, at_boundary=True)
            if found is not CrossingClass.BOUNDARY_HALF:
                crossing_violations.append(
                    CrossingViolation(v, found, "boundary crossing is not a legal half")
                )
    report = ValidationReport(
        mode=mode,
        edge_violations=tuple(check_edges(p)),
        color_violations=tuple(check_colors(p)),
        crossing_violations=tuple(crossing_violations),
    )
    logger.debug(
        "patch_validated",
        mode=mode.value,
        tiles=len(p),
        violations=report.violation_count,
    )
    return report


def derive_crossing_table(
    oracle_level: int = MIN_ORACLE_LEVEL, seed: str = DEFAULT_SEED
) -> LegalCrossingTable:
    """Harvest the legal crossings of a deep supertile.

    Every interior crossing of the supertile is canonicalized up to rotation
    and checked against the stated crossing constraints: the through-axis, the
    inward perpendiculars of different colors, the outward diagonals colored
    red left and green right of each approach, differently colored orthogonal
    outward arrows, alternating bodies and side kinds at C8 centers, and the
    red-left/green-right chirality of C4 corners.

    Args:
        oracle_level: Supertile depth, at least 8
        seed: Seed decoration string

    Returns:
        The derived table

    Raises:
        ValueError: If ``oracle_level`` is below 8
        ProseConstraintViolation: If a harvested crossing breaks a constraint
    """
    if oracle_level < MIN_ORACLE_LEVEL:
        raise ValueError(
            f"oracle_level must be at least {MIN_ORACLE_LEVEL}, got {oracle_level}"
        )
    patch = supertile(SupertileSpec.from_code(oracle_level, seed))
    c4: set[CrossingPattern] = set()
    c8: set[CrossingPattern] = set()
    for v in interior_vertices(patch):
        crossing = crossing_at(patch, v)
        try:
            pattern = CrossingPattern.from_codes(crossing.codes)
        except CrossingTableError as e:
            raise ProseConstraintViolation(v, [str(e)]) from e
        problems = pattern_constraint_errors(pattern)
        span = 2 if pattern.kind is CrossingKind.C4 else 1
        if any(corner.span != span for corner in crossing.corners):
            problems.append("right and acute corners meet at one center")
        if pattern.kind is CrossingKind.C4:
            _, steps = canonical_codes(crossing.codes)
            perps = tuple((ray + steps) % 8 for ray in pattern.perpendicular_rays)
            problems.extend(chirality_errors(crossing, perps))
            c4.add(pattern)
        else:
            problems.extend(alternation_errors(crossing))
            c8.add(pattern)
        if problems:
            raise ProseConstraintViolation(v, problems)
    table = LegalCrossingTable(
        c4=tuple(c4),
        c8=tuple(c8),
        alternative_reading_holds=all(
            alternative_reading_holds(pattern) for pattern in c4 | c8
        ),
        oracle_level=oracle_level,
    )
    logger.info(
        "crossing_table_derived",
        oracle_level=oracle_level,
        c4=len(table.c4),
        c8=len(table.c8),
    )
    return table


def interior_vertices(p: Patch) -> list[LatticePoint]:
    """Vertices whose incident corners close up to a full turn."""
    return [v for v, units in p.angle_units.items() if units == 8]
