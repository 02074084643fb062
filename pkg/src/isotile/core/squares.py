"""Square tiles: quadruples of triangles around a C4, grouping and cutting."""

from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

import structlog

from isotile.core.analysis import UpTo, tile_label
from isotile.core.crossings import (
    CrossingClass,
    CrossingKind,
    CrossingPattern,
    LegalCrossingTable,
    chirality_errors,
    classify_crossing,
    crossing_at,
    pattern_constraint_errors,
)
from isotile.core.geometry import ORIGIN, Direction8, LatticePoint, SimilarityMap
from isotile.core.rules import ValidationMode, ValidationReport, validate
from isotile.core.tiles import (
    ALL_DECORATIONS,
    Patch,
    Sense,
    SideDecoration,
    TileColor,
    TriangleTile,
    VertexRole,
)

logger = structlog.get_logger()

QuarterTiles = tuple[TriangleTile, TriangleTile, TriangleTile, TriangleTile]


class SquareGeometryError(ValueError):
    """Raised when four triangles do not form a decorated square tile."""


class ConflictingGrouping(ValueError):
    """Raised when a tile would belong to two squares."""


def _quarter_start(t: TriangleTile) -> Direction8:
    start, _ = t.corner_at(VertexRole.R)
    return start


@dataclass(frozen=True, order=True)
class SquareTile:
    """Four triangles with their right angles at ``center``.

    The quarter tiles are the source of truth; their hypotenuses are the outer
    sides of the square and their legs are its half-diagonals. Quarters are
    kept ordered by the counterclockwise start ray of their right angle.
    """

    center: LatticePoint
    quarter_tiles: QuarterTiles

    def __post_init__(self) -> None:
        tiles = self.quarter_tiles
        if len(tiles) != 4:
            raise SquareGeometryError(
                f"A square has 4 quarter tiles, got {len(tiles)}"
            )
        center = self.center.as_pair()
        if any(t.r != self.center for t in tiles):
            raise SquareGeometryError(
                f"Every quarter tile needs its right angle at {center}"
            )
        if len({t.size for t in tiles}) != 1:
            raise SquareGeometryError(f"Quarter tiles at {center} differ in size")
        ordered = tuple(sorted(tiles, key=_quarter_start))
        starts = [_quarter_start(t).value for t in ordered]
        if any((b - a) % 8 != 2 for a, b in zip(starts, starts[1:], strict=False)):
            raise SquareGeometryError(
                f"Quarter tiles at {center} do not fill the square"
            )
        object.__setattr__(self, "quarter_tiles", ordered)
        problems = square_center_errors(self.center, ordered)
        if problems:
            raise SquareGeometryError(
                f"Center crossing at {center} is not a legal C4: {'; '.join(problems)}"
            )

    @property
    def size(self) -> int:
        return self.quarter_tiles[0].size

    @property
    def legs_diagonal(self) -> bool:
        """True when the half-diagonals run along diagonal lattice directions."""
        return _quarter_start(self.quarter_tiles[0]).is_diagonal

    @property
    def outer_sides(self) -> tuple[SideDecoration, ...]:
        return tuple(t.dec_hyp for t in self.quarter_tiles)

    @property
    def half_diagonals(self) -> tuple[SideDecoration, ...]:
        """Leg decorations of every quarter, both sides of each half-diagonal."""
        return tuple(
            dec for t in self.quarter_tiles for dec in (t.dec_leg_a, t.dec_leg_b)
        )

    @property
    def bodies(self) -> tuple[TileColor, ...]:
        return tuple(t.body for t in self.quarter_tiles)

    def translated(self, offset: LatticePoint) -> SquareTile:
        m = SimilarityMap(0, 0, offset)
        return SquareTile(
            self.center + offset,
            _quarters(t.transformed(m) for t in self.quarter_tiles),
        )

    def rotated(self, quarter_turns: int) -> SquareTile:
        """Rotate about the center by ``quarter_turns`` * 90 degrees."""
        to_origin = SimilarityMap(0, 0, -self.center)
        turn = SimilarityMap(2 * quarter_turns, 0, self.center)
        return SquareTile(
            self.center,
            _quarters(
                t.transformed(to_origin).transformed(turn) for t in self.quarter_tiles
            ),
        )


def _quarters(tiles: Iterable[TriangleTile]) -> QuarterTiles:
    a, b, c, d = tiles
    return (a, b, c, d)


def square_center_errors(
    center: LatticePoint, tiles: tuple[TriangleTile, ...]
) -> list[str]:
    """Structural C4 check of four quarter tiles, independent of any table."""
    crossing = crossing_at(Patch(tiles), center)
    if crossing.conflicting_rays:
        rays = sorted(r.value for r in crossing.conflicting_rays)
        return [f"shared half-diagonals disagree on rays {rays}"]
    if len(crossing.germs) != 4:
        return [f"expected 4 germs, found {len(crossing.germs)}"]
    # raw (uncanonicalized) pattern so that perpendicular rays are absolute
    pattern = CrossingPattern(CrossingKind.C4, crossing.codes)
    problems = pattern_constraint_errors(pattern)
    if problems:
        return problems
    return chirality_errors(crossing, pattern.perpendicular_rays)


def cut_square(s: SquareTile) -> QuarterTiles:
    """The four triangles of a square; the cut is the representation."""
    return s.quarter_tiles


@dataclass(frozen=True)
class SquarePatch:
    """Square tiles of one size and one half-diagonal alignment.

    Construction trusts that interiors are disjoint; documents are checked for
    overlaps when they are parsed.
    """

    squares: tuple[SquareTile, ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.squares))
        object.__setattr__(self, "squares", ordered)
        if not ordered:
            return
        first = ordered[0]
        for s in ordered[1:]:
            if s.size != first.size:
                raise SquareGeometryError(
                    f"Square at {s.center.as_pair()} has size {s.size}, "
                    f"patch size is {first.size}"
                )
            if s.legs_diagonal is not first.legs_diagonal:
                raise SquareGeometryError(
                    f"Square at {s.center.as_pair()} is not aligned with the patch"
                )

    def __len__(self) -> int:
        return len(self.squares)

    def __iter__(self) -> Iterator[SquareTile]:
        return iter(self.squares)

    def triangles(self) -> Patch:
        return Patch(tuple(t for s in self.squares for t in s.quarter_tiles))


def group_into_squares(
    p: Patch, table: LegalCrossingTable
) -> tuple[SquarePatch, Patch]:
    """Partition a patch into square tiles and leftover triangles.

    A square is emitted at every vertex where exactly four right angles meet
    in a legal C4. Each tile has one right angle, so the partition is unique.

    Args:
        p: Patch that passes validation
        table: Legal crossing table

    Returns:
        The square patch and the tiles belonging to no square

    Raises:
        ConflictingGrouping: If more right angles meet at a vertex than fit
            in one square
    """
    squares: list[SquareTile] = []
    grouped: set[TriangleTile] = set()
    for v, entries in p.vertex_index.items():
        right = [t for t, role in entries if role is VertexRole.R]
        if len(right) > 4:
            raise ConflictingGrouping(
                f"{len(right)} right angles meet at {v.as_pair()}; "
                "a tile would belong to two squares"
            )
        if len(right) != 4 or len(entries) != 4:
            continue
        if classify_crossing(crossing_at(p, v), table) is not CrossingClass.C4:
            continue
        squares.append(SquareTile(v, _quarters(right)))
        grouped.update(right)
    leftover = Patch(tuple(t for t in p.tiles if t not in grouped))
    logger.debug(
        "squares_grouped", tiles=len(p), squares=len(squares), leftover=len(leftover)
    )
    return SquarePatch(tuple(squares)), leftover


def validate_squares(
    sp: SquarePatch,
    table: LegalCrossingTable | None = None,
    mode: ValidationMode = ValidationMode.REGION,
) -> ValidationReport:
    """Check the square rules on the cut triangles, by default away from the edge."""
    return validate(sp.triangles(), mode, table)


@dataclass(frozen=True, order=True)
class SquareClass:
    """A square moved to the origin, optionally in its least quarter-turn."""

    tiles: QuarterTiles

    @property
    def label(self) -> str:
        return "; ".join(
            tile_label(
                t.r,
                t.a,
                t.b,
                t.body,
                t.dec_leg_a.code,
                t.dec_leg_b.code,
                t.dec_hyp.code,
            )
            for t in self.tiles
        )


def square_class(s: SquareTile, up_to: UpTo = UpTo.TRANSLATION) -> SquareClass:
    moved = s.translated(-s.center)
    if up_to is UpTo.TRANSLATION:
        return SquareClass(moved.quarter_tiles)
    return min(SquareClass(moved.rotated(k).quarter_tiles) for k in range(4))


def square_census(
    sp: SquarePatch, up_to: UpTo = UpTo.TRANSLATION
) -> Counter[SquareClass]:
    """Count square classes up to translation, or translation and quarter turns."""
    return Counter(square_class(s, up_to) for s in sp)


def square_family(size: int = 1) -> tuple[SquareTile, ...]:
    """Every decorated square centered at the origin with diagonal half-diagonals.

    The axis leaves along one of the four diagonal rays in one of two colors,
    the inward perpendiculars are colored one of two ways, and the four outer
    sides take any of the four decorations: 4 * 2 * 2 * 4**4 = 4096 squares.
    """
    if size <= 0:
        raise ValueError(f"Square size must be positive, got {size}")
    family: list[SquareTile] = []
    for out_ray in (1, 3, 5, 7):
        for axis_color, left_color in itertools.product(TileColor, TileColor):
            rays = {
                out_ray: SideDecoration(axis_color, Sense.FORWARD),
                (out_ray + 2) % 8: SideDecoration(left_color, Sense.BACKWARD),
                (out_ray + 4) % 8: SideDecoration(axis_color, Sense.BACKWARD),
                (out_ray + 6) % 8: SideDecoration(left_color.other(), Sense.BACKWARD),
            }
            bodies = (TileColor.RED, TileColor.GREEN) * 2
            for hyps in itertools.product(ALL_DECORATIONS, repeat=4):
                quarters: list[TriangleTile] = []
                for k in range(4):
                    start = Direction8((out_ray + 2 * k) % 8)
                    leg = start.step.scaled(size)
                    quarters.append(
                        TriangleTile(
                            r=ORIGIN,
                            a=leg,
                            b=leg.rot90ccw(),
                            body=bodies[k],
                            dec_leg_a=rays[start.value],
                            dec_leg_b=rays[start.rotated(2).value],
                            dec_hyp=hyps[k],
                        )
                    )
                family.append(SquareTile(ORIGIN, _quarters(quarters)))
    return tuple(family)
