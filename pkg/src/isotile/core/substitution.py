"""Substitution: decomposition, composition and supertiles."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

import structlog

from isotile.core.crossings import (
    CrossingClass,
    LegalCrossingTable,
    classify_crossing,
    crossing_at,
)
from isotile.core.geometry import (
    ORIGIN,
    LatticePoint,
    NonIntegralMap,
    SimilarityMap,
    midpoint,
    rotate90ccw_about,
    rotate90cw_about,
)
from isotile.core.tiles import (
    Patch,
    Sense,
    SideDecoration,
    TileColor,
    TriangleTile,
)

logger = structlog.get_logger()

DEFAULT_SEED = "GR-G+R-"


class NotComposable(ValueError):
    """Raised when a patch is not the decomposition of any patch."""

    def __init__(self, vertex: LatticePoint, reason: str) -> None:
        self.vertex = vertex
        self.reason = reason
        super().__init__(f"Not composable at {vertex.as_pair()}: {reason}")


class SeedFormatError(ValueError):
    """Raised when a seed decoration string is malformed."""


@dataclass(frozen=True)
class ChildPair:
    """The two halves of a tile cut by its height."""

    left_child: TriangleTile
    right_child: TriangleTile

    def __iter__(self) -> Iterator[TriangleTile]:
        return iter((self.left_child, self.right_child))


def decompose_tile(t: TriangleTile) -> ChildPair:
    """Cut a tile along its height.

    Both children have their right angle at the hypotenuse midpoint M. The
    shared leg carries the parent's body color with its arrow from r to M; the
    children's hypotenuses are the parent's legs and the children's outer legs
    are the two halves of the parent's hypotenuse.

    Args:
        t: Tile whose hypotenuse midpoint is a lattice point

    Returns:
        The red left child (containing b) and the green right child (containing a)

    Raises:
        ResolutionError: If the hypotenuse midpoint is not integral
    """
    m = midpoint(t.a, t.b)
    height = SideDecoration(t.body, Sense.BACKWARD)
    right = TriangleTile(
        r=m,
        a=t.r,
        b=t.a,
        body=TileColor.GREEN,
        dec_leg_a=height,
        dec_leg_b=t.dec_hyp.flipped(),
        dec_hyp=t.dec_leg_a,
    )
    left = TriangleTile(
        r=m,
        a=t.b,
        b=t.r,
        body=TileColor.RED,
        dec_leg_a=t.dec_hyp,
        dec_leg_b=height,
        dec_hyp=t.dec_leg_b.flipped(),
    )
    return ChildPair(left_child=left, right_child=right)


def decompose(p: Patch) -> Patch:
    """Apply the substitution to every tile; no rescaling is performed.

    Raises:
        ResolutionError: If some hypotenuse midpoint is not integral
    """
    children: list[TriangleTile] = []
    for t in p.tiles:
        pair = decompose_tile(t)
        children.append(pair.left_child)
        children.append(pair.right_child)
    return Patch(tuple(children))


def sibling_of(t: TriangleTile) -> TriangleTile:
    """Placement of the tile that would share a parent with ``t``.

    A red tile's sibling is its rotation by 90 degrees counterclockwise about
    the right-angle vertex; a green tile's is the clockwise rotation. Body color
    flips; decorations are copied from ``t`` and carry no meaning.
    """
    rotate = rotate90ccw_about if t.body is TileColor.RED else rotate90cw_about
    return TriangleTile(
        r=t.r,
        a=rotate(t.a, t.r),
        b=rotate(t.b, t.r),
        body=t.body.other(),
        dec_leg_a=t.dec_leg_a,
        dec_leg_b=t.dec_leg_b,
        dec_hyp=t.dec_hyp,
    )


def _merge(
    red: TriangleTile, green: TriangleTile, p: Patch, table: LegalCrossingTable
) -> TriangleTile:
    center = red.r
    shared = red.dec_leg_b
    if shared != green.dec_leg_a:
        raise NotComposable(center, "shared leg decorations disagree")
    if shared.sense is not Sense.BACKWARD:
        raise NotComposable(center, "shared leg arrow points away from the center")
    interior = p.is_interior_vertex(center)
    found = classify_crossing(crossing_at(p, center), table, at_boundary=not interior)
    expected = CrossingClass.C4 if interior else CrossingClass.BOUNDARY_HALF
    if found is not expected:
        raise NotComposable(center, f"crossing at the right angle is {found.value}")
    axis_red, axis_green = red.dec_leg_a, green.dec_leg_b
    if axis_red.color is not axis_green.color or axis_red.sense is axis_green.sense:
        raise NotComposable(center, "axis arrows disagree")
    return TriangleTile(
        r=red.b,
        a=green.b,
        b=red.a,
        body=shared.color,
        dec_leg_a=green.dec_hyp,
        dec_leg_b=red.dec_hyp.flipped(),
        dec_hyp=axis_red,
    )


def compose(p: Patch, table: LegalCrossingTable) -> Patch:
    """Merge every red tile with its green sibling, inverting ``decompose``.

    Args:
        p: Patch that is the decomposition of some correct patch
        table: Legal crossing table used to check the crossing at each merge

    Returns:
        The composed patch with half as many tiles

    Raises:
        NotComposable: If a sibling is missing, a crossing at a right angle is
            not a C4 (or a boundary half), or the axis arrows disagree
    """
    by_geometry = p.by_geometry
    consumed: set[TriangleTile] = set()
    parents: list[TriangleTile] = []
    for t in p.tiles:
        if t.body is not TileColor.RED:
            continue
        green = by_geometry.get(sibling_of(t).geometry)
        if green is None or green.body is not TileColor.GREEN:
            logger.info("compose_failed", vertex=t.r.as_pair(), reason="no sibling")
            raise NotComposable(t.r, "red tile has no green sibling")
        parents.append(_merge(t, green, p, table))
        consumed.add(t)
        consumed.add(green)
    for t in p.tiles:
        if t not in consumed:
            raise NotComposable(t.r, "green tile has no red sibling")
    logger.debug("patch_composed", tiles=len(p), parents=len(parents))
    return Patch(tuple(parents))


def parse_seed(
    code: str,
) -> tuple[TileColor, SideDecoration, SideDecoration, SideDecoration]:
    """Parse a 7-character seed: body, then color and sense of leg_a, leg_b, hyp.

    Raises:
        SeedFormatError: If the string is malformed
    """
    if len(code) != 7:
        raise SeedFormatError(f"Seed must have 7 characters, got {code!r}")
    try:
        body = TileColor(code[0])
        sides = tuple(SideDecoration.from_code(code[i : i + 2]) for i in (1, 3, 5))
    except ValueError as e:
        raise SeedFormatError(f"Invalid seed {code!r}: {e}") from e
    return body, sides[0], sides[1], sides[2]


@dataclass(frozen=True)
class SupertileSpec:
    """Level and seed decoration of a supertile."""

    level: int
    body: TileColor = TileColor.GREEN
    dec_leg_a: SideDecoration = SideDecoration(TileColor.RED, Sense.BACKWARD)
    dec_leg_b: SideDecoration = SideDecoration(TileColor.GREEN, Sense.FORWARD)
    dec_hyp: SideDecoration = SideDecoration(TileColor.RED, Sense.BACKWARD)

    def __post_init__(self) -> None:
        if self.level < 0:
            raise ValueError(f"Supertile level must be non-negative, got {self.level}")

    @classmethod
    def from_code(cls, level: int, code: str = DEFAULT_SEED) -> SupertileSpec:
        body, leg_a, leg_b, hyp = parse_seed(code)
        return cls(level, body, leg_a, leg_b, hyp)

    @property
    def code(self) -> str:
        return self.body.value + "".join(
            d.code for d in (self.dec_leg_a, self.dec_leg_b, self.dec_hyp)
        )

    @property
    def scale(self) -> int:
        """Seed leg length keeping every level's midpoints integral."""
        return 1 << ((self.level + 1) // 2)

    def seed_tile(self) -> TriangleTile:
        s = self.scale
        return TriangleTile(
            r=ORIGIN,
            a=LatticePoint(s, 0),
            b=LatticePoint(0, s),
            body=self.body,
            dec_leg_a=self.dec_leg_a,
            dec_leg_b=self.dec_leg_b,
            dec_hyp=self.dec_hyp,
        )


def supertile(spec: SupertileSpec) -> Patch:
    """Decompose the placed seed ``spec.level`` times; the result has 2**level tiles."""
    tiles = [spec.seed_tile()]
    for _ in range(spec.level):
        nxt: list[TriangleTile] = []
        for t in tiles:
            pair = decompose_tile(t)
            nxt.append(pair.left_child)
            nxt.append(pair.right_child)
        tiles = nxt
    logger.debug(
        "supertile_generated", level=spec.level, seed=spec.code, tiles=len(tiles)
    )
    return Patch(tuple(tiles))


def _scale_exponent(source: int, target: int) -> int | None:
    """Exponent e with target == source * 2**e, for squared leg lengths."""
    if target >= source:
        ratio, rem = divmod(target, source)
        sign = 1
    else:
        ratio, rem = divmod(source, target)
        sign = -1
    if rem or ratio & (ratio - 1):
        return None
    return sign * (ratio.bit_length() - 1)


def similar_eq(p: Patch, q: Patch) -> SimilarityMap | None:
    """Find a lattice similarity carrying ``p`` onto ``q`` with equal decorations.

    Rotations are tried in increasing order of 45-degree steps; the scale is
    fixed by the tile sizes and the translation by the least vertices.
    """
    if len(p) != len(q):
        return None
    if not p.tiles:
        return SimilarityMap.identity()
    p_leg, q_leg = p.tiles[0].leg_vector, q.tiles[0].leg_vector
    exponent = _scale_exponent(p_leg.dot(p_leg), q_leg.dot(q_leg))
    if exponent is None:
        return None
    q_anchor = min(v for t in q.tiles for v in t.vertices)
    for steps in range(8):
        if (steps + exponent) % 2:
            continue
        linear = SimilarityMap(steps, exponent)
        try:
            p_anchor = min(linear.linear(v) for t in p.tiles for v in t.vertices)
            m = SimilarityMap(steps, exponent, q_anchor - p_anchor)
            image = p.transformed(m)
        except NonIntegralMap:
            continue
        if image.tile_set == q.tile_set:
            return m
    return None
