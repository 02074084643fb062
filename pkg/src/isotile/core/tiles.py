"""Decorated triangle tiles and the Patch container."""

from __future__ import annotations

import itertools
from collections import defaultdict
from collections.abc import Iterator
from dataclasses import dataclass
from enum import StrEnum
from functools import cached_property
from math import gcd

import structlog

from isotile.core.geometry import (
    ORIGIN,
    Direction8,
    LatticePoint,
    SimilarityMap,
    apply_similarity,
)

logger = structlog.get_logger()


class GeometryError(ValueError):
    """Raised when three points do not form a positively framed lattice tile."""


class OverlapError(ValueError):
    """Raised when a tile's interior meets the interior of a tile already placed."""


class SizeMismatch(ValueError):
    """Raised when a tile's leg length differs from the rest of the patch."""


class DisconnectedPatch(ValueError):
    """Raised when a boundary is requested for a patch that is not connected."""


class TileColor(StrEnum):
    """Body or side color."""

    RED = "R"
    GREEN = "G"

    def other(self) -> TileColor:
        return TileColor.GREEN if self is TileColor.RED else TileColor.RED


class Sense(StrEnum):
    """Arrow sense relative to a side's canonical direction."""

    FORWARD = "+"
    BACKWARD = "-"

    def flipped(self) -> Sense:
        return Sense.BACKWARD if self is Sense.FORWARD else Sense.FORWARD


class SideName(StrEnum):
    """The three sides of a tile, named by their canonical direction."""

    LEG_A = "leg_a"  # r -> a
    LEG_B = "leg_b"  # r -> b
    HYP = "hyp"  # a -> b


class VertexRole(StrEnum):
    """Which vertex of a tile a point is."""

    R = "r"
    A = "a"
    B = "b"


@dataclass(frozen=True, order=True, slots=True)
class SideDecoration:
    """Color and arrow sense of one side."""

    color: TileColor
    sense: Sense

    def flipped(self) -> SideDecoration:
        return SideDecoration(self.color, self.sense.flipped())

    @property
    def code(self) -> str:
        return f"{self.color.value}{self.sense.value}"

    @classmethod
    def from_code(cls, code: str) -> SideDecoration:
        """Parse a two-character code such as ``"R+"``.

        Raises:
            ValueError: If the code is not a color letter followed by + or -
        """
        if len(code) != 2:
            raise ValueError(f"Side code must have 2 characters, got {code!r}")
        return cls(TileColor(code[0]), Sense(code[1]))


ALL_DECORATIONS: tuple[SideDecoration, ...] = tuple(
    SideDecoration(color, sense) for color in TileColor for sense in Sense
)


@dataclass(frozen=True, order=True, slots=True)
class TriangleTile:
    """Placed isosceles right triangle with a body color and decorated sides.

    ``r`` is the right-angle vertex; ``b - r`` is ``a - r`` rotated 90 degrees
    counterclockwise, so the interior lies to the left of every canonical side
    direction (r->a, a->b, b->r) and reflected tiles cannot be represented.
    """

    r: LatticePoint
    a: LatticePoint
    b: LatticePoint
    body: TileColor
    dec_leg_a: SideDecoration
    dec_leg_b: SideDecoration
    dec_hyp: SideDecoration

    def __post_init__(self) -> None:
        """Validate the tile frame."""
        leg = self.a - self.r
        if leg.x == 0 and leg.y == 0:
            raise GeometryError(f"Tile at {self.r.as_pair()} has zero size")
        if leg.x != 0 and leg.y != 0 and abs(leg.x) != abs(leg.y):
            raise GeometryError(
                f"Leg {leg.as_pair()} is not along one of the 8 lattice directions"
            )
        other = self.b - self.r
        if other == -leg.rot90ccw():
            raise GeometryError(
                f"Tile r={self.r.as_pair()} a={self.a.as_pair()} "
                f"b={self.b.as_pair()} is reflected (negative frame)"
            )
        if other != leg.rot90ccw():
            raise GeometryError(
                f"Tile r={self.r.as_pair()} a={self.a.as_pair()} "
                f"b={self.b.as_pair()} is not an isosceles right triangle"
            )

    @property
    def leg_vector(self) -> LatticePoint:
        return self.a - self.r

    @property
    def size(self) -> int:
        """Chebyshev length of a leg, the patch-wide size unit."""
        return self.leg_vector.chebyshev()

    @property
    def twice_area(self) -> int:
        leg = self.leg_vector
        return leg.dot(leg)

    @property
    def vertices(self) -> tuple[LatticePoint, LatticePoint, LatticePoint]:
        return (self.r, self.a, self.b)

    @property
    def geometry(self) -> tuple[LatticePoint, LatticePoint, LatticePoint]:
        """Placement key ignoring body and decorations."""
        return (self.r, self.a, self.b)

    def decoration(self, side: SideName) -> SideDecoration:
        if side is SideName.LEG_A:
            return self.dec_leg_a
        if side is SideName.LEG_B:
            return self.dec_leg_b
        return self.dec_hyp

    def endpoints(self, side: SideName) -> tuple[LatticePoint, LatticePoint]:
        """Endpoints of a side in its canonical direction."""
        if side is SideName.LEG_A:
            return (self.r, self.a)
        if side is SideName.LEG_B:
            return (self.r, self.b)
        return (self.a, self.b)

    def arrow(self, side: SideName) -> tuple[LatticePoint, LatticePoint]:
        """Absolute (tail, head) of the arrow drawn on a side."""
        start, end = self.endpoints(side)
        if self.decoration(side).sense is Sense.FORWARD:
            return (start, end)
        return (end, start)

    def role_of(self, v: LatticePoint) -> VertexRole | None:
        if v == self.r:
            return VertexRole.R
        if v == self.a:
            return VertexRole.A
        if v == self.b:
            return VertexRole.B
        return None

    def sides_at(self, role: VertexRole) -> tuple[SideName, SideName]:
        """The two sides incident to a vertex."""
        if role is VertexRole.R:
            return (SideName.LEG_A, SideName.LEG_B)
        if role is VertexRole.A:
            return (SideName.LEG_A, SideName.HYP)
        return (SideName.LEG_B, SideName.HYP)

    def corner_at(self, role: VertexRole) -> tuple[Direction8, int]:
        """Counterclockwise start ray and span (in 45-degree units) of a corner."""
        if role is VertexRole.R:
            return (Direction8.of_vector(self.a - self.r), 2)
        if role is VertexRole.A:
            return (Direction8.of_vector(self.b - self.a), 1)
        return (Direction8.of_vector(self.r - self.b), 1)

    def transformed(self, m: SimilarityMap) -> TriangleTile:
        return TriangleTile(
            apply_similarity(m, self.r),
            apply_similarity(m, self.a),
            apply_similarity(m, self.b),
            self.body,
            self.dec_leg_a,
            self.dec_leg_b,
            self.dec_hyp,
        )


def make_tile(
    r: LatticePoint,
    a: LatticePoint,
    b: LatticePoint,
    body: TileColor,
    dec_leg_a: SideDecoration,
    dec_leg_b: SideDecoration,
    dec_hyp: SideDecoration,
) -> TriangleTile:
    """Construct a tile, validating its geometry.

    Raises:
        GeometryError: If the points are not a positively framed isosceles
            right triangle with legs along lattice directions
    """
    return TriangleTile(r, a, b, body, dec_leg_a, dec_leg_b, dec_hyp)


def tile_family(size: int = 1) -> tuple[TriangleTile, ...]:
    """All decorated tiles with r at the origin and axis-aligned legs.

    Two body colors times four decorations on each of three sides gives 128
    decorated shapes; the four axis-aligned placements make 512 tiles.
    """
    if size <= 0:
        raise ValueError(f"Tile size must be positive, got {size}")
    tiles: list[TriangleTile] = []
    for d in (Direction8.EAST, Direction8.NORTH, Direction8.WEST, Direction8.SOUTH):
        leg = d.step.scaled(size)
        for body, leg_a, leg_b, hyp in itertools.product(
            TileColor, ALL_DECORATIONS, ALL_DECORATIONS, ALL_DECORATIONS
        ):
            tiles.append(
                TriangleTile(ORIGIN, leg, leg.rot90ccw(), body, leg_a, leg_b, hyp)
            )
    return tuple(tiles)


EdgeKey = tuple[LatticePoint, LatticePoint]
VertexEntry = tuple[TriangleTile, VertexRole]
EdgeEntry = tuple[TriangleTile, SideName]


def edge_key(p: LatticePoint, q: LatticePoint) -> EdgeKey:
    return (p, q) if p <= q else (q, p)


def _bbox(t: TriangleTile) -> tuple[int, int, int, int]:
    xs = (t.r.x, t.a.x, t.b.x)
    ys = (t.r.y, t.a.y, t.b.y)
    return (min(xs), min(ys), max(xs), max(ys))


def interiors_overlap(s: TriangleTile, t: TriangleTile) -> bool:
    """Exact separating-axis test for the open interiors of two tiles."""
    s_box, t_box = _bbox(s), _bbox(t)
    if (
        s_box[2] <= t_box[0]
        or t_box[2] <= s_box[0]
        or s_box[3] <= t_box[1]
        or t_box[3] <= s_box[1]
    ):
        return False
    for tile in (s, t):
        verts = tile.vertices
        for i in range(3):
            normal = (verts[(i + 1) % 3] - verts[i]).rot90ccw()
            s_proj = [normal.dot(v) for v in s.vertices]
            t_proj = [normal.dot(v) for v in t.vertices]
            if max(s_proj) <= min(t_proj) or max(t_proj) <= min(s_proj):
                return False
    return True


@dataclass(frozen=True)
class Patch:
    """Finite set of equally sized tiles, kept in canonical (r, a, b) order.

    Direct construction trusts that interiors are disjoint; use ``add_tile`` or
    ``PatchBuilder`` for checked construction.
    """

    tiles: tuple[TriangleTile, ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.tiles))
        object.__setattr__(self, "tiles", ordered)
        if ordered:
            size = ordered[0].size
            for t in ordered:
                if t.size != size:
                    raise SizeMismatch(
                        f"Tile at {t.r.as_pair()} has size {t.size}, "
                        f"patch size is {size}"
                    )

    def __len__(self) -> int:
        return len(self.tiles)

    def __iter__(self) -> Iterator[TriangleTile]:
        return iter(self.tiles)

    def __contains__(self, t: object) -> bool:
        return t in self.tile_set

    @cached_property
    def tile_set(self) -> frozenset[TriangleTile]:
        return frozenset(self.tiles)

    @cached_property
    def by_geometry(
        self,
    ) -> dict[tuple[LatticePoint, LatticePoint, LatticePoint], TriangleTile]:
        return {t.geometry: t for t in self.tiles}

    @property
    def tile_size(self) -> int | None:
        return self.tiles[0].size if self.tiles else None

    @cached_property
    def vertex_index(self) -> dict[LatticePoint, tuple[VertexEntry, ...]]:
        index: dict[LatticePoint, list[VertexEntry]] = defaultdict(list)
        for t in self.tiles:
            index[t.r].append((t, VertexRole.R))
            index[t.a].append((t, VertexRole.A))
            index[t.b].append((t, VertexRole.B))
        return {v: tuple(entries) for v, entries in sorted(index.items())}

    @cached_property
    def edge_index(self) -> dict[EdgeKey, tuple[EdgeEntry, ...]]:
        index: dict[EdgeKey, list[EdgeEntry]] = defaultdict(list)
        for t in self.tiles:
            for side in SideName:
                index[edge_key(*t.endpoints(side))].append((t, side))
        return {e: tuple(entries) for e, entries in sorted(index.items())}

    @cached_property
    def angle_units(self) -> dict[LatticePoint, int]:
        """Sum of incident corner angles at each vertex, in 45-degree units."""
        return {
            v: sum(2 if role is VertexRole.R else 1 for _, role in entries)
            for v, entries in self.vertex_index.items()
        }

    @cached_property
    def hanging_vertices(self) -> frozenset[LatticePoint]:
        """Vertices lying strictly inside some tile side (T-junctions)."""
        vertices = self.vertex_index
        hanging: set[LatticePoint] = set()
        for start, end in self.edge_index:
            delta = end - start
            steps = gcd(delta.x, delta.y)
            unit = LatticePoint(delta.x // steps, delta.y // steps)
            for i in range(1, steps):
                point = start + unit.scaled(i)
                if point in vertices:
                    hanging.add(point)
        return frozenset(hanging)

    def is_interior_vertex(self, v: LatticePoint) -> bool:
        return self.angle_units.get(v, 0) >= 8 or v in self.hanging_vertices

    @property
    def twice_area(self) -> int:
        return sum(t.twice_area for t in self.tiles)

    def transformed(self, m: SimilarityMap) -> Patch:
        return Patch(tuple(t.transformed(m) for t in self.tiles))

    def scaled(self, factor_log2: int) -> Patch:
        """Scale every tile by 2 ** factor_log2 about the origin."""
        return self.transformed(SimilarityMap.scaling(factor_log2))


class PatchBuilder:
    """Single-writer builder that checks overlaps with a spatial hash."""

    def __init__(self, base: Patch | None = None) -> None:
        self._tiles: list[TriangleTile] = []
        self._cells: dict[tuple[int, int], list[TriangleTile]] = defaultdict(list)
        self._size: int | None = None
        if base is not None:
            for t in base.tiles:
                self._insert(t)

    def __len__(self) -> int:
        return len(self._tiles)

    def _cell_span(self, t: TriangleTile) -> Iterator[tuple[int, int]]:
        assert self._size is not None
        step = 2 * self._size
        x0, y0, x1, y1 = _bbox(t)
        for cx in range(x0 // step, x1 // step + 1):
            for cy in range(y0 // step, y1 // step + 1):
                yield (cx, cy)

    def _insert(self, t: TriangleTile) -> None:
        if self._size is None:
            self._size = t.size
        self._tiles.append(t)
        for cell in self._cell_span(t):
            self._cells[cell].append(t)

    def add(self, t: TriangleTile) -> PatchBuilder:
        """Add a tile after checking size and overlap.

        Raises:
            SizeMismatch: If the tile's size differs from the patch size
            OverlapError: If the tile's interior meets an existing interior
        """
        if self._size is not None and t.size != self._size:
            raise SizeMismatch(
                f"Tile at {t.r.as_pair()} has size {t.size}, "
                f"patch size is {self._size}"
            )
        if self._size is not None:
            seen: set[TriangleTile] = set()
            for cell in self._cell_span(t):
                for other in self._cells.get(cell, ()):
                    if other in seen:
                        continue
                    seen.add(other)
                    if interiors_overlap(t, other):
                        raise OverlapError(
                            f"Tile r={t.r.as_pair()} a={t.a.as_pair()} "
                            f"b={t.b.as_pair()} overlaps tile r={other.r.as_pair()} "
                            f"a={other.a.as_pair()} b={other.b.as_pair()}"
                        )
        self._insert(t)
        return self

    def build(self) -> Patch:
        logger.debug("patch_built", tiles=len(self._tiles))
        return Patch(tuple(self._tiles))


def add_tile(p: Patch, t: TriangleTile) -> Patch:
    """Return a new patch with ``t`` added.

    Raises:
        OverlapError: If ``t`` overlaps an existing tile
        SizeMismatch: If ``t`` is not the patch's tile size
    """
    return PatchBuilder(p).add(t).build()


@dataclass(frozen=True, order=True)
class BoundaryVertex:
    """Vertex on the boundary of a patch with the union's angle there."""

    point: LatticePoint
    angle_units: int

    @property
    def extreme(self) -> bool:
        """True when the union's interior angle is below 180 degrees."""
        return self.angle_units < 4


def _components(p: Patch) -> int:
    parent = list(range(len(p.tiles)))
    position = {t: i for i, t in enumerate(p.tiles)}

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for entries in p.vertex_index.values():
        first = find(position[entries[0][0]])
        for t, _ in entries[1:]:
            parent[find(position[t])] = first
    return len({find(i) for i in range(len(parent))})


def boundary_vertices(p: Patch) -> tuple[BoundaryVertex, ...]:
    """Vertices on the topological boundary of the patch's union.

    Raises:
        DisconnectedPatch: If the tiles do not form one connected region
    """
    if not p.tiles:
        return ()
    components = _components(p)
    if components > 1:
        raise DisconnectedPatch(f"Patch has {components} connected components")
    return tuple(
        BoundaryVertex(v, units)
        for v, units in p.angle_units.items()
        if not p.is_interior_vertex(v)
    )
