"""Crossings: the decorated arrows meeting at a vertex, and their classification."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import StrEnum
from functools import cached_property

from isotile.core.geometry import Direction8, LatticePoint
from isotile.core.tiles import (
    Patch,
    SideName,
    TileColor,
    TriangleTile,
    VertexRole,
)


class NotAVertex(ValueError):
    """Raised when a crossing is requested at a point that is no tile vertex."""


class CrossingTableError(ValueError):
    """Raised when crossing table data is malformed."""


class Arrow(StrEnum):
    """Whether a side's arrow points toward or away from the center."""

    IN = "in"
    OUT = "out"


class SideKind(StrEnum):
    LEG = "leg"
    HYP = "hyp"


class CrossingKind(StrEnum):
    C4 = "C4"
    C8 = "C8"


class CrossingClass(StrEnum):
    """Classification of a crossing against the legal table."""

    C4 = "C4"
    C8 = "C8"
    BOUNDARY_HALF = "boundary-half"
    ILLEGAL = "illegal"


# (ray, arrow, color) with string values so that tuples sort deterministically
GermCode = tuple[int, str, str]


@dataclass(frozen=True, order=True)
class EdgeGerm:
    """One decorated side leaving the center of a crossing."""

    center: LatticePoint
    ray: Direction8
    side_kind: SideKind
    arrow: Arrow
    color: TileColor

    @property
    def code(self) -> GermCode:
        return (self.ray.value, self.arrow.value, self.color.value)


@dataclass(frozen=True, order=True)
class Corner:
    """A tile corner at the center: counterclockwise start ray and span."""

    start: Direction8
    span: int
    body: TileColor
    role: VertexRole
    tile: TriangleTile = field(compare=False)

    @property
    def rays(self) -> tuple[Direction8, Direction8]:
        return (self.start, self.start.rotated(self.span))


@dataclass(frozen=True)
class Crossing:
    """Germs and corners around one vertex of a patch."""

    center: LatticePoint
    germs: tuple[EdgeGerm, ...]
    corners: tuple[Corner, ...]
    conflicting_rays: frozenset[Direction8] = frozenset()

    @property
    def angle_units(self) -> int:
        return sum(c.span for c in self.corners)

    @property
    def codes(self) -> tuple[GermCode, ...]:
        return tuple(sorted(g.code for g in self.germs))

    def germ_at(self, ray: Direction8) -> EdgeGerm | None:
        for g in self.germs:
            if g.ray is ray:
                return g
        return None

    def corner_from(self, ray: Direction8) -> Corner | None:
        for c in self.corners:
            if c.start is ray:
                return c
        return None

    def rotated(self, steps: int) -> Crossing:
        """The same crossing with every ray turned by ``steps`` * 45 degrees."""
        return Crossing(
            self.center,
            tuple(
                sorted(
                    EdgeGerm(
                        g.center, g.ray.rotated(steps), g.side_kind, g.arrow, g.color
                    )
                    for g in self.germs
                )
            ),
            tuple(
                sorted(
                    Corner(c.start.rotated(steps), c.span, c.body, c.role, c.tile)
                    for c in self.corners
                )
            ),
            frozenset(r.rotated(steps) for r in self.conflicting_rays),
        )


def rotate_codes(codes: tuple[GermCode, ...], steps: int) -> tuple[GermCode, ...]:
    return tuple(
        sorted(((ray + steps) % 8, arrow, color) for ray, arrow, color in codes)
    )


def canonical_codes(codes: tuple[GermCode, ...]) -> tuple[tuple[GermCode, ...], int]:
    """Lexicographically least rotation of a germ set.

    Returns:
        The canonical germ tuple and the number of 45-degree steps that carry it
        back onto ``codes``
    """
    best: tuple[GermCode, ...] | None = None
    best_steps = 0
    for steps in range(8):
        candidate = rotate_codes(codes, -steps)
        if best is None or candidate < best:
            best, best_steps = candidate, steps
    assert best is not None
    return best, best_steps


@dataclass(frozen=True, order=True)
class CrossingPattern:
    """Canonical germ set of a legal crossing, up to rotation."""

    kind: CrossingKind
    germs: tuple[GermCode, ...]

    @classmethod
    def from_codes(cls, codes: tuple[GermCode, ...]) -> CrossingPattern:
        """Canonicalize raw germ codes.

        Raises:
            CrossingTableError: If the germ count is neither 4 nor 8
        """
        if len(codes) == 4:
            kind = CrossingKind.C4
        elif len(codes) == 8:
            kind = CrossingKind.C8
        else:
            raise CrossingTableError(
                f"A legal crossing has 4 or 8 germs, got {len(codes)}"
            )
        if len({ray for ray, _, _ in codes}) != len(codes):
            raise CrossingTableError("Germs of a crossing must lie on distinct rays")
        canonical, _ = canonical_codes(tuple(sorted(codes)))
        return cls(kind, canonical)

    def rotated(self, steps: int) -> tuple[GermCode, ...]:
        return rotate_codes(self.germs, steps)

    def _by_ray(self) -> dict[int, tuple[str, str]]:
        return {ray: (arrow, color) for ray, arrow, color in self.germs}

    @property
    def axes(self) -> tuple[tuple[int, str], ...]:
        """(out ray, color) of every collinear in/out pair of one color."""
        by_ray = self._by_ray()
        return tuple(
            (ray, color)
            for ray, (arrow, color) in sorted(by_ray.items())
            if arrow == Arrow.OUT and by_ray.get((ray + 4) % 8) == (Arrow.IN, color)
        )

    @property
    def axis(self) -> tuple[int, str] | None:
        axes = self.axes
        return axes[0] if len(axes) == 1 else None

    @property
    def perpendicular_rays(self) -> tuple[int, ...]:
        axis = self.axis
        if axis is None:
            return ()
        return ((axis[0] + 2) % 8, (axis[0] + 6) % 8)


def pattern_constraint_errors(pattern: CrossingPattern) -> list[str]:
    """Check a pattern against the prose description of legal crossings."""
    errors: list[str] = []
    by_ray = pattern._by_ray()
    axes = pattern.axes
    if len(axes) != 1:
        return [f"expected exactly one through-axis, found {len(axes)}"]
    out_ray, _ = axes[0]
    perps = [by_ray.get(ray) for ray in pattern.perpendicular_rays]
    if any(p is None or p[0] != Arrow.IN for p in perps):
        errors.append("both axis-perpendicular germs must be inward")
    elif perps[0] is not None and perps[1] is not None and perps[0][1] == perps[1][1]:
        errors.append("axis-perpendicular germs must have different colors")
    diagonals = [(out_ray + k) % 8 for k in (1, 3, 5, 7)]
    if pattern.kind is CrossingKind.C4:
        if any(ray in by_ray for ray in diagonals):
            errors.append("a C4 crossing has no diagonal germs")
        return errors
    if any(by_ray.get(ray, ("", ""))[0] != Arrow.OUT for ray in diagonals):
        errors.append("all four diagonal germs of a C8 must be outward")
        return errors
    for perp in pattern.perpendicular_rays:
        # seen from the perpendicular approach: red on the left, green on the right
        if by_ray[(perp + 1) % 8][1] != TileColor.GREEN:
            errors.append(f"diagonal right of the approach on ray {perp} is not green")
        if by_ray[(perp - 1) % 8][1] != TileColor.RED:
            errors.append(f"diagonal left of the approach on ray {perp} is not red")
    for ray, (arrow, color) in by_ray.items():
        other = by_ray.get((ray + 2) % 8)
        if (
            arrow == Arrow.OUT
            and other is not None
            and other[0] == Arrow.OUT
            and other[1] == color
        ):
            errors.append(
                f"orthogonal outward germs at rays {ray} and {(ray + 2) % 8} "
                "share a color"
            )
    return errors


def alternative_reading_holds(pattern: CrossingPattern) -> bool:
    """Whether the green inward perpendicular lies right of the axis direction."""
    axis = pattern.axis
    if axis is None:
        return False
    by_ray = pattern._by_ray()
    right = by_ray.get((axis[0] - 2) % 8)
    left = by_ray.get((axis[0] + 2) % 8)
    return right == (Arrow.IN, TileColor.GREEN) and left == (Arrow.IN, TileColor.RED)


def chirality_errors(c: Crossing, perpendicular_rays: tuple[int, ...]) -> list[str]:
    """Red tile left and green tile right of each entering perpendicular arrow.

    Only corners present in the crossing are checked, so the test also applies
    to boundary halves.
    """
    errors: list[str] = []
    for ray in perpendicular_rays:
        d = Direction8(ray)
        right = c.corner_from(d)
        left = c.corner_from(d.rotated(-2))
        if right is not None and right.span == 2 and right.body is not TileColor.GREEN:
            errors.append(f"tile right of the arrow entering on ray {ray} is not green")
        if left is not None and left.span == 2 and left.body is not TileColor.RED:
            errors.append(f"tile left of the arrow entering on ray {ray} is not red")
    return errors


def alternation_errors(c: Crossing) -> list[str]:
    """Bodies and side kinds around a C8 center must alternate."""
    errors: list[str] = []
    corners = sorted(c.corners, key=lambda corner: corner.start)
    for first, second in zip(corners, corners[1:] + corners[:1], strict=True):
        if first.body is second.body:
            errors.append(
                f"adjacent corners at rays {first.start.value} and "
                f"{second.start.value} share a body color"
            )
    germs = sorted(c.germs, key=lambda g: g.ray)
    for first_germ, second_germ in zip(germs, germs[1:] + germs[:1], strict=True):
        if first_germ.side_kind is second_germ.side_kind:
            errors.append(
                f"sides on rays {first_germ.ray.value} and "
                f"{second_germ.ray.value} do not alternate"
            )
    return errors


@dataclass(frozen=True)
class LegalCrossingTable:
    """Canonical C4 and C8 germ sets, derived from a deep supertile."""

    c4: tuple[CrossingPattern, ...]
    c8: tuple[CrossingPattern, ...]
    alternative_reading_holds: bool = False
    oracle_level: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "c4", tuple(sorted(set(self.c4))))
        object.__setattr__(self, "c8", tuple(sorted(set(self.c8))))
        for pattern in self.c4:
            if pattern.kind is not CrossingKind.C4:
                raise CrossingTableError(f"C8 pattern {pattern.germs} listed as C4")
        for pattern in self.c8:
            if pattern.kind is not CrossingKind.C8:
                raise CrossingTableError(f"C4 pattern {pattern.germs} listed as C8")

    @property
    def patterns(self) -> tuple[CrossingPattern, ...]:
        return self.c4 + self.c8

    @cached_property
    def _full_index(self) -> dict[tuple[GermCode, ...], tuple[CrossingPattern, int]]:
        index: dict[tuple[GermCode, ...], tuple[CrossingPattern, int]] = {}
        for pattern in self.patterns:
            for steps in range(8):
                index.setdefault(pattern.rotated(steps), (pattern, steps))
        return index

    @cached_property
    def _half_index(
        self,
    ) -> dict[tuple[int, tuple[GermCode, ...]], list[tuple[CrossingPattern, int]]]:
        index: dict[tuple[int, tuple[GermCode, ...]], list[tuple[CrossingPattern, int]]]
        index = defaultdict(list)
        for pattern in self.patterns:
            for steps in range(8):
                rotated = pattern.rotated(steps)
                for start in range(8):
                    window = {(start + k) % 8 for k in range(5)}
                    half = tuple(code for code in rotated if code[0] in window)
                    index[(start, half)].append((pattern, steps))
        return dict(index)

    def match(self, codes: tuple[GermCode, ...]) -> tuple[CrossingPattern, int] | None:
        """Find the entry and rotation whose germs equal ``codes`` exactly."""
        return self._full_index.get(codes)

    def match_half(
        self, start: int, codes: tuple[GermCode, ...]
    ) -> list[tuple[CrossingPattern, int]]:
        """Entries whose restriction to the half-plane at ``start`` is ``codes``."""
        return self._half_index.get((start, codes), [])


def crossing_at(p: Patch, v: LatticePoint) -> Crossing:
    """Collect the germs and corners of the tiles meeting at ``v``.

    Raises:
        NotAVertex: If ``v`` is not a vertex of any tile of ``p``
    """
    entries = p.vertex_index.get(v)
    if not entries:
        raise NotAVertex(f"{v.as_pair()} is not a vertex of the patch")
    germs: dict[Direction8, EdgeGerm] = {}
    conflicts: set[Direction8] = set()
    corners: list[Corner] = []
    for tile, role in entries:
        start, span = tile.corner_at(role)
        corners.append(Corner(start, span, tile.body, role, tile))
        for side in tile.sides_at(role):
            germ = _germ(tile, side, v)
            seen = germs.get(germ.ray)
            if seen is None:
                germs[germ.ray] = germ
            elif (seen.arrow, seen.color) != (germ.arrow, germ.color):
                conflicts.add(germ.ray)
    return Crossing(
        v,
        tuple(germs[ray] for ray in sorted(germs)),
        tuple(sorted(corners)),
        frozenset(conflicts),
    )


def _germ(tile: TriangleTile, side: SideName, center: LatticePoint) -> EdgeGerm:
    start, end = tile.endpoints(side)
    far = end if start == center else start
    _, head = tile.arrow(side)
    return EdgeGerm(
        center=center,
        ray=Direction8.of_vector(far - center),
        side_kind=SideKind.HYP if side is SideName.HYP else SideKind.LEG,
        arrow=Arrow.IN if head == center else Arrow.OUT,
        color=tile.decoration(side).color,
    )


def _covered_arc_start(c: Crossing) -> int | None:
    """Start ray of the half-plane covered by the corners, if they cover exactly one."""
    covered: set[int] = set()
    for corner in c.corners:
        for k in range(corner.span):
            sector = (corner.start.value + k) % 8
            if sector in covered:
                return None
            covered.add(sector)
    if len(covered) != 4:
        return None
    for start in range(8):
        if covered == {(start + k) % 8 for k in range(4)}:
            return start
    return None


def _corners_fit(c: Crossing, kind: CrossingKind) -> bool:
    span = 2 if kind is CrossingKind.C4 else 1
    return all(corner.span == span for corner in c.corners)


def _perpendiculars(pattern: CrossingPattern, steps: int) -> tuple[int, ...]:
    return tuple((ray + steps) % 8 for ray in pattern.perpendicular_rays)


def classify_crossing(
    c: Crossing, table: LegalCrossingTable, at_boundary: bool = False
) -> CrossingClass:
    """Classify a crossing as a legal C4/C8, a boundary half, or illegal.

    Args:
        c: Crossing to classify
        table: Legal crossing table
        at_boundary: Whether the center is a non-extreme boundary vertex, in
            which case only halves of legal crossings are accepted

    Returns:
        The crossing class
    """
    if c.conflicting_rays:
        return CrossingClass.ILLEGAL
    codes = c.codes
    if not at_boundary:
        if c.angle_units != 8:
            return CrossingClass.ILLEGAL
        found = table.match(codes)
        if found is None:
            return CrossingClass.ILLEGAL
        pattern, steps = found
        if not _corners_fit(c, pattern.kind):
            return CrossingClass.ILLEGAL
        if pattern.kind is CrossingKind.C4:
            if chirality_errors(c, _perpendiculars(pattern, steps)):
                return CrossingClass.ILLEGAL
            return CrossingClass.C4
        return CrossingClass.C8
    start = _covered_arc_start(c)
    if start is None:
        return CrossingClass.ILLEGAL
    for pattern, steps in table.match_half(start, codes):
        if not _corners_fit(c, pattern.kind):
            continue
        if pattern.kind is CrossingKind.C4 and chirality_errors(
            c, _perpendiculars(pattern, steps)
        ):
            continue
        return CrossingClass.BOUNDARY_HALF
    return CrossingClass.ILLEGAL
