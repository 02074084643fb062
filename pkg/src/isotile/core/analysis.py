"""Censuses, crowns, C8 fillings and the translational period scan."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import IntEnum, StrEnum

import structlog

from isotile.core.crossings import (
    Crossing,
    CrossingClass,
    CrossingKind,
    CrossingPattern,
    LegalCrossingTable,
    NotAVertex,
    SideKind,
    classify_crossing,
    crossing_at,
)
from isotile.core.geometry import (
    Direction8,
    LatticePoint,
    ResolutionError,
    SimilarityMap,
)
from isotile.core.rules import default_crossing_table, interior_vertices
from isotile.core.substitution import decompose
from isotile.core.tiles import Patch, TileColor, TriangleTile, VertexRole

logger = structlog.get_logger()

MASKED = "**"


class IncompleteCrown(ValueError):
    """Raised when a crown is requested at a vertex not surrounded by tiles."""


class EmptyCore(ValueError):
    """Raised when no tile lies inside the period-scan core."""


class UpTo(StrEnum):
    """Symmetries a census identifies."""

    TRANSLATION = "translation"
    TRANSLATION_ROTATION = "rotation"


@dataclass(frozen=True, order=True)
class TileClass:
    """A tile modulo translation; ``leg`` is None when rotations are identified."""

    leg: tuple[int, int] | None
    body: TileColor
    leg_a: str
    leg_b: str
    hyp: str

    @property
    def label(self) -> str:
        leg = "*" if self.leg is None else f"{self.leg[0]},{self.leg[1]}"
        return f"{leg} {self.body.value} {self.leg_a} {self.leg_b} {self.hyp}"


def tile_class(t: TriangleTile, up_to: UpTo = UpTo.TRANSLATION) -> TileClass:
    leg = t.leg_vector.as_pair() if up_to is UpTo.TRANSLATION else None
    return TileClass(leg, t.body, t.dec_leg_a.code, t.dec_leg_b.code, t.dec_hyp.code)


def tile_label(
    r: LatticePoint,
    a: LatticePoint,
    b: LatticePoint,
    body: TileColor,
    leg_a: str,
    leg_b: str,
    hyp: str,
) -> str:
    """Compact text form of a placed, decorated tile."""
    return f"{r.x},{r.y} {a.x},{a.y} {b.x},{b.y} {body.value} {leg_a} {leg_b} {hyp}"


def tile_census(p: Patch, up_to: UpTo = UpTo.TRANSLATION) -> Counter[TileClass]:
    return Counter(tile_class(t, up_to) for t in p.tiles)


class C8Filling(IntEnum):
    """Filling of a C8 by the corner on the axis-out ray and that ray's side kind."""

    RED_LEG = 1
    GREEN_LEG = 2
    RED_HYP = 3
    GREEN_HYP = 4


class CrownForm(StrEnum):
    """Shape family of a crown.

    Decomposition carries a right cross to a fresh acute crown, then to the
    leg-axis and hypotenuse-axis acute crowns, which alternate from then on.
    """

    RIGHT_CROSS = "right-cross"
    FRESH_ACUTE = "fresh-acute"
    LEG_AXIS_ACUTE = "leg-axis-acute"
    HYP_AXIS_ACUTE = "hyp-axis-acute"
    OTHER = "other"


_FORM_OF_FILLING = {
    C8Filling.GREEN_HYP: CrownForm.FRESH_ACUTE,
    C8Filling.GREEN_LEG: CrownForm.LEG_AXIS_ACUTE,
    C8Filling.RED_HYP: CrownForm.HYP_AXIS_ACUTE,
}


def c8_filling_of(c: Crossing) -> C8Filling | None:
    """Classify an eight-germ crossing with a unique axis; None otherwise."""
    if len(c.germs) != 8 or c.conflicting_rays:
        return None
    axis = CrossingPattern(CrossingKind.C8, c.codes).axis
    if axis is None:
        return None
    ray = Direction8(axis[0])
    corner = c.corner_from(ray)
    germ = c.germ_at(ray)
    if corner is None or germ is None:
        return None
    green = corner.body is TileColor.GREEN
    if germ.side_kind is SideKind.LEG:
        return C8Filling.GREEN_LEG if green else C8Filling.RED_LEG
    return C8Filling.GREEN_HYP if green else C8Filling.RED_HYP


def crown_form(c: Crossing) -> CrownForm:
    if len(c.corners) == 4 and all(k.role is VertexRole.R for k in c.corners):
        return CrownForm.RIGHT_CROSS
    if len(c.corners) == 8 and all(k.span == 1 for k in c.corners):
        filling = c8_filling_of(c)
        if filling is not None:
            return _FORM_OF_FILLING.get(filling, CrownForm.OTHER)
    return CrownForm.OTHER


@dataclass(frozen=True, order=True)
class CrownTile:
    """Crown member relative to the center; masked sides read ``**``."""

    r: LatticePoint
    a: LatticePoint
    b: LatticePoint
    body: TileColor
    leg_a: str
    leg_b: str
    hyp: str

    @property
    def label(self) -> str:
        return tile_label(
            self.r, self.a, self.b, self.body, self.leg_a, self.leg_b, self.hyp
        )


@dataclass(frozen=True, order=True)
class CrownClass:
    """Tiles around a vertex modulo translation and 45-degree rotations.

    Members are moved to the center, shrunk to unit legs, turned so that legs
    run along the axes, and the least of the four quarter turns is kept.
    """

    form: CrownForm
    tiles: tuple[CrownTile, ...]
    masked: bool = False

    def __len__(self) -> int:
        return len(self.tiles)

    @property
    def label(self) -> str:
        return f"{self.form.value} [{'; '.join(t.label for t in self.tiles)}]"


def _shrink(p: LatticePoint, size: int) -> LatticePoint:
    return LatticePoint(p.x // size, p.y // size)


def _outer_side(t: TriangleTile, v: LatticePoint) -> str:
    role = t.role_of(v)
    if role is VertexRole.R:
        return "hyp"
    return "leg_b" if role is VertexRole.A else "leg_a"


def _crown_tile(
    t: TriangleTile, v: LatticePoint, m: SimilarityMap, mask_outer: bool
) -> CrownTile:
    size = t.size
    r, a, b = (m.linear(_shrink(w - v, size)) for w in t.vertices)
    codes = {
        "leg_a": t.dec_leg_a.code,
        "leg_b": t.dec_leg_b.code,
        "hyp": t.dec_hyp.code,
    }
    if mask_outer:
        codes[_outer_side(t, v)] = MASKED
    return CrownTile(r, a, b, t.body, codes["leg_a"], codes["leg_b"], codes["hyp"])


def crown_at(p: Patch, v: LatticePoint, mask_outer: bool = False) -> CrownClass:
    """Canonical class of the tiles containing ``v``.

    Args:
        p: Patch containing the crown
        v: Center vertex
        mask_outer: Ignore colors and arrows of the sides opposite ``v``

    Returns:
        The crown class

    Raises:
        NotAVertex: If ``v`` is no vertex of ``p``
        IncompleteCrown: If the tiles at ``v`` do not close up to a full turn
    """
    if v not in p.vertex_index:
        raise NotAVertex(f"{v.as_pair()} is not a vertex of the patch")
    if p.angle_units[v] != 8 or v in p.hanging_vertices:
        raise IncompleteCrown(f"Crown at {v.as_pair()} is not complete")
    crossing = crossing_at(p, v)
    form = crown_form(crossing)
    members = [t for t, _ in p.vertex_index[v]]
    diagonal = members[0].leg_vector.x != 0 and members[0].leg_vector.y != 0
    # a 45-degree turn scaled by 1/sqrt(2) sends unit diagonal legs onto the axes
    base = 1 if diagonal else 0
    best: tuple[CrownTile, ...] | None = None
    for quarter in range(4):
        m = SimilarityMap(base + 2 * quarter, -base)
        candidate = tuple(sorted(_crown_tile(t, v, m, mask_outer) for t in members))
        if best is None or candidate < best:
            best = candidate
    assert best is not None
    return CrownClass(form, best, mask_outer)


def crown_census(p: Patch, mask_outer: bool = False) -> Counter[CrownClass]:
    """Count crown classes over all full-turn vertices."""
    census = Counter(crown_at(p, v, mask_outer) for v in interior_vertices(p))
    logger.debug("crown_census", tiles=len(p), classes=len(census))
    return census


def _crown_patch(p: Patch, v: LatticePoint) -> Patch:
    return Patch(tuple(t for t, _ in p.vertex_index[v]))


def crown_sigma_chain(
    p: Patch,
    v: LatticePoint,
    steps: int,
    mask_outer: bool = False,
    rescale: bool = False,
) -> list[CrownClass]:
    """Crown classes at ``v`` after each of 1..steps decompositions of its crown.

    Vertices keep their place under decomposition, so the image of ``v`` is
    ``v`` itself, doubled whenever the crown is rescaled.

    Args:
        p: Patch containing a complete crown at ``v``
        v: Center vertex
        steps: Number of decompositions
        mask_outer: Mask outer sides in the reported classes
        rescale: Scale the crown by 2 whenever a midpoint is not integral

    Raises:
        IncompleteCrown: If the crown at ``v`` is not complete
        ResolutionError: If a midpoint is not integral and ``rescale`` is off
    """
    crown_at(p, v)
    current = _crown_patch(p, v)
    center = v
    chain: list[CrownClass] = []
    for _ in range(steps):
        try:
            decomposed = decompose(current)
        except ResolutionError:
            if not rescale:
                raise
            current = current.scaled(1)
            center = center.scaled(2)
            decomposed = decompose(current)
        chain.append(crown_at(decomposed, center, mask_outer))
        current = _crown_patch(decomposed, center)
    return chain


def c8_filling_census(
    p: Patch, table: LegalCrossingTable | None = None
) -> Counter[C8Filling]:
    """Count the fillings of every legal interior C8."""
    if table is None:
        table = default_crossing_table()
    census: Counter[C8Filling] = Counter()
    for v in interior_vertices(p):
        crossing = crossing_at(p, v)
        if classify_crossing(crossing, table) is not CrossingClass.C8:
            continue
        filling = c8_filling_of(crossing)
        if filling is not None:
            census[filling] += 1
    return census


def vertex_classes(
    p: Patch, table: LegalCrossingTable | None = None
) -> dict[LatticePoint, CrossingClass]:
    """Classify every constrained vertex.

    Interior vertices are classified as full crossings and non-extreme
    boundary vertices as halves; extreme vertices are left out.
    """
    if table is None:
        table = default_crossing_table()
    classes: dict[LatticePoint, CrossingClass] = {}
    for v, units in p.angle_units.items():
        if p.is_interior_vertex(v):
            classes[v] = classify_crossing(crossing_at(p, v), table)
        elif units >= 4:
            classes[v] = classify_crossing(crossing_at(p, v), table, at_boundary=True)
    return classes


def crossing_census(
    p: Patch, table: LegalCrossingTable | None = None
) -> Counter[CrossingClass]:
    """Count crossing classes over all constrained vertices."""
    return Counter(vertex_classes(p, table).values())


@dataclass(frozen=True)
class PeriodReport:
    """Translations under which the core of a patch reappears in the patch."""

    core_radius: int
    max_shift: int
    core_tiles: int
    survivors: tuple[LatticePoint, ...] = ()

    @property
    def periodic(self) -> bool:
        return bool(self.survivors)


def patch_diameter(p: Patch) -> int:
    """Largest side of the bounding box of the patch."""
    if not p.tiles:
        return 0
    xs = [w.x for t in p.tiles for w in t.vertices]
    ys = [w.y for t in p.tiles for w in t.vertices]
    return max(max(xs) - min(xs), max(ys) - min(ys))


def _doubled_centroid(p: Patch) -> LatticePoint:
    count = 3 * len(p.tiles)
    sx = sum(w.x for t in p.tiles for w in t.vertices)
    sy = sum(w.y for t in p.tiles for w in t.vertices)
    return LatticePoint((2 * sx) // count, (2 * sy) // count)


def _shifts(max_shift: int) -> list[LatticePoint]:
    bound = max_shift * max_shift
    return [
        LatticePoint(x, y)
        for x in range(-max_shift, max_shift + 1)
        for y in range(-max_shift, max_shift + 1)
        if (x or y) and x * x + y * y <= bound
    ]


def period_scan(p: Patch, core_radius: int, max_shift: int) -> PeriodReport:
    """Scan lattice translations for periods of the patch's core.

    The core holds the tiles whose vertices all lie within ``core_radius`` of
    the centroid; distances use doubled coordinates so they stay integral.
    A shift survives when every core tile, translated, is a tile of ``p`` with
    the same decorations.

    Raises:
        EmptyCore: If no tile lies within the core radius
    """
    if not p.tiles:
        raise EmptyCore("Empty patch has no core")
    c2 = _doubled_centroid(p)
    reach = (2 * core_radius) ** 2

    def in_core(t: TriangleTile) -> bool:
        offsets = (w.scaled(2) - c2 for w in t.vertices)
        return all(d.dot(d) <= reach for d in offsets)

    core = [t for t in p.tiles if in_core(t)]
    if not core:
        raise EmptyCore(f"No tile lies within radius {core_radius} of the centroid")
    tiles = p.tile_set
    shifts = _shifts(max_shift)
    survivors: list[LatticePoint] = []
    for shift in shifts:
        m = SimilarityMap(0, 0, shift)
        if all(t.transformed(m) in tiles for t in core):
            survivors.append(shift)
    logger.info(
        "period_scan_finished",
        core_tiles=len(core),
        shifts=len(shifts),
        survivors=len(survivors),
    )
    return PeriodReport(core_radius, max_shift, len(core), tuple(survivors))
