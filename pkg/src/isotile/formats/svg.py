"""SVG rendering of triangle patches with svgwrite."""

from __future__ import annotations

import io
from dataclasses import dataclass
from math import gcd

import structlog
import svgwrite

from isotile.core.analysis import vertex_classes
from isotile.core.crossings import CrossingClass, LegalCrossingTable
from isotile.core.geometry import LatticePoint
from isotile.core.tiles import Patch, TileColor

logger = structlog.get_logger()

BODY_FILL = {TileColor.RED: "#e8a0a0", TileColor.GREEN: "#a8d5a0"}
ARROW_STROKE = {TileColor.RED: "#b3261e", TileColor.GREEN: "#2e7d32"}
LABELS = {
    CrossingClass.C4: "C4",
    CrossingClass.C8: "C8",
    CrossingClass.BOUNDARY_HALF: "H",
    CrossingClass.ILLEGAL: "X",
}

# (tail, head, color) of one drawn side arrow
Arrow = tuple[LatticePoint, LatticePoint, TileColor]


@dataclass(frozen=True)
class RenderOptions:
    """Rendering switches.

    Attributes:
        unit: Pixels per lattice unit; even so that side midpoints are integral
        labels: Write the crossing class next to every constrained vertex
        long_arrows: Draw runs of collinear equal arrows as one long arrow
        table: Crossing table used for labels; the packaged table when omitted
    """

    unit: int = 24
    labels: bool = False
    long_arrows: bool = False
    table: LegalCrossingTable | None = None

    def __post_init__(self) -> None:
        if self.unit <= 0 or self.unit % 2:
            raise ValueError(f"unit must be a positive even number, got {self.unit}")


class _Canvas:
    """Maps lattice points to integer pixels with the y axis pointing up."""

    def __init__(self, p: Patch, unit: int) -> None:
        points = [v for t in p.tiles for v in t.vertices] or [LatticePoint(0, 0)]
        self.unit = unit
        self.margin = unit
        self.x0 = min(v.x for v in points)
        self.y1 = max(v.y for v in points)
        self.width = (max(v.x for v in points) - self.x0) * unit + 2 * self.margin
        self.height = (self.y1 - min(v.y for v in points)) * unit + 2 * self.margin

    def px(self, v: LatticePoint) -> tuple[int, int]:
        return (
            (v.x - self.x0) * self.unit + self.margin,
            (self.y1 - v.y) * self.unit + self.margin,
        )

    def mid(self, v: LatticePoint, w: LatticePoint) -> tuple[int, int]:
        (x1, y1), (x2, y2) = self.px(v), self.px(w)
        return ((x1 + x2) // 2, (y1 + y2) // 2)


def _arrows(p: Patch) -> list[Arrow]:
    seen: set[Arrow] = set()
    for entries in p.edge_index.values():
        for tile, side in entries:
            tail, head = tile.arrow(side)
            seen.add((tail, head, tile.decoration(side).color))
    return sorted(seen)


def _direction(arrow: Arrow) -> tuple[int, int, TileColor]:
    tail, head, color = arrow
    d = head - tail
    g = gcd(d.x, d.y)
    return (d.x // g, d.y // g, color)


def _long_arrows(arrows: list[Arrow]) -> list[tuple[list[LatticePoint], TileColor]]:
    """Chain arrows whose head is the tail of an equal arrow on the same line."""
    following = {(_direction(a), a[0]): a for a in arrows}
    heads = {(_direction(a), a[1]) for a in arrows}
    chains: list[tuple[list[LatticePoint], TileColor]] = []
    for arrow in arrows:
        key = _direction(arrow)
        if (key, arrow[0]) in heads:
            continue
        chain = [arrow[0], arrow[1]]
        nxt = following.get((key, arrow[1]))
        while nxt is not None:
            chain.append(nxt[1])
            nxt = following.get((key, nxt[1]))
        chains.append((chain, arrow[2]))
    return chains


def _markers(dwg: svgwrite.Drawing) -> dict[TileColor, svgwrite.container.Marker]:
    markers: dict[TileColor, svgwrite.container.Marker] = {}
    for color in TileColor:
        marker = dwg.marker(
            id=f"arrow-{color.value}",
            insert=(6, 4),
            size=(8, 8),
            orient="auto",
            markerUnits="userSpaceOnUse",
        )
        marker.add(dwg.path(d="M0,0 L8,4 L0,8 z", fill=ARROW_STROKE[color]))
        dwg.defs.add(marker)
        markers[color] = marker
    return markers


def render_svg(p: Patch, options: RenderOptions | None = None) -> bytes:
    """Draw tile bodies and side arrows as a deterministic SVG document.

    Args:
        p: Patch to draw
        options: Rendering switches

    Returns:
        UTF-8 encoded SVG 1.1 document
    """
    options = options or RenderOptions()
    canvas = _Canvas(p, options.unit)
    dwg = svgwrite.Drawing(
        size=(canvas.width, canvas.height),
        viewBox=f"0 0 {canvas.width} {canvas.height}",
        profile="full",
        debug=False,
    )
    markers = _markers(dwg)

    bodies = dwg.g(id="tiles", stroke="#404040", stroke_width=1)
    for t in p.tiles:
        bodies.add(
            dwg.polygon(
                points=[canvas.px(v) for v in t.vertices], fill=BODY_FILL[t.body]
            )
        )
    dwg.add(bodies)

    arrows = dwg.g(id="arrows", fill="none", stroke_width=2)
    drawn = _arrows(p)
    if options.long_arrows:
        for chain, color in _long_arrows(drawn):
            line = dwg.polyline(
                points=[canvas.px(chain[0]), canvas.px(chain[-1])],
                stroke=ARROW_STROKE[color],
            )
            line.set_markers((None, None, markers[color]))
            arrows.add(line)
    else:
        for tail, head, color in drawn:
            line = dwg.polyline(
                points=[canvas.px(tail), canvas.mid(tail, head), canvas.px(head)],
                stroke=ARROW_STROKE[color],
            )
            line.set_markers((None, markers[color], None))
            arrows.add(line)
    dwg.add(arrows)

    if options.labels and p.tiles:
        labels = dwg.g(id="labels", font_size=options.unit // 2, text_anchor="middle")
        for v, found in vertex_classes(p, options.table).items():
            x, y = canvas.px(v)
            labels.add(dwg.text(LABELS[found], insert=(x, y - options.unit // 4)))
        dwg.add(labels)

    buffer = io.StringIO()
    dwg.write(buffer)
    logger.debug("svg_rendered", tiles=len(p), width=canvas.width, height=canvas.height)
    return buffer.getvalue().encode("utf-8")
