"""Versioned JSON documents for patches, crossing tables and reports."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Literal, Self

import structlog
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from isotile.core.analysis import PeriodReport
from isotile.core.crossings import (
    CrossingKind,
    CrossingPattern,
    CrossingTableError,
    GermCode,
    LegalCrossingTable,
)
from isotile.core.geometry import LatticePoint
from isotile.core.rules import ValidationReport
from isotile.core.squares import SquareGeometryError, SquarePatch, SquareTile
from isotile.core.tiles import (
    GeometryError,
    OverlapError,
    Patch,
    PatchBuilder,
    Sense,
    SideDecoration,
    SizeMismatch,
    TileColor,
    TriangleTile,
    make_tile,
)
from isotile.utils.config import get_settings

logger = structlog.get_logger()

FORMAT_VERSION = 1
PACKAGED_TABLE = "crossing_table.json"

Pair = tuple[int, int]
ColorCode = Literal["R", "G"]
SenseCode = Literal["+", "-"]


class SchemaError(ValueError):
    """Raised when a document does not match its schema."""

    def __init__(self, message: str, locations: list[str] | None = None) -> None:
        self.locations = locations or []
        super().__init__(message)


class _Record(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True, frozen=True)


class SideRecord(_Record):
    color: ColorCode
    sense: SenseCode


class SidesRecord(_Record):
    leg_a: SideRecord
    leg_b: SideRecord
    hyp: SideRecord


class TileRecord(_Record):
    """One triangle: its three vertices, body color and side decorations."""

    r: Pair
    a: Pair
    b: Pair
    body: ColorCode
    sides: SidesRecord


class SquareRecord(_Record):
    center: Pair
    tiles: list[TileRecord] = Field(min_length=4, max_length=4)


class PatchDocument(_Record):
    """A triangle or square patch with its size unit."""

    format_version: Literal[1]
    kind: Literal["triangles", "squares"]
    unit: int = Field(ge=0)
    tiles: list[TileRecord | SquareRecord]

    @model_validator(mode="after")
    def check_record_kinds(self) -> Self:
        expected = TileRecord if self.kind == "triangles" else SquareRecord
        for i, record in enumerate(self.tiles):
            if not isinstance(record, expected):
                raise ValueError(f"tiles[{i}] is not a {self.kind[:-1]} record")
        return self


def _side_record(d: SideDecoration) -> SideRecord:
    return SideRecord(color=d.color.value, sense=d.sense.value)


def _side(record: SideRecord) -> SideDecoration:
    return SideDecoration(TileColor(record.color), Sense(record.sense))


def tile_record(t: TriangleTile) -> TileRecord:
    return TileRecord(
        r=t.r.as_pair(),
        a=t.a.as_pair(),
        b=t.b.as_pair(),
        body=t.body.value,
        sides=SidesRecord(
            leg_a=_side_record(t.dec_leg_a),
            leg_b=_side_record(t.dec_leg_b),
            hyp=_side_record(t.dec_hyp),
        ),
    )


def _tile(record: TileRecord) -> TriangleTile:
    return make_tile(
        LatticePoint(*record.r),
        LatticePoint(*record.a),
        LatticePoint(*record.b),
        TileColor(record.body),
        _side(record.sides.leg_a),
        _side(record.sides.leg_b),
        _side(record.sides.hyp),
    )


def _line(record: BaseModel) -> str:
    return json.dumps(record.model_dump(mode="json"), separators=(", ", ": "))


def _canonical(
    header: dict[str, object], sections: list[tuple[str, list[str]]]
) -> bytes:
    items = [f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in header.items()]
    for key, lines in sections:
        if lines:
            rows = ",\n".join(f"    {line}" for line in lines)
            items.append(f"  {json.dumps(key)}: [\n{rows}\n  ]")
        else:
            items.append(f"  {json.dumps(key)}: []")
    return ("{\n" + ",\n".join(items) + "\n}\n").encode("utf-8")


def serialize(p: Patch | SquarePatch) -> bytes:
    """Canonical document bytes: fixed key order, one tile record per line."""
    if isinstance(p, SquarePatch):
        kind = "squares"
        unit = p.squares[0].size if p.squares else 0
        records: list[BaseModel] = [
            SquareRecord(
                center=s.center.as_pair(),
                tiles=[tile_record(t) for t in s.quarter_tiles],
            )
            for s in p
        ]
    else:
        kind = "triangles"
        unit = p.tile_size or 0
        records = [tile_record(t) for t in p.tiles]
    header: dict[str, object] = {
        "format_version": FORMAT_VERSION,
        "kind": kind,
        "unit": unit,
    }
    return _canonical(header, [("tiles", [_line(r) for r in records])])


def _record_lines(text: str) -> list[int]:
    return [
        n
        for n, line in enumerate(text.splitlines(), start=1)
        if line.lstrip().startswith(('{"r":', '{"center":'))
    ]


def _schema_error(e: ValidationError, what: str) -> SchemaError:
    locations = [".".join(str(part) for part in err["loc"]) for err in e.errors()]
    first = e.errors()[0]["msg"] if e.errors() else "invalid document"
    where = locations[0] if locations and locations[0] else "document"
    return SchemaError(f"Invalid {what} at {where}: {first}", locations)


def parse(content: bytes | str) -> Patch | SquarePatch:
    """Parse a patch document with checked construction.

    Raises:
        SchemaError: If the document does not match the schema or its unit
        GeometryError: If a tile is not a positively framed lattice triangle
        OverlapError: If two tiles overlap
        SizeMismatch: If tile sizes differ
        SquareGeometryError: If a square record is not a legal square tile
    """
    text = content.decode("utf-8") if isinstance(content, bytes) else content
    try:
        doc = PatchDocument.model_validate_json(text)
    except ValidationError as e:
        raise _schema_error(e, "patch document") from e
    lines = _record_lines(text)
    if len(lines) != len(doc.tiles):
        lines = []

    def where(i: int) -> str:
        return f"tiles[{i}] (line {lines[i]})" if lines else f"tiles[{i}]"

    builder = PatchBuilder()
    squares: list[SquareTile] = []
    for i, record in enumerate(doc.tiles):
        try:
            if isinstance(record, SquareRecord):
                quarters = [_tile(t) for t in record.tiles]
                square = SquareTile(
                    LatticePoint(*record.center),
                    (quarters[0], quarters[1], quarters[2], quarters[3]),
                )
                squares.append(square)
                for t in square.quarter_tiles:
                    builder.add(t)
            else:
                builder.add(_tile(record))
        except (
            GeometryError,
            OverlapError,
            SizeMismatch,
            SquareGeometryError,
        ) as e:
            raise type(e)(f"{where(i)}: {e}") from e
    patch = builder.build()
    actual = patch.tile_size or 0
    if doc.unit != actual:
        raise SchemaError(
            f"unit is {doc.unit} but the tiles have leg size {actual}", ["unit"]
        )
    logger.debug("document_parsed", kind=doc.kind, records=len(doc.tiles))
    if doc.kind == "squares":
        return SquarePatch(tuple(squares))
    return patch


def parse_patch(content: bytes | str) -> Patch:
    """Parse a document as triangles; square documents are cut into quarters."""
    parsed = parse(content)
    return parsed.triangles() if isinstance(parsed, SquarePatch) else parsed


GermRecord = tuple[int, Literal["in", "out"], ColorCode]


class CrossingTableDocument(_Record):
    """The legal C4 and C8 germ sets, one canonical rotation each."""

    format_version: Literal[1]
    oracle_level: int = Field(ge=0)
    alternative_reading_holds: bool
    c4: list[list[GermRecord]]
    c8: list[list[GermRecord]]


def serialize_table(table: LegalCrossingTable) -> bytes:
    header: dict[str, object] = {
        "format_version": FORMAT_VERSION,
        "oracle_level": table.oracle_level,
        "alternative_reading_holds": table.alternative_reading_holds,
    }
    return _canonical(
        header,
        [
            ("c4", [json.dumps(list(p.germs)) for p in table.c4]),
            ("c8", [json.dumps(list(p.germs)) for p in table.c8]),
        ],
    )


def _patterns(
    rows: list[list[GermRecord]], kind: CrossingKind
) -> tuple[CrossingPattern, ...]:
    patterns: list[CrossingPattern] = []
    for row in rows:
        codes: tuple[GermCode, ...] = tuple(
            sorted((ray % 8, arrow, color) for ray, arrow, color in row)
        )
        pattern = CrossingPattern.from_codes(codes)
        if pattern.kind is not kind:
            raise CrossingTableError(
                f"{kind.value} entry has {len(codes)} germs: {list(codes)}"
            )
        patterns.append(pattern)
    return tuple(patterns)


def parse_table(content: bytes | str) -> LegalCrossingTable:
    """Parse a crossing table document, re-canonicalizing every entry.

    Raises:
        SchemaError: If the document does not match the schema
        CrossingTableError: If an entry is not a C4 or C8 germ set
    """
    try:
        doc = CrossingTableDocument.model_validate_json(content)
    except ValidationError as e:
        raise _schema_error(e, "crossing table") from e
    return LegalCrossingTable(
        c4=_patterns(doc.c4, CrossingKind.C4),
        c8=_patterns(doc.c8, CrossingKind.C8),
        alternative_reading_holds=doc.alternative_reading_holds,
        oracle_level=doc.oracle_level,
    )


@lru_cache
def _packaged_table() -> LegalCrossingTable:
    data = resources.files("isotile").joinpath("data", PACKAGED_TABLE).read_bytes()
    return parse_table(data)


@lru_cache
def _table_file(path: str) -> LegalCrossingTable:
    return parse_table(Path(path).read_bytes())


def load_crossing_table(path: Path | str | None = None) -> LegalCrossingTable:
    """Load a crossing table from ``path``, the settings override, or the package.

    Raises:
        OSError: If the table file cannot be read
        SchemaError: If the file is not a crossing table document
    """
    resolved = str(path) if path else get_settings().crossing_table_path
    if resolved:
        logger.debug("crossing_table_loaded", path=resolved)
        return _table_file(resolved)
    return _packaged_table()


class EdgeViolationRecord(_Record):
    edge: tuple[Pair, Pair]
    kind: str
    detail: str


class ColorViolationRecord(_Record):
    edge: tuple[Pair, Pair]
    color: ColorCode


class CrossingViolationRecord(_Record):
    vertex: Pair
    found: str
    detail: str


class ValidationReportDocument(_Record):
    format_version: Literal[1] = 1
    mode: str
    ok: bool
    violation_count: int
    edge_violations: list[EdgeViolationRecord]
    color_violations: list[ColorViolationRecord]
    crossing_violations: list[CrossingViolationRecord]

    @classmethod
    def from_report(cls, report: ValidationReport) -> ValidationReportDocument:
        return cls(
            mode=report.mode.value,
            ok=report.ok,
            violation_count=report.violation_count,
            edge_violations=[
                EdgeViolationRecord(
                    edge=(v.edge[0].as_pair(), v.edge[1].as_pair()),
                    kind=v.kind.value,
                    detail=v.detail,
                )
                for v in report.edge_violations
            ],
            color_violations=[
                ColorViolationRecord(
                    edge=(v.edge[0].as_pair(), v.edge[1].as_pair()),
                    color=v.color.value,
                )
                for v in report.color_violations
            ],
            crossing_violations=[
                CrossingViolationRecord(
                    vertex=v.vertex.as_pair(), found=v.found.value, detail=v.detail
                )
                for v in report.crossing_violations
            ],
        )


class CensusEntry(_Record):
    label: str
    count: int


class CensusDocument(_Record):
    """Class counts of one census, sorted by label."""

    format_version: Literal[1] = 1
    census: str
    up_to: str | None = None
    mask_outer: bool = False
    total: int
    classes: int
    entries: list[CensusEntry]

    @classmethod
    def from_counts(
        cls,
        census: str,
        counts: dict[str, int],
        *,
        up_to: str | None = None,
        mask_outer: bool = False,
    ) -> CensusDocument:
        return cls(
            census=census,
            up_to=up_to,
            mask_outer=mask_outer,
            total=sum(counts.values()),
            classes=len(counts),
            entries=[
                CensusEntry(label=label, count=counts[label])
                for label in sorted(counts)
            ],
        )


class PeriodReportDocument(_Record):
    format_version: Literal[1] = 1
    core_radius: int
    max_shift: int
    core_tiles: int
    periodic: bool
    survivors: list[Pair]

    @classmethod
    def from_report(cls, report: PeriodReport) -> PeriodReportDocument:
        return cls(
            core_radius=report.core_radius,
            max_shift=report.max_shift,
            core_tiles=report.core_tiles,
            periodic=report.periodic,
            survivors=[v.as_pair() for v in report.survivors],
        )


def dump_report(
    doc: ValidationReportDocument | CensusDocument | PeriodReportDocument,
) -> bytes:
    return (doc.model_dump_json(indent=2) + "\n").encode("utf-8")
