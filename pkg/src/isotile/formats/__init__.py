"""Patch documents and SVG rendering."""

from isotile.formats.document import (
    SchemaError,
    load_crossing_table,
    parse,
    parse_patch,
    parse_table,
    serialize,
    serialize_table,
)
from isotile.formats.svg import RenderOptions, render_svg

__all__ = [
    "RenderOptions",
    "SchemaError",
    "load_crossing_table",
    "parse",
    "parse_patch",
    "parse_table",
    "render_svg",
    "serialize",
    "serialize_table",
]
