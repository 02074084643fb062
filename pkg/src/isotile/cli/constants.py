"""Constants and enums for the command-line surface."""

from enum import IntEnum, StrEnum


class ExitCode(IntEnum):
    """Process exit codes."""

    OK = 0
    VIOLATIONS = 1
    USAGE = 2


class CensusKind(StrEnum):
    """What a census counts."""

    TILES = "tiles"
    CROSSINGS = "crossings"
    CROWNS = "crowns"
    SQUARES = "squares"
    C8 = "c8"


class ErrorCode(StrEnum):
    """Machine-readable error codes printed with diagnostics."""

    VIOLATIONS_FOUND = "violations_found"
    NOT_COMPOSABLE = "not_composable"
    CONFLICTING_GROUPING = "conflicting_grouping"
    PROSE_CONSTRAINT = "prose_constraint"
    SCHEMA_ERROR = "schema_error"
    GEOMETRY_ERROR = "geometry_error"
    OVERLAP = "overlap"
    SIZE_MISMATCH = "size_mismatch"
    SQUARE_GEOMETRY = "square_geometry"
    RESOLUTION = "resolution"
    SEED_FORMAT = "seed_format"
    EMPTY_CORE = "empty_core"
    CROSSING_TABLE = "crossing_table"
    IO_ERROR = "io_error"
    INVALID_INPUT = "invalid_input"
    USAGE = "usage"

