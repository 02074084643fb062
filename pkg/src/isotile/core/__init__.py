"""Tiling kernel: geometry, tiles, local rules, substitution and analysis."""

from isotile.core.analysis import (
    C8Filling,
    CrownClass,
    CrownForm,
    EmptyCore,
    IncompleteCrown,
    PeriodReport,
    TileClass,
    UpTo,
    c8_filling_census,
    crossing_census,
    crown_at,
    crown_census,
    crown_sigma_chain,
    period_scan,
    tile_census,
)
from isotile.core.crossings import (
    Crossing,
    CrossingClass,
    CrossingPattern,
    LegalCrossingTable,
    NotAVertex,
    classify_crossing,
    crossing_at,
)
from isotile.core.geometry import (
    Direction8,
    LatticePoint,
    NonIntegralMap,
    ResolutionError,
    SimilarityMap,
    apply_similarity,
    midpoint,
)
from isotile.core.rules import (
    ValidationMode,
    ValidationReport,
    derive_crossing_table,
    validate,
)
from isotile.core.squares import (
    ConflictingGrouping,
    SquarePatch,
    SquareTile,
    cut_square,
    group_into_squares,
    square_census,
    square_family,
    validate_squares,
)
from isotile.core.substitution import (
    NotComposable,
    SupertileSpec,
    compose,
    decompose,
    decompose_tile,
    similar_eq,
    supertile,
)
from isotile.core.tiles import (
    GeometryError,
    OverlapError,
    Patch,
    SideDecoration,
    TileColor,
    TriangleTile,
    add_tile,
    make_tile,
    tile_family,
)

__all__ = [
    "C8Filling",
    "ConflictingGrouping",
    "Crossing",
    "CrossingClass",
    "CrossingPattern",
    "CrownClass",
    "CrownForm",
    "Direction8",
    "EmptyCore",
    "GeometryError",
    "IncompleteCrown",
    "LatticePoint",
    "LegalCrossingTable",
    "NonIntegralMap",
    "NotAVertex",
    "NotComposable",
    "OverlapError",
    "Patch",
    "PeriodReport",
    "ResolutionError",
    "SideDecoration",
    "SimilarityMap",
    "SquarePatch",
    "SquareTile",
    "SupertileSpec",
    "TileClass",
    "TileColor",
    "TriangleTile",
    "UpTo",
    "ValidationMode",
    "ValidationReport",
    "add_tile",
    "apply_similarity",
    "c8_filling_census",
    "classify_crossing",
    "compose",
    "crossing_at",
    "crossing_census",
    "crown_at",
    "crown_census",
    "crown_sigma_chain",
    "cut_square",
    "decompose",
    "decompose_tile",
    "derive_crossing_table",
    "group_into_squares",
    "make_tile",
    "midpoint",
    "period_scan",
    "similar_eq",
    "square_census",
    "square_family",
    "supertile",
    "tile_census",
    "tile_family",
    "validate",
    "validate_squares",
]
