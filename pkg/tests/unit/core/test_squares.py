"""Unit tests for square tiles and grouping."""

from dataclasses import replace

import pytest

from isotile.core.analysis import UpTo
from isotile.core.geometry import ORIGIN, LatticePoint
from isotile.core.squares import (
    ConflictingGrouping,
    SquareGeometryError,
    SquarePatch,
    SquareTile,
    cut_square,
    group_into_squares,
    square_census,
    square_class,
    square_family,
    validate_squares,
)
from isotile.core.tiles import Patch, TileColor


@pytest.fixture
def square(fan):
    """The square of a default C4 fan."""
    return SquareTile(ORIGIN, fan().tiles)


@pytest.mark.unit
class TestSquareTile:
    """Test cases for SquareTile construction."""

    def test_quarters_ordered_by_start_ray(self, square):
        """Should order quarters counterclockwise from the east ray."""
        starts = [t.a - t.r for t in square.quarter_tiles]

        assert starts == [
            LatticePoint(1, 0),
            LatticePoint(0, 1),
            LatticePoint(-1, 0),
            LatticePoint(0, -1),
        ]
        assert square.bodies == (TileColor.RED, TileColor.GREEN) * 2

    def test_properties(self, square):
        """Should expose size, alignment and side decorations."""
        assert square.size == 1
        assert not square.legs_diagonal
        assert len(square.outer_sides) == 4
        assert len(square.half_diagonals) == 8

    def test_cut_is_the_quarters(self, square):
        """Should cut into its four quarter tiles."""
        assert cut_square(square) == square.quarter_tiles

    def test_wrong_count(self, fan):
        """Should need exactly four quarters."""
        with pytest.raises(SquareGeometryError, match="4 quarter tiles, got 3"):
            SquareTile(ORIGIN, fan().tiles[:3])

    def test_right_angle_elsewhere(self, fan):
        """Should need every right angle at the center."""
        with pytest.raises(SquareGeometryError, match="right angle at"):
            SquareTile(LatticePoint(1, 0), fan().tiles)

    def test_gap(self, fan):
        """Should need the quarters to fill the square."""
        tiles = list(fan().tiles)
        tiles[1] = replace(tiles[0], body=tiles[0].body.other())

        with pytest.raises(SquareGeometryError, match="do not fill the square"):
            SquareTile(ORIGIN, tuple(tiles))

    def test_wrong_chirality(self, fan):
        """Should need red left and green right of the entering arrows."""
        bodies = (TileColor.GREEN, TileColor.RED) * 2

        with pytest.raises(SquareGeometryError, match="not a legal C4"):
            SquareTile(ORIGIN, fan(bodies=bodies).tiles)

    def test_mixed_sizes(self, fan):
        """Should need equal quarter sizes."""
        small = fan().tiles
        large = fan(size=2).tiles

        with pytest.raises(SquareGeometryError, match="differ in size"):
            SquareTile(ORIGIN, (*small[:2], *large[2:]))

    def test_rotation(self, square):
        """Should come back after four quarter turns."""
        assert square.rotated(4) == square
        assert square.rotated(1) != square
        assert square.rotated(1).rotated(3) == square

    def test_translation(self, square):
        """Should move the center and every quarter."""
        moved = square.translated(LatticePoint(4, -2))

        assert moved.center == LatticePoint(4, -2)
        assert all(t.r == moved.center for t in moved.quarter_tiles)


@pytest.mark.unit
class TestSquareFamily:
    """Test cases for the enumerated square family."""

    def test_family_size(self):
        """Should enumerate 4 ** 6 distinct squares."""
        family = square_family()

        assert len(family) == 4096
        assert len(set(family)) == 4096

    def test_family_alignment(self):
        """Should center every square at the origin with diagonal half-diagonals."""
        family = square_family()

        assert all(s.center == ORIGIN and s.legs_diagonal for s in family)

    def test_rotation_classes(self):
        """Should fall into classes of four under quarter turns."""
        census = square_census(SquarePatch(), UpTo.TRANSLATION_ROTATION)
        classes = {square_class(s, UpTo.TRANSLATION_ROTATION) for s in square_family()}

        assert not census
        assert len(classes) == 1024

    def test_rejects_nonpositive_size(self):
        """Should reject a zero size."""
        with pytest.raises(ValueError, match="positive"):
            square_family(0)


@pytest.mark.unit
class TestSquarePatch:
    """Test cases for SquarePatch."""

    def test_mixed_sizes(self, fan):
        """Should reject squares of different sizes."""
        small = SquareTile(ORIGIN, fan().tiles)
        center = LatticePoint(10, 10)
        large = SquareTile(center, fan(size=2, center=center).tiles)

        with pytest.raises(SquareGeometryError, match="size"):
            SquarePatch((small, large))

    def test_mixed_alignment(self, fan):
        """Should reject squares with different half-diagonal directions."""
        axis = SquareTile(ORIGIN, fan().tiles)
        center = LatticePoint(10, 10)
        diagonal = SquareTile(center, fan(out_ray=1, center=center).tiles)

        with pytest.raises(SquareGeometryError, match="not aligned"):
            SquarePatch((axis, diagonal))

    def test_neighbors_in_center_order(self, fan):
        """Should keep squares meeting along a side in center order."""
        first = SquareTile(ORIGIN, fan(out_ray=1).tiles)
        center = LatticePoint(2, 0)
        second = SquareTile(center, fan(out_ray=1, center=center).tiles)

        sp = SquarePatch((second, first))

        assert len(sp) == 2
        assert list(sp) == [first, second]
        assert len(sp.triangles()) == 8


@pytest.mark.unit
class TestGrouping:
    """Test cases for grouping triangles into squares."""

    def test_fan_groups_to_one_square(self, fan, table):
        """Should group the four quarters of a C4."""
        squares, leftover = group_into_squares(fan(), table)

        assert len(squares) == 1
        assert len(leftover) == 0
        assert squares.squares[0].center == ORIGIN

    def test_illegal_center_not_grouped(self, fan, table):
        """Should leave quarters around an illegal crossing as triangles."""
        p = fan(bodies=(TileColor.GREEN, TileColor.RED) * 2)

        squares, leftover = group_into_squares(p, table)

        assert len(squares) == 0
        assert leftover == p

    def test_conflicting_grouping(self, fan, table):
        """Should refuse five right angles at one vertex."""
        p = fan()
        extra = replace(p.tiles[0], body=p.tiles[0].body.other())

        with pytest.raises(ConflictingGrouping, match="5 right angles"):
            group_into_squares(Patch((*p.tiles, extra)), table)

    @pytest.mark.parametrize("level", [4, 5, 6])
    def test_supertile_partition(self, supertile_of, table, level):
        """Should partition a supertile into squares and leftover triangles."""
        p = supertile_of(level)

        squares, leftover = group_into_squares(p, table)

        grouped = squares.triangles()
        assert grouped.tile_set.isdisjoint(leftover.tile_set)
        assert grouped.tile_set | leftover.tile_set == p.tile_set
        assert all(not p.is_interior_vertex(t.r) for t in leftover)
        assert validate_squares(squares, table).ok

    def test_census_counts_every_square(self, supertile_of, table):
        """Should count each grouped square once."""
        squares, _ = group_into_squares(supertile_of(6), table)

        by_translation = square_census(squares)
        by_rotation = square_census(squares, UpTo.TRANSLATION_ROTATION)

        assert sum(by_translation.values()) == len(squares)
        assert len(by_rotation) <= len(by_translation)
        assert all(";" in c.label for c in by_translation)
