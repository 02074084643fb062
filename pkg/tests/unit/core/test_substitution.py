"""Unit tests for decomposition, composition and supertiles."""

from dataclasses import replace

import pytest

from isotile.core.geometry import LatticePoint, ResolutionError, SimilarityMap
from isotile.core.substitution import (
    DEFAULT_SEED,
    NotComposable,
    SeedFormatError,
    SupertileSpec,
    compose,
    decompose,
    decompose_tile,
    parse_seed,
    sibling_of,
    similar_eq,
    supertile,
)
from isotile.core.tiles import (
    Patch,
    Sense,
    SideDecoration,
    SideName,
    TileColor,
    make_tile,
)

R_MINUS = SideDecoration(TileColor.RED, Sense.BACKWARD)
G_PLUS = SideDecoration(TileColor.GREEN, Sense.FORWARD)


@pytest.fixture
def parent():
    """Green seed tile of leg 2 decorated as the default seed."""
    return make_tile(
        LatticePoint(0, 0),
        LatticePoint(2, 0),
        LatticePoint(0, 2),
        TileColor.GREEN,
        R_MINUS,
        G_PLUS,
        R_MINUS,
    )


@pytest.mark.unit
class TestDecomposeTile:
    """Test cases for cutting a tile by its height."""

    def test_children_geometry(self, parent):
        """Should put both right angles at the hypotenuse midpoint."""
        pair = decompose_tile(parent)

        m = LatticePoint(1, 1)
        assert pair.left_child.r == m
        assert pair.right_child.r == m
        assert pair.left_child.vertices == (m, LatticePoint(0, 2), LatticePoint(0, 0))
        assert pair.right_child.vertices == (m, LatticePoint(0, 0), LatticePoint(2, 0))

    def test_children_colors(self, parent):
        """Should make the left child red and the right child green."""
        pair = decompose_tile(parent)

        assert pair.left_child.body is TileColor.RED
        assert pair.right_child.body is TileColor.GREEN

    def test_height_carries_parent_body(self, parent):
        """Should color the height with the parent body, arrow from r to the midpoint."""
        pair = decompose_tile(parent)

        height = SideDecoration(TileColor.GREEN, Sense.BACKWARD)
        assert pair.left_child.dec_leg_b == height
        assert pair.right_child.dec_leg_a == height
        toward_midpoint = (LatticePoint(0, 0), LatticePoint(1, 1))
        assert pair.left_child.arrow(SideName.LEG_B) == toward_midpoint
        assert pair.right_child.arrow(SideName.LEG_A) == toward_midpoint

    def test_hypotenuse_halves_keep_absolute_arrow(self, parent):
        """Should keep the parent's hypotenuse arrow on both halves."""
        pair = decompose_tile(parent)

        assert pair.left_child.dec_leg_a == R_MINUS
        assert pair.right_child.dec_leg_b == R_MINUS.flipped()

    def test_child_hypotenuses_are_parent_legs(self, parent):
        """Should move the parent's leg decorations onto the child hypotenuses."""
        pair = decompose_tile(parent)

        assert pair.right_child.dec_hyp == R_MINUS
        assert pair.left_child.dec_hyp == G_PLUS.flipped()

    def test_iterates_left_then_right(self, parent):
        """Should unpack as (left, right)."""
        left, right = decompose_tile(parent)

        assert left.body is TileColor.RED
        assert right.body is TileColor.GREEN

    def test_odd_midpoint(self):
        """Should refuse a hypotenuse without a lattice midpoint."""
        t = make_tile(
            LatticePoint(0, 0),
            LatticePoint(1, 0),
            LatticePoint(0, 1),
            TileColor.RED,
            R_MINUS,
            R_MINUS,
            R_MINUS,
        )

        with pytest.raises(ResolutionError):
            decompose_tile(t)


@pytest.mark.unit
class TestSibling:
    """Test cases for the sibling law."""

    def test_red_sibling_is_ccw_rotation(self, parent):
        """Should find the green child by rotating the red child ccw."""
        pair = decompose_tile(parent)

        assert sibling_of(pair.left_child).geometry == pair.right_child.geometry

    def test_green_sibling_is_cw_rotation(self, parent):
        """Should find the red child by rotating the green child cw."""
        pair = decompose_tile(parent)

        sibling = sibling_of(pair.right_child)

        assert sibling.geometry == pair.left_child.geometry
        assert sibling.body is TileColor.RED


@pytest.mark.unit
class TestSeeds:
    """Test cases for seed codes and supertile specs."""

    def test_parse_default_seed(self):
        """Should parse body, leg_a, leg_b and hyp."""
        assert parse_seed(DEFAULT_SEED) == (TileColor.GREEN, R_MINUS, G_PLUS, R_MINUS)

    @pytest.mark.parametrize("code", ["", "GR-G+R", "GR-G+R-X", "XR-G+R-", "GR*G+R-"])
    def test_bad_seed(self, code):
        """Should reject malformed seeds."""
        with pytest.raises(SeedFormatError):
            parse_seed(code)

    def test_spec_code_round_trip(self):
        """Should print the seed it was parsed from."""
        assert SupertileSpec.from_code(3, "RR-G-R-").code == "RR-G-R-"
        assert SupertileSpec(0).code == DEFAULT_SEED

    @pytest.mark.parametrize(("level", "scale"), [(0, 1), (1, 2), (2, 2), (3, 4), (12, 64)])
    def test_scale(self, level, scale):
        """Should scale the seed by 2 ** ceil(level / 2)."""
        assert SupertileSpec(level).scale == scale

    def test_negative_level(self):
        """Should reject negative levels."""
        with pytest.raises(ValueError, match="non-negative"):
            SupertileSpec(-1)


@pytest.mark.unit
class TestSupertile:
    """Test cases for supertile generation."""

    @pytest.mark.parametrize("level", range(7))
    def test_tile_count_and_size(self, supertile_of, level):
        """Should hold 2 ** level unit tiles."""
        p = supertile_of(level)

        assert len(p) == 2**level
        assert p.tile_size == 1

    @pytest.mark.parametrize("level", range(7))
    def test_leg_alignment_alternates(self, supertile_of, level):
        """Should have axis legs at even levels and diagonal legs at odd levels."""
        leg = supertile_of(level).tiles[0].leg_vector

        assert (leg.x != 0 and leg.y != 0) is (level % 2 == 1)

    def test_area_is_preserved(self, supertile_of):
        """Should cover the seed triangle exactly."""
        spec = SupertileSpec(6)

        assert supertile_of(6).twice_area == spec.seed_tile().twice_area

    def test_seed_level_zero(self, supertile_of):
        """Should return the seed itself."""
        assert supertile_of(0).tiles == (SupertileSpec(0).seed_tile(),)

    def test_odd_level_decomposes_to_next(self, supertile_of):
        """Should land on the next supertile without rescaling at odd levels."""
        assert decompose(supertile_of(3)) == supertile_of(4)

    def test_even_level_needs_rescale(self, supertile_of):
        """Should need a factor 2 before decomposing an even level."""
        with pytest.raises(ResolutionError):
            decompose(supertile_of(4))

        assert decompose(supertile_of(4).scaled(1)) == supertile_of(5)


@pytest.mark.unit
class TestCompose:
    """Test cases for composition."""

    @pytest.mark.parametrize("level", range(1, 8))
    def test_compose_inverts_decompose(self, supertile_of, table, level):
        """Should recover the patch exactly."""
        p = supertile_of(level)
        if level % 2 == 0:
            p = p.scaled(1)

        assert compose(decompose(p), table) == p

    def test_compose_descends_one_level(self, supertile_of, table):
        """Should give the previous supertile at the same scale."""
        assert compose(supertile_of(4), table) == supertile_of(3)

    def test_lonely_red_tile(self, parent, table):
        """Should refuse a red child without its sibling."""
        red = decompose_tile(parent).left_child

        with pytest.raises(NotComposable, match="no green sibling") as info:
            compose(Patch((red,)), table)

        assert info.value.vertex == LatticePoint(1, 1)

    def test_lonely_green_tile(self, parent, table):
        """Should refuse a green child without its sibling."""
        green = decompose_tile(parent).right_child

        with pytest.raises(NotComposable, match="no red sibling"):
            compose(Patch((green,)), table)

    def test_shared_leg_mismatch(self, parent, table):
        """Should refuse siblings whose shared leg disagrees."""
        pair = decompose_tile(parent)
        red = replace(pair.left_child, dec_leg_b=pair.left_child.dec_leg_b.flipped())

        with pytest.raises(NotComposable, match="shared leg decorations disagree"):
            compose(Patch((red, pair.right_child)), table)

    def test_outward_height(self, parent, table):
        """Should refuse a height arrow pointing away from the center."""
        pair = decompose_tile(parent)
        outward = pair.left_child.dec_leg_b.flipped()
        red = replace(pair.left_child, dec_leg_b=outward)
        green = replace(pair.right_child, dec_leg_a=outward)

        with pytest.raises(NotComposable, match="points away"):
            compose(Patch((red, green)), table)

    def test_empty_patch(self, table):
        """Should compose the empty patch to itself."""
        assert compose(Patch(), table) == Patch()


@pytest.mark.unit
class TestSimilarEq:
    """Test cases for similarity detection."""

    def test_identical(self, supertile_of):
        """Should find the identity for equal patches."""
        p = supertile_of(3)

        assert similar_eq(p, p) == SimilarityMap.identity()

    def test_scaled(self, supertile_of):
        """Should find a pure scaling."""
        p = supertile_of(4)

        m = similar_eq(p, p.scaled(1))

        assert m == SimilarityMap(0, 2, LatticePoint(0, 0))

    def test_rotated_and_translated(self, supertile_of):
        """Should recover a quarter turn with a translation."""
        p = supertile_of(4)
        m = SimilarityMap(2, 0, LatticePoint(7, -3))

        found = similar_eq(p, p.transformed(m))

        assert found is not None
        assert p.transformed(found) == p.transformed(m)

    def test_different_sizes(self, supertile_of):
        """Should reject patches with different tile counts."""
        assert similar_eq(supertile_of(3), supertile_of(4)) is None

    def test_different_decorations(self, supertile_of):
        """Should reject patches that differ only in decorations."""
        assert similar_eq(supertile_of(3), supertile_of(3, "RR-G-R-")) is None

    def test_composition_matches_lower_level(self, supertile_of, table):
        """Should relate an odd supertile's composition to the level below."""
        composed = compose(supertile_of(5), table)

        m = similar_eq(composed, supertile_of(4))

        assert m is not None
        assert supertile_of(4) == composed.transformed(m)
