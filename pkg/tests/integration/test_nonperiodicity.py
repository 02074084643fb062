"""Integration tests for the period scan, C8 fillings and crowns."""

import pytest

from isotile.core.analysis import (
    C8Filling,
    CrownForm,
    UpTo,
    c8_filling_census,
    c8_filling_of,
    crown_at,
    crown_census,
    crown_sigma_chain,
    patch_diameter,
    period_scan,
    tile_class,
)
from isotile.core.crossings import (
    CrossingClass,
    classify_crossing,
    crossing_at,
)
from isotile.core.geometry import LatticePoint
from isotile.core.rules import interior_vertices
from isotile.core.substitution import compose
from isotile.core.tiles import Patch, TileColor

RED_SEED = "RR-G-R-"


@pytest.fixture
def planted_grid(fan):
    """8 x 8 diagonal squares whose decorations repeat every 4 lattice units."""
    tiles = []
    for i in range(8):
        for j in range(8):
            square = fan(
                out_ray=1 if i % 2 else 5,
                axis=TileColor.GREEN if j % 2 else TileColor.RED,
                center=LatticePoint(2 * i + 1, 2 * j + 1),
            )
            tiles.extend(square.tiles)
    return Patch(tuple(tiles))


@pytest.mark.integration
class TestPeriodScan:
    """Deep supertiles have no translational period."""

    def test_planted_periods_found(self, planted_grid):
        """Should return exactly the planted periods."""
        report = period_scan(planted_grid, core_radius=2, max_shift=4)

        assert set(report.survivors) == {
            LatticePoint(4, 0),
            LatticePoint(-4, 0),
            LatticePoint(0, 4),
            LatticePoint(0, -4),
        }

    def test_survivors_grow_with_shift(self, planted_grid):
        """Should keep every surviving shift when the scan reaches further."""
        previous = set()
        for max_shift in range(9):
            report = period_scan(planted_grid, core_radius=2, max_shift=max_shift)
            survivors = set(report.survivors)

            assert previous <= survivors
            assert all(s.dot(s) <= max_shift**2 for s in survivors)
            previous = survivors

        assert not period_scan(planted_grid, core_radius=2, max_shift=3).periodic
        assert LatticePoint(4, 4) in previous

    @pytest.mark.slow
    def test_deep_supertile_has_no_period(self, supertile_of):
        """Should find no surviving shift in the core of S_12."""
        p = supertile_of(12)
        radius = patch_diameter(p) // 4

        assert not period_scan(p, core_radius=radius, max_shift=radius).periodic


@pytest.mark.integration
@pytest.mark.slow
class TestC8Fillings:
    """C8 fillings follow the taxonomy used by unique composition."""

    def test_red_leg_filling_never_occurs(self, supertile_of, table):
        """Should find no red corner on a leg axis."""
        census = c8_filling_census(supertile_of(12), table)

        assert census[C8Filling.RED_LEG] == 0
        assert sum(census.values()) > 0

    def test_fillings_under_composition(self, supertile_of, table):
        """Should keep leg and red-hyp C8s and turn green-hyp C8s into C4s."""
        p = supertile_of(12)
        composed = compose(p, table)
        seen = set()

        for v in interior_vertices(p):
            crossing = crossing_at(p, v)
            if classify_crossing(crossing, table) is not CrossingClass.C8:
                continue
            filling = c8_filling_of(crossing)
            after = crossing_at(composed, v)
            seen.add(filling)
            if filling is C8Filling.GREEN_HYP:
                assert classify_crossing(after, table) is CrossingClass.C4
            else:
                assert classify_crossing(after, table) is CrossingClass.C8
                assert after.codes == crossing.codes

        assert C8Filling.GREEN_HYP in seen


@pytest.mark.integration
class TestCrowns:
    """Crowns of deep supertiles already occur in shallow ones."""

    @pytest.mark.slow
    def test_deep_crowns_occur_at_level_8(self, supertile_of):
        """Should find every masked crown of S_12 in the level-8 supertiles."""
        shallow = set(crown_census(supertile_of(8), mask_outer=True))
        shallow |= set(crown_census(supertile_of(8, RED_SEED), mask_outer=True))

        deep = set(crown_census(supertile_of(12), mask_outer=True))

        assert deep <= shallow

    def test_sigma_chain_becomes_two_periodic(self, supertile_of):
        """Should repeat with period 2 after the third decomposition."""
        p = supertile_of(8)
        center = next(
            v
            for v in interior_vertices(p)
            if crown_at(p, v).form is CrownForm.RIGHT_CROSS
        )

        chain = crown_sigma_chain(p, center, steps=6, rescale=True)

        assert chain[0].form is CrownForm.FRESH_ACUTE
        assert chain[2] == chain[4]
        assert chain[3] == chain[5]

    def test_four_tile_crowns_at_level_5(self, supertile_of):
        """Should find all four right-cross crowns in the two S_5."""
        found = {}
        for seed in ("GR-G+R-", RED_SEED):
            census = crown_census(supertile_of(5, seed), mask_outer=True)
            found[seed] = {c for c in census if len(c) == 4}

        assert all(len(crowns) == 3 for crowns in found.values())
        assert len(set().union(*found.values())) == 4

    @pytest.mark.slow
    def test_crowns_grow_with_level(self, supertile_of):
        """Should keep every masked crown once a copy of the seed reappears."""
        seed = tile_class(supertile_of(0).tiles[0], UpTo.TRANSLATION_ROTATION)
        lag = next(
            k
            for k in range(1, 7)
            if any(
                tile_class(t, UpTo.TRANSLATION_ROTATION) == seed
                for t in supertile_of(k)
            )
        )

        shallow = set(crown_census(supertile_of(6), mask_outer=True))
        deep = set(crown_census(supertile_of(6 + lag), mask_outer=True))

        assert shallow <= deep
