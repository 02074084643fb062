"""Unit tests for SVG rendering."""

import pytest

from isotile.core.tiles import Patch
from isotile.formats.svg import RenderOptions, render_svg


@pytest.mark.unit
class TestRenderOptions:
    """Test cases for RenderOptions."""

    @pytest.mark.parametrize("unit", [0, -2, 7])
    def test_rejects_odd_or_nonpositive_unit(self, unit):
        """Should require a positive even unit."""
        with pytest.raises(ValueError, match="positive even"):
            RenderOptions(unit=unit)


@pytest.mark.unit
class TestRenderSvg:
    """Test cases for render_svg."""

    def test_draws_every_tile(self, fan):
        """Should draw one polygon per tile."""
        out = render_svg(fan())

        assert b"<svg" in out
        assert out.count(b"<polygon") == 4

    def test_one_arrow_per_side(self, fan):
        """Should draw a shared side once."""
        out = render_svg(fan())

        assert out.count(b"<polyline") == 8

    def test_long_arrows_merge_collinear_sides(self, fan):
        """Should merge the two halves of the through-axis."""
        out = render_svg(fan(), RenderOptions(long_arrows=True))

        assert out.count(b"<polyline") == 7

    def test_deterministic(self, fan):
        """Should produce identical bytes for identical input."""
        assert render_svg(fan()) == render_svg(fan())

    def test_labels(self, fan, table):
        """Should label the center by its crossing class."""
        out = render_svg(fan(), RenderOptions(labels=True, table=table))

        assert b">C4</text>" in out

    def test_canvas_scales_with_unit(self, fan):
        """Should size the canvas from the bounding box and unit."""
        out = render_svg(fan(), RenderOptions(unit=10))

        assert b'width="40"' in out
        assert b'height="40"' in out

    def test_empty_patch(self):
        """Should render an empty drawing."""
        out = render_svg(Patch())

        assert b"<svg" in out
        assert b"<polygon" not in out
