"""Pytest configuration and shared fixtures."""

from collections.abc import Callable, Generator
from functools import lru_cache

import pytest
import structlog

from isotile.core.crossings import LegalCrossingTable
from isotile.core.geometry import ORIGIN, Direction8, LatticePoint
from isotile.core.substitution import DEFAULT_SEED, SupertileSpec, supertile
from isotile.core.tiles import (
    Patch,
    Sense,
    SideDecoration,
    TileColor,
    TriangleTile,
)
from isotile.formats.document import load_crossing_table
from isotile.utils.config import get_settings


@lru_cache
def _supertile(level: int, seed: str) -> Patch:
    return supertile(SupertileSpec.from_code(level, seed))


def c4_fan(
    out_ray: int = 0,
    axis: TileColor = TileColor.GREEN,
    left: TileColor = TileColor.RED,
    bodies: tuple[TileColor, ...] = (TileColor.RED, TileColor.GREEN) * 2,
    size: int = 1,
    center: LatticePoint = ORIGIN,
) -> Patch:
    """Four quarter tiles around ``center`` meeting in a C4 crossing.

    The axis leaves along ``out_ray``; the inward perpendicular on
    ``out_ray + 2`` has color ``left`` and the one on ``out_ray + 6`` the
    other color. Quarter k starts at ray ``out_ray + 2k`` with body
    ``bodies[k]``.
    """
    rays = {
        out_ray % 8: SideDecoration(axis, Sense.FORWARD),
        (out_ray + 2) % 8: SideDecoration(left, Sense.BACKWARD),
        (out_ray + 4) % 8: SideDecoration(axis, Sense.BACKWARD),
        (out_ray + 6) % 8: SideDecoration(left.other(), Sense.BACKWARD),
    }
    tiles = []
    for k in range(4):
        start = Direction8((out_ray + 2 * k) % 8)
        leg = start.step.scaled(size)
        tiles.append(
            TriangleTile(
                r=center,
                a=center + leg,
                b=center + leg.rot90ccw(),
                body=bodies[k],
                dec_leg_a=rays[start.value],
                dec_leg_b=rays[start.rotated(2).value],
                dec_hyp=SideDecoration(TileColor.RED, Sense.FORWARD),
            )
        )
    return Patch(tuple(tiles))


@pytest.fixture(autouse=True)
def clear_settings_cache() -> Generator[None, None, None]:
    """Clear the get_settings LRU cache before and after each test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(autouse=True)
def reset_logging() -> Generator[None, None, None]:
    """Drop logging configured by CLI invocations bound to captured streams."""
    yield
    structlog.reset_defaults()


@pytest.fixture(scope="session")
def table() -> LegalCrossingTable:
    """The packaged legal crossing table."""
    return load_crossing_table()


@pytest.fixture(scope="session")
def supertile_of() -> Callable[..., Patch]:
    """Memoized supertile factory: ``supertile_of(level, seed=DEFAULT_SEED)``."""

    def build(level: int, seed: str = DEFAULT_SEED) -> Patch:
        return _supertile(level, seed)

    return build


@pytest.fixture
def fan() -> Callable[..., Patch]:
    """Factory for C4 fans, see ``c4_fan``."""
    return c4_fan


@pytest.fixture
def shared_leg_pair() -> Patch:
    """Two tiles sharing a leg with consistent arrows and alternating bodies.

    The pair is correct, but after one decomposition the two green children
    meet along the shared leg.
    """
    r_plus = SideDecoration(TileColor.RED, Sense.FORWARD)
    r_minus = SideDecoration(TileColor.RED, Sense.BACKWARD)
    g_plus = SideDecoration(TileColor.GREEN, Sense.FORWARD)
    g_minus = SideDecoration(TileColor.GREEN, Sense.BACKWARD)
    return Patch(
        (
            TriangleTile(
                r=LatticePoint(0, 0),
                a=LatticePoint(2, 0),
                b=LatticePoint(0, 2),
                body=TileColor.GREEN,
                dec_leg_a=r_plus,
                dec_leg_b=g_minus,
                dec_hyp=r_minus,
            ),
            TriangleTile(
                r=LatticePoint(2, 0),
                a=LatticePoint(0, 0),
                b=LatticePoint(2, -2),
                body=TileColor.RED,
                dec_leg_a=r_minus,
                dec_leg_b=g_plus,
                dec_hyp=g_minus,
            ),
        )
    )
