"""Exact integer-lattice geometry: points, the 8 directions, similarity maps."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum


class ResolutionError(ValueError):
    """Raised when an exact midpoint or halving leaves the integer lattice."""


class NonIntegralMap(ValueError):
    """Raised when a similarity map would send a lattice point off the lattice."""


@dataclass(frozen=True, order=True, slots=True)
class LatticePoint:
    """Point of the integer plane."""

    x: int
    y: int

    def __add__(self, other: LatticePoint) -> LatticePoint:
        return LatticePoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: LatticePoint) -> LatticePoint:
        return LatticePoint(self.x - other.x, self.y - other.y)

    def __neg__(self) -> LatticePoint:
        return LatticePoint(-self.x, -self.y)

    def scaled(self, factor: int) -> LatticePoint:
        return LatticePoint(self.x * factor, self.y * factor)

    def rot90ccw(self) -> LatticePoint:
        """Rotate the vector by 90 degrees counterclockwise about the origin."""
        return LatticePoint(-self.y, self.x)

    def dot(self, other: LatticePoint) -> int:
        return self.x * other.x + self.y * other.y

    def cross(self, other: LatticePoint) -> int:
        """Return the z component of the cross product (positive when ccw)."""
        return self.x * other.y - self.y * other.x

    def chebyshev(self) -> int:
        return max(abs(self.x), abs(self.y))

    def as_pair(self) -> tuple[int, int]:
        return (self.x, self.y)


ORIGIN = LatticePoint(0, 0)


class Direction8(IntEnum):
    """The 8 lattice directions; member value d means an angle of 45 * d degrees."""

    EAST = 0
    NORTHEAST = 1
    NORTH = 2
    NORTHWEST = 3
    WEST = 4
    SOUTHWEST = 5
    SOUTH = 6
    SOUTHEAST = 7

    @property
    def step(self) -> LatticePoint:
        """Unit lattice step along this direction."""
        return _STEPS[self.value]

    @property
    def is_diagonal(self) -> bool:
        return self.value % 2 == 1

    def rotated(self, steps: int) -> Direction8:
        """Rotate counterclockwise by ``steps`` multiples of 45 degrees."""
        return Direction8((self.value + steps) % 8)

    def opposite(self) -> Direction8:
        return self.rotated(4)

    @classmethod
    def of_vector(cls, v: LatticePoint) -> Direction8:
        """Return the direction of a nonzero vector lying on one of the 8 rays.

        Raises:
            ValueError: If ``v`` is zero or not along a lattice direction
        """
        if v.x == 0 and v.y == 0:
            raise ValueError("Zero vector has no direction")
        if v.x != 0 and v.y != 0 and abs(v.x) != abs(v.y):
            raise ValueError(f"Vector {v.as_pair()} is not along a lattice direction")
        unit = LatticePoint(_sign(v.x), _sign(v.y))
        return cls(_STEPS.index(unit))


_STEPS: tuple[LatticePoint, ...] = (
    LatticePoint(1, 0),
    LatticePoint(1, 1),
    LatticePoint(0, 1),
    LatticePoint(-1, 1),
    LatticePoint(-1, 0),
    LatticePoint(-1, -1),
    LatticePoint(0, -1),
    LatticePoint(1, -1),
)


def _sign(value: int) -> int:
    return (value > 0) - (value < 0)


def rotate90ccw_about(p: LatticePoint, center: LatticePoint) -> LatticePoint:
    """Rotate ``p`` by 90 degrees counterclockwise about ``center``."""
    return center + (p - center).rot90ccw()


def rotate90cw_about(p: LatticePoint, center: LatticePoint) -> LatticePoint:
    """Rotate ``p`` by 90 degrees clockwise about ``center``."""
    d = p - center
    return center + LatticePoint(d.y, -d.x)


def midpoint(p: LatticePoint, q: LatticePoint) -> LatticePoint:
    """Return the exact midpoint of ``p`` and ``q``.

    Raises:
        ResolutionError: If a coordinate sum is odd; the patch needs pre-scaling
    """
    sx, sy = p.x + q.x, p.y + q.y
    if sx % 2 or sy % 2:
        raise ResolutionError(
            f"Midpoint of {p.as_pair()} and {q.as_pair()} is not a lattice point"
        )
    return LatticePoint(sx // 2, sy // 2)


def _shift_exact(value: int, exponent: int) -> int:
    """Multiply by 2**exponent, dividing exactly when the exponent is negative."""
    if exponent >= 0:
        return value << exponent
    divisor = 1 << -exponent
    if value % divisor:
        raise NonIntegralMap(f"{value} is not divisible by {divisor}")
    return value // divisor


@dataclass(frozen=True, slots=True)
class SimilarityMap:
    """Lattice similarity p -> A p + t.

    ``A`` is a rotation by 45 * rotation45_steps degrees combined with a
    scaling by sqrt(2) ** scale_exponent. An odd 45-degree step is realized
    with the lattice map (x, y) -> (x - y, x + y), which already carries one
    factor of sqrt(2); the map is therefore integral only when
    rotation45_steps + scale_exponent is even.
    """

    rotation45_steps: int
    scale_exponent: int = 0
    translation: LatticePoint = ORIGIN

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotation45_steps", self.rotation45_steps % 8)

    @classmethod
    def identity(cls) -> SimilarityMap:
        return cls(0, 0, ORIGIN)

    @classmethod
    def scaling(cls, factor_log2: int) -> SimilarityMap:
        """Pure scaling by 2 ** factor_log2."""
        return cls(0, 2 * factor_log2, ORIGIN)

    @property
    def is_integral(self) -> bool:
        return (self.rotation45_steps + self.scale_exponent) % 2 == 0

    def linear(self, p: LatticePoint) -> LatticePoint:
        """Apply only the rotation-and-scale part."""
        if not self.is_integral:
            raise NonIntegralMap(
                f"rotation {self.rotation45_steps} with scale exponent "
                f"{self.scale_exponent} leaves the lattice"
            )
        x, y = p.x, p.y
        exponent = self.scale_exponent
        if self.rotation45_steps % 2:
            x, y = x - y, x + y
            exponent -= 1
        half = exponent // 2
        x, y = _shift_exact(x, half), _shift_exact(y, half)
        for _ in range(self.rotation45_steps // 2):
            x, y = -y, x
        return LatticePoint(x, y)

    def inverse(self) -> SimilarityMap:
        """Return the inverse map.

        Raises:
            NonIntegralMap: If the inverse translation is not a lattice vector
        """
        back = SimilarityMap(-self.rotation45_steps, -self.scale_exponent, ORIGIN)
        return SimilarityMap(
            back.rotation45_steps,
            back.scale_exponent,
            -back.linear(self.translation),
        )

    def unapply(self, p: LatticePoint) -> LatticePoint:
        """Map an image point back to its preimage."""
        back = SimilarityMap(-self.rotation45_steps, -self.scale_exponent, ORIGIN)
        return back.linear(p - self.translation)


def apply_similarity(m: SimilarityMap, p: LatticePoint) -> LatticePoint:
    """Apply a similarity map to a lattice point.

    Args:
        m: Map whose rotation and scale parities agree
        p: Point to transform

    Returns:
        The exact image point

    Raises:
        NonIntegralMap: If rotation45_steps + scale_exponent is odd, or the
            image is not integral
    """
    return m.linear(p) + m.translation
