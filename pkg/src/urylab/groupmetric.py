"""Semimetrics on total bilipschitz bijections of a finite space.

Three quantities are computed exactly as rationals: the relative stretch
lip(f^-1 o g) (whose log is the group semimetric, taken only for display),
the ball-weighted series sum of sup-distances, and their combination.  All
comparisons happen on the rationals; no logarithm enters an exact code path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from .core import FiniteMetricSpace, PartialMap, lip_constant
from .errors import PreconditionError, StructuralError


@dataclass(frozen=True)
class AutoMap:
    """A total bijection of one finite space, with a basepoint for the balls."""

    space: FiniteMetricSpace
    images: tuple[int, ...]
    basepoint: int = 0

    def __post_init__(self):
        if sorted(self.images) != list(range(self.space.n)):
            raise StructuralError("images are not a bijection of the space")
        if not 0 <= self.basepoint < self.space.n:
            raise StructuralError("basepoint outside the space")

    @classmethod
    def identity(cls, space: FiniteMetricSpace, basepoint: int = 0) -> "AutoMap":
        return cls(space, tuple(range(space.n)), basepoint)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def compose(self, other: "AutoMap") -> "AutoMap":
        """self after other."""
        _same_frame(self, other)
        return AutoMap(self.space,
                       tuple(self.images[other.images[i]]
                             for i in range(self.space.n)),
                       self.basepoint)

    def inverse(self) -> "AutoMap":
        inv = [0] * self.space.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return AutoMap(self.space, tuple(inv), self.basepoint)

    def as_partial_map(self) -> PartialMap:
        return PartialMap(tuple(range(self.space.n)), self.images)

    def lip(self) -> Fraction:
        return lip_constant(self.as_partial_map(), self.space)


def _same_frame(f: AutoMap, g: AutoMap) -> None:
    if f.space != g.space or f.basepoint != g.basepoint:
        raise PreconditionError("maps live on different spaces or basepoints")


def dist_L(f: AutoMap, g: AutoMap) -> Fraction:
    """The stretch lip(f^-1 o g), stored exactly; its log is display-only."""
    _same_frame(f, g)
    return f.inverse().compose(g).lip()


def dist_n(f: AutoMap, g: AutoMap, n: int) -> Fraction:
    """Max displacement d(f(x), g(x)) over the open ball B(basepoint, n)."""
    _same_frame(f, g)
    if n < 1:
        raise PreconditionError("ball index must be >= 1")
    space, x0 = f.space, f.basepoint
    return max((space.d(f(i), g(i)) for i in range(space.n)
                if space.d(i, x0) < n), default=Fraction(0))


def _stable_index(space: FiniteMetricSpace, x0: int) -> int:
    """Smallest n with every point strictly inside B(x0, n)."""
    reach = max(space.d(i, x0) for i in range(space.n))
    return math.floor(reach) + 1


def dist_S(f: AutoMap, g: AutoMap) -> Fraction:
    """Sum over n >= 1 of dist_n / 2^n, in exact closed form.

    On a finite space dist_n stabilizes once the ball swallows every point,
    so the tail collapses to a geometric series.
    """
    _same_frame(f, g)
    n0 = _stable_index(f.space, f.basepoint)
    total = sum((dist_n(f, g, n) / Fraction(2) ** n for n in range(1, n0)),
                Fraction(0))
    return total + dist_n(f, g, n0) * Fraction(2) ** (1 - n0)


@dataclass(frozen=True)
class GroupDistance:
    """The pair (stretch, series) behind the combined group metric.

    The combined value max(log(stretch), series) mixes a log scale with a
    linear one, so it is materialized as a float for display only; exact
    code compares the pair componentwise (both components <= means the
    combined value is <=), and zero-ness is exact.
    """

    stretch: Fraction   # lip(f^-1 o g) >= 1
    series: Fraction    # weighted sup-distance sum >= 0

    def is_zero(self) -> bool:
        return self.stretch == 1 and self.series == 0

    def dominates(self, other: "GroupDistance") -> bool:
        return self.stretch >= other.stretch and self.series >= other.series

    def display(self) -> float:
        return max(math.log(float(self.stretch)), float(self.series))


def dist_hat(f: AutoMap, g: AutoMap) -> GroupDistance:
    return GroupDistance(dist_L(f, g), dist_S(f, g))
