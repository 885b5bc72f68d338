"""Natural interval arithmetic and boxes.

Endpoints are plain floats and no outward rounding is performed, so enclosure
claims hold up to floating-point roundoff.
"""

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from scalebb.core.errors import InvalidInterval


@dataclass(frozen=True, slots=True)
class Interval:
    """A closed real interval [lo, hi]."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise InvalidInterval(f"NaN endpoint in [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise InvalidInterval(f"lower endpoint {self.lo} exceeds upper endpoint {self.hi}")

    @classmethod
    def point(cls, value: float) -> "Interval":
        """Degenerate interval [value, value]."""
        return cls(float(value), float(value))

    @property
    def radius(self) -> float:
        return (self.hi - self.lo) / 2

    @property
    def midpoint(self) -> float:
        return (self.hi + self.lo) / 2

    @property
    def magnitude(self) -> float:
        """max(|lo|, |hi|)."""
        return max(abs(self.lo), abs(self.hi))

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi

    def __add__(self, other: "Interval") -> "Interval":
        return iv_add(self, other)

    def __sub__(self, other: "Interval") -> "Interval":
        return iv_sub(self, other)

    def __mul__(self, other: "Interval") -> "Interval":
        return iv_mul(self, other)

    def __neg__(self) -> "Interval":
        return iv_neg(self)

    def __pow__(self, k: int) -> "Interval":
        return iv_int_pow(self, k)

    def __str__(self) -> str:
        return f"[{self.lo:g}, {self.hi:g}]"


def iv_add(a: Interval, b: Interval) -> Interval:
    return Interval(a.lo + b.lo, a.hi + b.hi)


def iv_sub(a: Interval, b: Interval) -> Interval:
    return Interval(a.lo - b.hi, a.hi - b.lo)


def iv_neg(a: Interval) -> Interval:
    return Interval(-a.hi, -a.lo)


def iv_mul(a: Interval, b: Interval) -> Interval:
    products = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return Interval(min(products), max(products))


def iv_int_pow(a: Interval, k: int) -> Interval:
    """Tight image of x**k over a for a nonnegative integer k."""
    if k < 0:
        raise ValueError(f"exponent must be nonnegative, got {k}")
    if k == 0:
        return Interval(1.0, 1.0)
    if k % 2 == 1 or a.lo >= 0:
        return Interval(a.lo**k, a.hi**k)
    if a.hi <= 0:
        return Interval(a.hi**k, a.lo**k)
    # even power, 0 inside
    return Interval(0.0, a.magnitude**k)


def iv_intersect(a: Interval, b: Interval) -> Interval:
    """Intersection of two overlapping intervals."""
    return Interval(max(a.lo, b.lo), min(a.hi, b.hi))


@dataclass(frozen=True, slots=True)
class Box:
    """A vector of intervals, the domain of the variables."""

    intervals: tuple[Interval, ...]

    def __post_init__(self) -> None:
        if not self.intervals:
            raise InvalidInterval("a box needs at least one interval")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[float]]) -> "Box":
        """Build a box from [lo, hi] pairs."""
        return cls(tuple(Interval(float(lo), float(hi)) for lo, hi in pairs))

    @property
    def dims(self) -> int:
        return len(self.intervals)

    @property
    def lower(self) -> NDArray[np.float64]:
        return np.array([iv.lo for iv in self.intervals])

    @property
    def upper(self) -> NDArray[np.float64]:
        return np.array([iv.hi for iv in self.intervals])

    def contains(self, x: Sequence[float]) -> bool:
        return len(x) == self.dims and all(
            iv.contains(v) for iv, v in zip(self.intervals, x, strict=True)
        )

    def __getitem__(self, i: int) -> Interval:
        return self.intervals[i]

    def __len__(self) -> int:
        return self.dims

    def to_pairs(self) -> list[list[float]]:
        return [[iv.lo, iv.hi] for iv in self.intervals]


def box_radius(b: Box) -> NDArray[np.float64]:
    return np.array([iv.radius for iv in b.intervals])


def box_midpoint(b: Box) -> NDArray[np.float64]:
    return np.array([iv.midpoint for iv in b.intervals])
