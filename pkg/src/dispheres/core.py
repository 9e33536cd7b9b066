"""Exact-arithmetic geometry of the cube boundary.

Points live in [0, 1]^(n+1) with :class:`fractions.Fraction` coordinates.
Nothing in here touches floating point: the boundary predicate is
discontinuous, so 0.9999999 and 1 must never be confused.
"""
from __future__ import annotations

import enum
import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import (
    DimensionMismatchError,
    DispheresError,
    MalformedInputError,
    NotMonotoneError,
    ParameterRangeError,
)

RationalLike = Union[int, Fraction, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(value: RationalLike) -> Fraction:
    """Convert ``value`` to an exact Fraction; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if any(ch in text for ch in ".eE"):
            raise MalformedInputError(f"decimal notation is not exact: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class Point:
    """A point of [0, 1]^(n+1) with exact rational coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[RationalLike]) -> None:
        cs = tuple(to_fraction(c) for c in coords)
        if len(cs) < 2:
            raise MalformedInputError("a point needs at least two coordinates (n >= 1)", length=len(cs))
        for c in cs:
            if c < 0 or c > 1:
                raise MalformedInputError(f"coordinate {c} outside [0, 1]")
        object.__setattr__(self, "coords", cs)

    @classmethod
    def _trusted(cls, coords: tuple) -> "Point":
        # caller guarantees Fractions in [0, 1]
        p = object.__new__(cls)
        object.__setattr__(p, "coords", coords)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Point is immutable")

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Point) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return "Point(" + ", ".join(str(c) for c in self.coords) + ")"

    def to_json(self) -> list[str]:
        return [format_fraction(c) for c in self.coords]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Point":
        return cls(data)

    @classmethod
    def parse(cls, text: str) -> "Point":
        """Parse ``"0,1/2,1"`` style input."""
        return cls(part for part in text.split(","))


def as_point(p: Union[Point, Iterable[RationalLike]]) -> Point:
    return p if isinstance(p, Point) else Point(p)


class Coord(enum.Enum):
    ZERO = "0"
    INTERIOR = "−"
    ONE = "1"


_SYMBOLS = {"0": Coord.ZERO, "1": Coord.ONE, "−": Coord.INTERIOR, "-": Coord.INTERIOR}


@dataclass(frozen=True)
class CoordPattern:
    """The 0/−/1 word classifying each coordinate of a point."""

    classes: tuple[Coord, ...]

    @classmethod
    def parse(cls, text: str) -> "CoordPattern":
        try:
            return cls(tuple(_SYMBOLS[ch] for ch in text))
        except KeyError as exc:
            raise MalformedInputError(f"bad pattern symbol in {text!r}") from exc

    @property
    def is_boundary(self) -> bool:
        return any(c is not Coord.INTERIOR for c in self.classes)

    def __str__(self) -> str:
        return "".join(c.value for c in self.classes)

    def __len__(self) -> int:
        return len(self.classes)


def _pinned(c: Fraction) -> bool:
    # c == 0 or c == 1 for a normalized Fraction, skipping Fraction.__eq__
    return c.numerator == 0 or c.numerator == c.denominator


def on_boundary(p: Point) -> bool:
    return any(map(_pinned, p.coords))


def pattern_of(p: Point) -> CoordPattern:
    return CoordPattern(
        tuple(Coord.ZERO if c == 0 else Coord.ONE if c == 1 else Coord.INTERIOR for c in p.coords)
    )


def check_same_dimension(*points: Point) -> int:
    size = len(points[0])
    for p in points[1:]:
        if len(p) != size:
            raise DimensionMismatchError(
                f"dimension mismatch: {size} vs {len(p)} coordinates", sizes=[len(q) for q in points]
            )
    return size


def coordinatewise_leq(x: Point, y: Point) -> bool:
    check_same_dimension(x, y)
    return all(a <= b for a, b in zip(x.coords, y.coords))


def lerp(p: Point, q: Point, lam: Fraction) -> Point:
    return Point._trusted(tuple(a + (b - a) * lam for a, b in zip(p.coords, q.coords)))


class Dipath:
    """Piecewise-linear coordinatewise-nondecreasing path.

    ``stages[j]`` is the parameter at which the path passes ``waypoints[j]``;
    the segment from waypoint j-1 to j is traversed linearly over
    ``[stages[j-1], stages[j]]``. A zero-length stage may only join equal
    waypoints, which keeps evaluation single-valued. A one-waypoint constant
    path has ``stages == (0,)``.
    """

    __slots__ = ("waypoints", "stages")

    def __init__(self, waypoints: Sequence[Point], stages: Sequence[RationalLike] | None = None) -> None:
        wps = tuple(as_point(w) for w in waypoints)
        if not wps:
            raise DispheresError("a dipath needs at least one waypoint")
        check_same_dimension(*wps)
        if stages is None:
            stages = uniform_stages(len(wps) - 1)
        sts = tuple(to_fraction(s) for s in stages)
        if len(sts) != len(wps):
            raise DispheresError(
                f"{len(wps)} waypoints need {len(wps)} stage values, got {len(sts)}"
            )
        if sts[0] != 0 or (len(sts) > 1 and sts[-1] != 1):
            raise DispheresError("stages must run from 0 to 1")
        for j in range(1, len(wps)):
            if sts[j] < sts[j - 1]:
                raise DispheresError("stages must be nondecreasing")
            if sts[j] == sts[j - 1] and wps[j] != wps[j - 1]:
                raise DispheresError(f"zero-length stage {j} joins distinct waypoints")
            if not all(a <= b for a, b in zip(wps[j - 1].coords, wps[j].coords)):
                raise NotMonotoneError(f"segment {j} decreases a coordinate", segment=j)
        object.__setattr__(self, "waypoints", wps)
        object.__setattr__(self, "stages", sts)

    @classmethod
    def _trusted(cls, waypoints: tuple, stages: tuple) -> "Dipath":
        # caller guarantees a valid monotone path with valid stages
        d = object.__new__(cls)
        object.__setattr__(d, "waypoints", waypoints)
        object.__setattr__(d, "stages", stages)
        return d

    def __setattr__(self, name, value):
        raise AttributeError("Dipath is immutable")

    @property
    def start(self) -> Point:
        return self.waypoints[0]

    @property
    def end(self) -> Point:
        return self.waypoints[-1]

    @property
    def size(self) -> int:
        return len(self.waypoints[0])

    def __call__(self, s: RationalLike) -> Point:
        return evaluate(self, s)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Dipath)
            and self.waypoints == other.waypoints
            and self.stages == other.stages
        )

    def __hash__(self) -> int:
        return hash((self.waypoints, self.stages))

    def __repr__(self) -> str:
        return f"Dipath(waypoints={list(self.waypoints)!r}, stages={[str(s) for s in self.stages]})"

    def segments(self):
        """Yield ``(start, end, s0, s1)`` for each segment."""
        for j in range(1, len(self.waypoints)):
            yield self.waypoints[j - 1], self.waypoints[j], self.stages[j - 1], self.stages[j]

    def to_json(self) -> dict:
        return {
            "waypoints": [w.to_json() for w in self.waypoints],
            "stages": [format_fraction(s) for s in self.stages],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Dipath":
        return cls([Point.from_json(w) for w in data["waypoints"]], data["stages"])


@lru_cache(maxsize=64)
def uniform_stages(segments: int) -> tuple[Fraction, ...]:
    if segments == 0:
        return (ZERO,)
    return tuple(Fraction(k, segments) for k in range(segments + 1))


def constant_path(p: Point) -> Dipath:
    return Dipath([p], [ZERO])


def evaluate(gamma: Dipath, s: RationalLike) -> Point:
    s = to_fraction(s)
    if s < 0 or s > 1:
        raise ParameterRangeError(f"parameter {s} outside [0, 1]", parameter=format_fraction(s))
    stages = gamma.stages
    if len(stages) == 1:
        return gamma.waypoints[0]
    i = bisect_left(stages, s)
    if i == 0:
        return gamma.waypoints[0]
    # stages[i-1] < s <= stages[i], so this stage has positive length
    s0, s1 = stages[i - 1], stages[i]
    if s == s1:
        return gamma.waypoints[i]
    return lerp(gamma.waypoints[i - 1], gamma.waypoints[i], (s - s0) / (s1 - s0))


def segment_on_boundary(p: Point, q: Point) -> bool:
    """Whether the closed straight segment from p to q lies in the cube boundary.

    If some coordinate is constant along the segment with value 0 or 1, every
    point is on the boundary. Otherwise each coordinate either moves (and is
    then strictly between its endpoint values, hence in (0, 1), at every
    interior parameter) or is constant with a value in (0, 1); so every
    interior point of the segment is inside the open cube. The test is exact
    for any direction, axis-aligned or not.
    """
    if p == q:
        return on_boundary(p)
    if not (on_boundary(p) and on_boundary(q)):
        return False
    return any(a == b and _pinned(a) for a, b in zip(p.coords, q.coords))


def stays_on_boundary(gamma: Dipath) -> bool:
    wps = gamma.waypoints
    if not all(on_boundary(w) for w in wps):
        return False
    return all(segment_on_boundary(wps[j - 1], wps[j]) for j in range(1, len(wps)))


def concat(first: Dipath, second: Dipath) -> Dipath:
    """Concatenation: ``first`` on [0, 1/2], ``second`` on [1/2, 1]."""
    if first.end != second.start:
        raise DispheresError("paths do not meet")
    half = Fraction(1, 2)
    w1, s1 = first.waypoints, first.stages
    w2, s2 = second.waypoints, second.stages
    if len(w1) == 1:
        w1, s1 = (w1[0], w1[0]), (ZERO, ONE)
    if len(w2) == 1:
        w2, s2 = (w2[0], w2[0]), (ZERO, ONE)
    return Dipath(
        list(w1) + list(w2[1:]),
        [s * half for s in s1] + [half + s * half for s in s2[1:]],
    )


def common_denominator(*points: Point) -> int:
    return math.lcm(*(c.denominator for p in points for c in p.coords))


def scaled(p: Point, den: int) -> tuple[int, ...]:
    """Numerators of ``p`` over the common denominator ``den``."""
    return tuple(c.numerator * (den // c.denominator) for c in p.coords)


def is_monotone(gamma: Dipath) -> bool:
    wps = gamma.waypoints
    return all(
        all(a <= b for a, b in zip(wps[j - 1].coords, wps[j].coords)) for j in range(1, len(wps))
    )
