"""Staircase motion planners on the directed sphere and the two-piece partition.

A staircase raises one coordinate at a time, in a fixed order, from ``x`` to
``y``. Two orders suffice on the cube boundary: ascending index order
(``IDENTITY``) and descending (``REVERSAL``). The pattern condition computed
by :func:`violates` says exactly when a staircase dips into the open cube;
the two conditions never hold together on a reachable pair, which gives the
decision :func:`is_reachable` and the partition :func:`classify`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import kernels
from .core import (
    ZERO,
    Dipath,
    Point,
    RationalLike,
    check_same_dimension,
    common_denominator,
    coordinatewise_leq,
    evaluate,
    on_boundary,
    scaled,
    to_fraction,
    uniform_stages,
)
from .errors import (
    DispheresError,
    NotMonotoneError,
    NotOnBoundaryError,
    NotOrderedError,
    NotReachableError,
    ParameterRangeError,
)


@dataclass(frozen=True)
class PlannerOrder:
    """Order in which a staircase raises the coordinates.

    ``IDENTITY`` and ``REVERSAL`` adapt to any dimension; an explicit
    permutation is fixed to its own length.
    """

    permutation: Optional[tuple[int, ...]] = None
    name: str = "custom"

    @classmethod
    def of(cls, permutation) -> "PlannerOrder":
        perm = tuple(int(c) for c in permutation)
        if sorted(perm) != list(range(len(perm))):
            raise DispheresError(f"not a permutation of 0..{len(perm) - 1}: {perm}")
        return cls(perm)

    def resolve(self, size: int) -> tuple[int, ...]:
        if self.name == "identity":
            return tuple(range(size))
        if self.name == "reversal":
            return tuple(range(size - 1, -1, -1))
        if self.permutation is None or len(self.permutation) != size:
            raise DispheresError(f"order {self.permutation} does not fit {size} coordinates")
        return self.permutation


IDENTITY = PlannerOrder(name="identity")
REVERSAL = PlannerOrder(name="reversal")


class PartitionLabel(enum.Enum):
    A1 = "A1"
    A2 = "A2"

    @property
    def order(self) -> PlannerOrder:
        return IDENTITY if self is PartitionLabel.A1 else REVERSAL


def _ints(x: Point, y: Point):
    den = common_denominator(x, y)
    return scaled(x, den), scaled(y, den), den


def staircase(x: Point, y: Point, order: PlannerOrder = IDENTITY) -> Dipath:
    size = check_same_dimension(x, y)
    if not coordinatewise_leq(x, y):
        raise NotOrderedError("x is not coordinatewise below y; no dipath even in R^(n+1)",
                              x=x.to_json(), y=y.to_json())
    cur = list(x.coords)
    waypoints = [x]
    for c in order.resolve(size):
        cur[c] = y.coords[c]
        waypoints.append(Point._trusted(tuple(cur)))
    return Dipath._trusted(tuple(waypoints), uniform_stages(size))


def _require_boundary(x: Point, y: Point) -> None:
    for name, p in (("x", x), ("y", y)):
        if not on_boundary(p):
            raise NotOnBoundaryError(f"{name} = {p} is not on the cube boundary", point=name)


def violation_witness(x: Point, y: Point, order: PlannerOrder = IDENTITY) -> Optional[int]:
    """Coordinate index at which the staircase leaves the boundary, or None.

    The staircase moves coordinate ``c`` with every coordinate raised before
    it already at its ``y`` value and every later one still at its ``x``
    value; that segment is off the boundary iff it is nondegenerate and all
    those other values are interior.
    """
    size = check_same_dimension(x, y)
    _require_boundary(x, y)
    if not coordinatewise_leq(x, y):
        raise NotOrderedError("x is not coordinatewise below y", x=x.to_json(), y=y.to_json())
    xs, ys, den = _ints(x, y)
    c = kernels.violates_witness(xs, ys, den, order.resolve(size))
    return None if c < 0 else c


def violates(x: Point, y: Point, order: PlannerOrder = IDENTITY) -> bool:
    return violation_witness(x, y, order) is not None


def _diagnose(x: Point, y: Point) -> tuple[Optional[DispheresError], int]:
    """Why (x, y) is not in the reachability relation, and the identity-order witness."""
    check_same_dimension(x, y)
    for name, p in (("x", x), ("y", y)):
        if not on_boundary(p):
            return NotOnBoundaryError(f"{name} = {p} is not on the cube boundary", point=name), -1
    if not coordinatewise_leq(x, y):
        bad = [i for i, (a, b) in enumerate(zip(x.coords, y.coords)) if a > b]
        return NotOrderedError("x is not coordinatewise below y", coordinates=bad), -1
    xs, ys, den = _ints(x, y)
    size = len(xs)
    j = kernels.violates_witness(xs, ys, den, IDENTITY.resolve(size))
    if j < 0:
        return None, j
    k = kernels.violates_witness(xs, ys, den, REVERSAL.resolve(size))
    if k < 0:
        return None, j
    return NotReachableError(
        "both staircases leave the boundary; no dipath joins x to y", j=j, k=k
    ), j


def is_reachable(x: Point, y: Point) -> bool:
    check_same_dimension(x, y)
    xs, ys, den = _ints(x, y)
    return kernels.reachable(xs, ys, den)


def explain(x: Point, y: Point) -> dict:
    """Reachability verdict with the per-planner witnesses, for diagnostics."""
    err, _ = _diagnose(x, y)
    if err is not None:
        return {"reachable": False, "witness": err.to_json()}
    return {
        "reachable": True,
        "witness": {
            "j": violation_witness(x, y, IDENTITY),
            "k": violation_witness(x, y, REVERSAL),
        },
    }


def classify(x: Point, y: Point) -> PartitionLabel:
    err, j = _diagnose(x, y)
    if err is not None:
        raise err
    return PartitionLabel.A2 if j >= 0 else PartitionLabel.A1


def plan(x: Point, y: Point) -> Dipath:
    """Directed motion planner on the sphere: a boundary dipath from x to y."""
    return staircase(x, y, classify(x, y).order)


def contract_homotopy(gamma: Dipath, t: RationalLike, order: PlannerOrder = IDENTITY) -> Dipath:
    """The path ``H(gamma, t)`` of the fibre contraction onto the staircase section.

    Follows ``gamma`` on [0, t/2], the staircase from gamma(t/2) to
    gamma(1 - t/2) rescaled onto [t/2, 1 - t/2], then ``gamma`` again.
    ``t = 1`` returns ``gamma`` itself; ``t = 0`` returns the staircase.
    """
    t = to_fraction(t)
    if t < 0 or t > 1:
        raise ParameterRangeError(f"homotopy time {t} outside [0, 1]")
    for j, (p, q, _, _) in enumerate(gamma.segments(), start=1):
        if any(a > b for a, b in zip(p.coords, q.coords)):
            raise NotMonotoneError(f"segment {j} decreases a coordinate", segment=j)
    if t == 1:
        return gamma
    if len(gamma.waypoints) == 1:
        gamma = Dipath(gamma.waypoints * 2, [ZERO, Fraction(1)])
    lo, hi = t / 2, 1 - t / 2
    size = gamma.size
    stair = staircase(evaluate(gamma, lo), evaluate(gamma, hi), order)

    waypoints, stages = [], []
    for w, s in zip(gamma.waypoints, gamma.stages):
        if s < lo:
            waypoints.append(w)
            stages.append(s)
    width = hi - lo
    for k, w in enumerate(stair.waypoints):
        waypoints.append(w)
        stages.append(lo + width * Fraction(k, size))
    for w, s in zip(gamma.waypoints, gamma.stages):
        if s > hi:
            waypoints.append(w)
            stages.append(s)
    return Dipath(waypoints, stages)
