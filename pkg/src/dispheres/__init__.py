"""Directed spheres: reachability, staircase motion planners and a grid oracle."""
from .core import (
    Coord,
    CoordPattern,
    Dipath,
    Point,
    concat,
    coordinatewise_leq,
    evaluate,
    on_boundary,
    pattern_of,
    stays_on_boundary,
)
from .errors import DispheresError
from .kernels import BACKEND
from .oracle import (
    GridGraph,
    LatticeDipath,
    build_grid,
    dihomotopy_classes,
    enumerate_dipaths,
    oracle_reach,
    verify_halfsquare_confinement,
)
from .planner import (
    IDENTITY,
    REVERSAL,
    PartitionLabel,
    PlannerOrder,
    classify,
    contract_homotopy,
    is_reachable,
    plan,
    staircase,
    violates,
)

SCHEMA = "dispheres/1"
__version__ = "0.1.0"
