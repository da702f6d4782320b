"""polycross: polynomial roots from tracked real-axis crossings of f(C_r).

The image of the circle |z| = r under a polynomial f is a closed curve whose
real-axis crossings slide along the axis as r changes. Upcrossings move right,
downcrossings move left, and every root sits where a crossing passes the
origin. This package integrates that motion -- switching between a radius- and
an angle-parameterized ODE to steer through tangencies -- and recovers all N
roots in parallel from the 2N crossings present at large radius.
"""

from .geometry import (
    CLASSIFY_TOL,
    CROSSING_TOL,
    Crossing,
    CrossingKind,
    NotOnAxisError,
    alpha,
    classify_crossing,
    curve_point,
    find_crossings,
    sample_curve,
)
from .poly import (
    DegreeZeroError,
    NotARootError,
    Polynomial,
    ZERO_ROOT,
    ZeroRoot,
    cauchy_bound,
    deflate,
    from_polar,
    from_roots,
    normalize,
    polar,
    strip_zero_roots,
    synthetic_division,
)
from .solver import (
    CensusShortfallError,
    IncompleteError,
    RootEstimate,
    SolverReport,
    TrackOutcome,
    VietaDiagnostics,
    dedupe,
    initial_crossings,
    solve_deflation,
    solve_parallel,
    solve_single,
)
from .tracker import (
    BoundaryReached,
    CriticalPoint,
    CriticalPointError,
    ParamSystem,
    RadialSingularError,
    RootFound,
    StepLimit,
    StepUnderflowError,
    TangencySingularError,
    TrackEvent,
    TrackState,
    TrackerOptions,
    Trajectory,
    UnconvergedError,
    choose_param,
    find_single_root,
    format_trajectory,
    newton_polish,
    rhs_r,
    rhs_theta,
    rotate,
    starting_radius,
    step,
    track,
    trajectory_records,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
