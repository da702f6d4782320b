"""Track a real-axis crossing of f_r as the circle radius sweeps.

Two coupled first-order systems describe the motion of a crossing point
x = f(r*e^{i*theta}) along the real axis, both driven by
alpha = i*r*e^{i*theta}*f'(r*e^{i*theta}):

  radius-parameterized (regular while Im alpha != 0):
      d(theta)/dr = Re(alpha) / (r * Im(alpha))
      dx/dr       = |alpha|^2 / (r * Im(alpha))

  angle-parameterized (regular while Re alpha != 0):
      dr/d(theta) = r * Im(alpha) / Re(alpha)
      dx/d(theta) = |alpha|^2 / Re(alpha)

The two systems are singular on complementary sets, so the tracker switches
between them (with hysteresis) and in particular rides the angle system
straight through tangencies, where dr changes sign by itself: the fold where
a rightward-moving crossing turns into a leftward-moving one traversed
backwards is a smooth point of the angle-parameterized path.

Integration is an embedded Cash-Karp 4(5) pair with adaptive steps; after
every accepted step the state is re-projected onto the crossing manifold
Im f_r(theta) = 0 so drift never accumulates.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Tuple, Union

from .geometry import Crossing, CrossingKind, curve_point, find_crossings
from .poly import (
    TWO_PI,
    DegreeZeroError,
    Polynomial,
    ZeroRoot,
    cauchy_bound,
    normalize,
)


class TangencySingularError(ArithmeticError):
    """Radius system evaluated where Im alpha ~ 0 (its singular set)."""


class RadialSingularError(ArithmeticError):
    """Angle system evaluated where Re alpha ~ 0 (its singular set)."""


class CriticalPointError(ArithmeticError):
    """alpha = 0: f' vanishes at the tracked point."""


class StepUnderflowError(ArithmeticError):
    """Adaptive step control could not meet tolerance above the minimum step."""


class UnconvergedError(RuntimeError):
    """Single-root search exhausted its rotation retry budget."""

    def __init__(self, message: str, attempts=None):
        super().__init__(message)
        self.attempts = attempts or []


class ParamSystem(str, Enum):
    R = "r"
    THETA = "theta"


@dataclass(frozen=True)
class TrackState:
    """Snapshot of a tracked crossing: position, active system, step sense."""

    r: float
    theta: float
    x: float
    param: ParamSystem
    direction: int  # +1 / -1: sign of the independent variable's increase


@dataclass(frozen=True)
class RootFound:
    root: complex


@dataclass(frozen=True)
class CriticalPoint:
    location: complex


@dataclass(frozen=True)
class BoundaryReached:
    r_limit: float


@dataclass(frozen=True)
class StepLimit:
    pass


TrackEvent = Union[RootFound, CriticalPoint, BoundaryReached, StepLimit]


@dataclass(frozen=True)
class Trajectory:
    """Accepted states in order, closed by exactly one terminal event."""

    states: Tuple[TrackState, ...]
    event: TrackEvent


@dataclass(frozen=True)
class TrackerOptions:
    """Knobs for the crossing tracker.

    Tolerance fields are dimensionless coefficients; the tracker multiplies
    them by the natural local scale (root_x_tol by 1 + |a_N| r^N,
    residual_tol by sum |a_n| max(1,|z|)^n, drift_tol by 1 + |f|,
    alpha_tol by r * sum n|a_n| max(1,r)^{n-1}). Steps in the radius system
    scale with max(1, r); steps in the angle system are radians.
    """

    c: float = 0.5                      # parameterization switch parameter
    switch_hysteresis: float = 1.1      # 10% band against switch chatter
    rtol: float = 1e-9
    atol: float = 1e-12
    initial_step: float = 1e-2
    min_step: float = 1e-12
    max_step: float = 0.25
    max_steps: int = 6000
    root_x_tol: float = 1e-8
    residual_tol: float = 1e-10
    drift_tol: float = 1e-10
    alpha_tol: float = 1e-9
    nu: float = 0.0                     # rotation angle for the first attempt
    rotation_schedule: Tuple[float, ...] = (0.05, 0.11, 0.23, 0.47)
    r_min: float = 1e-7
    r_max_factor: float = 4.0
    newton_iters: int = 20

    def __post_init__(self):
        if not 0.0 < self.c < 1.0:
            raise ValueError("switch parameter c must lie in (0, 1)")
        for name in ("rtol", "atol", "initial_step", "min_step", "max_step",
                     "root_x_tol", "residual_tol", "drift_tol", "alpha_tol",
                     "r_min"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.switch_hysteresis < 1.0:
            raise ValueError("switch_hysteresis must be >= 1")


# fraction of |alpha| below which the active system's denominator counts as
# singular; kept tiny so the guard only fires essentially at the singular set
_SINGULAR_FRAC = 1e-13


def rhs_r(p: Polynomial, r: float, theta: float) -> Tuple[float, float]:
    """(d theta/dr, dx/dr) of the radius-parameterized system."""
    if r <= 0:
        raise ValueError("radius must be positive")
    a = _alpha(p, r, theta)
    mag = abs(a)
    if mag == 0.0:
        raise CriticalPointError(f"f' vanishes at r={r}, theta={theta}")
    if abs(a.imag) <= _SINGULAR_FRAC * mag:
        raise TangencySingularError(
            f"Im alpha ~ 0 at r={r}, theta={theta}: radius system singular"
        )
    den = r * a.imag
    return a.real / den, (a.real * a.real + a.imag * a.imag) / den


def rhs_theta(p: Polynomial, r: float, theta: float) -> Tuple[float, float]:
    """(dr/d theta, dx/d theta) of the angle-parameterized system."""
    if r <= 0:
        raise ValueError("radius must be positive")
    a = _alpha(p, r, theta)
    mag = abs(a)
    if mag == 0.0:
        raise CriticalPointError(f"f' vanishes at r={r}, theta={theta}")
    if abs(a.real) <= _SINGULAR_FRAC * mag:
        raise RadialSingularError(
            f"Re alpha ~ 0 at r={r}, theta={theta}: angle system singular"
        )
    den = a.real
    return r * a.imag / den, (a.real * a.real + a.imag * a.imag) / den


def choose_param(alpha_val: complex, c: float) -> ParamSystem:
    """Pick the system whose denominator is the larger alpha component.

    The radius system divides by Im alpha and the angle system by Re alpha,
    so the radius system is chosen exactly when |Im alpha| > c * |Re alpha|.
    """
    if alpha_val == 0:
        raise CriticalPointError("alpha = 0: no regular parameterization")
    return (
        ParamSystem.R
        if abs(alpha_val.imag) > c * abs(alpha_val.real)
        else ParamSystem.THETA
    )


def rotate(p: Polynomial, nu: float) -> Polynomial:
    """Multiply every coefficient by e^{-i*nu}; the root set is unchanged."""
    w = cmath.exp(-1j * nu)
    return Polynomial([c * w for c in p.coeffs])


def newton_polish(p: Polynomial, z: complex, iters: int = 20) -> complex:
    """Local quadratic cleanup of a near-root; returns the best iterate seen."""
    dp = p.derivative()
    best = cur = complex(z)
    best_res = abs(p.eval(cur))
    for _ in range(iters):
        df = dp.eval(cur)
        if df == 0:
            break
        cur = cur - p.eval(cur) / df
        res = abs(p.eval(cur))
        if res < best_res:
            best, best_res = cur, res
        if res == 0.0:
            break
    return best


def starting_radius(p: Polynomial) -> float:
    """Largest r in a halving search from 1 with sum_{n>=1} |a_n| r^n < 0.5
    and, when a1 != 0, the linear term dominating the higher tail.

    The 0.5 bound alone keeps the image curve within 0.5 of the constant
    coefficient but does NOT force the two-crossing geometry: higher terms
    comparable to |a1| r can still wiggle the small circle across the axis
    extra times. Requiring |a1| r >= 2 * sum_{n>=2} |a_n| r^n makes Im f_r a
    perturbed sine with exactly two zeros.
    """
    mags = [abs(c) for c in p.coeffs]
    a1 = mags[1] if len(mags) > 1 else 0.0
    r = 1.0
    for _ in range(2000):
        s = 0.0
        rp = 1.0
        for m in mags[1:]:
            rp *= r
            s += m * rp
        if s < 0.5 and (a1 == 0.0 or a1 * r >= 2.0 * (s - a1 * r)):
            return r
        r *= 0.5
    raise ArithmeticError("halving search failed to shrink the tail sum")


def _alpha(p: Polynomial, r: float, theta: float) -> complex:
    z = r * cmath.exp(1j * (theta % TWO_PI))
    return 1j * z * p.derivative().eval(z)


# Cash-Karp embedded 4(5) pair
_CK_C = (0.0, 1 / 5, 3 / 10, 3 / 5, 1.0, 7 / 8)
_CK_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (3 / 10, -9 / 10, 6 / 5),
    (-11 / 54, 5 / 2, -70 / 27, 35 / 27),
    (1631 / 55296, 175 / 512, 575 / 13824, 44275 / 110592, 253 / 4096),
)
_CK_B5 = (37 / 378, 0.0, 250 / 621, 125 / 594, 0.0, 512 / 1771)
_CK_B4 = (2825 / 27648, 0.0, 18575 / 48384, 13525 / 55296, 277 / 14336, 1 / 4)
_CK_ERR = tuple(b5 - b4 for b5, b4 in zip(_CK_B5, _CK_B4))

# the same tableau flattened to scalars for the unrolled hot loop
_C2, _C3, _C4, _C5, _C6 = _CK_C[1:]
(_A21,) = _CK_A[1]
_A31, _A32 = _CK_A[2]
_A41, _A42, _A43 = _CK_A[3]
_A51, _A52, _A53, _A54 = _CK_A[4]
_A61, _A62, _A63, _A64, _A65 = _CK_A[5]
_B1, _B2, _B3, _B4, _B5, _B6 = _CK_B5
_E1, _E2, _E3, _E4, _E5, _E6 = _CK_ERR


class _StageFailure(Exception):
    """A stage evaluation left the regular region; retry with a smaller step."""


class _ProjectionFailure(Exception):
    """Re-projection onto Im f_r = 0 did not converge; retry smaller."""


class _Engine:
    """Shared integration core for step() and track()."""

    def __init__(self, p: Polynomial, opts: TrackerOptions, want: int):
        self.p = p
        self.opts = opts
        self.want = want  # +1: x increases (rightward), -1: decreases
        self._rev = p._rev
        self._drev = p.derivative()._rev
        self._abs_lead = abs(p.coeffs[-1])
        self._deg = p.degree
        self._dmags = [abs(c) for c in p.derivative().coeffs]
        self.r_max = opts.r_max_factor * cauchy_bound(p)
        # below half the small-radius threshold the curve stays within 0.5 of
        # a0, so for |a0| ~ 1 we get |f| >= |a0| - 0.5 there and no crossing
        # branch can reach a root or climb back out: a hard floor, not just a
        # budget guard (tracked polynomials are normalized or rotated, |a0|=1)
        floor = 0.5 * starting_radius(p) if abs(p.coeffs[0]) >= 0.75 else 0.0
        self.r_min = max(opts.r_min, floor)
        self._theta_cap = math.pi / 3.0

    # -- scalar evaluations ------------------------------------------------

    def f(self, z: complex) -> complex:
        acc = 0j
        for c in self._rev:
            acc = acc * z + c
        return acc

    def df(self, z: complex) -> complex:
        acc = 0j
        for c in self._drev:
            acc = acc * z + c
        return acc

    def alpha(self, r: float, theta: float) -> complex:
        z = r * cmath.exp(1j * (theta % TWO_PI))
        return 1j * z * self.df(z)

    def alpha_scale(self, r: float) -> float:
        m = max(1.0, r)
        s = 0.0
        mp = 1.0
        for c in self._dmags:
            s += c * mp
            mp *= m
        return r * s

    def x_scale(self, r: float) -> float:
        return 1.0 + self._abs_lead * r ** self._deg

    # -- manifold projection -------------------------------------------------

    def project_theta(self, r: float, guess: float) -> Tuple[float, complex]:
        """Solve Im f(r e^{i theta}) = 0 for theta near guess (radius system)."""
        th = guess
        for _ in range(14):
            v = self.f(r * cmath.exp(1j * (th % TWO_PI)))
            if abs(v.imag) <= 1e-13 * (1.0 + abs(v)):
                return th, v
            da = self.alpha(r, th).imag  # d Im f / d theta
            if da == 0.0:
                break
            step = v.imag / da
            if abs(step) > 0.5:
                break
            th -= step
        return self._bisect_project(
            lambda t: self.f(r * cmath.exp(1j * (t % TWO_PI))), guess
        )

    def project_r(self, theta: float, guess: float) -> Tuple[float, complex]:
        """Solve Im f(r e^{i theta}) = 0 for r near guess (angle system)."""
        w = cmath.exp(1j * (theta % TWO_PI))
        r = guess
        for _ in range(14):
            v = self.f(r * w)
            if abs(v.imag) <= 1e-13 * (1.0 + abs(v)):
                return r, v
            da = (w * self.df(r * w)).imag  # d Im f / d r
            if da == 0.0:
                break
            step = v.imag / da
            if abs(step) > 0.5 * r:
                break
            r -= step
            if r <= 0.0:
                raise _ProjectionFailure("projection pushed r nonpositive")
        rr, v = self._bisect_project(lambda s: self.f(s * w), guess, positive=True)
        return rr, v

    def _bisect_project(
        self, fn: Callable[[float], complex], guess: float, positive: bool = False
    ) -> Tuple[float, complex]:
        v0 = fn(guess)
        if abs(v0.imag) <= 1e-13 * (1.0 + abs(v0)):
            return guess, v0
        s0 = math.copysign(1.0, v0.imag)
        d = 1e-9 * (1.0 + abs(guess))
        lo = hi = guess
        for _ in range(40):
            lo_c = guess - d
            hi_c = guess + d
            if positive and lo_c <= 0.0:
                lo_c = guess * 0.5
            if math.copysign(1.0, fn(lo_c).imag) != s0:
                lo, hi = lo_c, guess
                break
            if math.copysign(1.0, fn(hi_c).imag) != s0:
                lo, hi = guess, hi_c
                break
            d *= 3.0
            if d > 0.5 * (1.0 + abs(guess)):
                raise _ProjectionFailure("no sign change near the predicted point")
        else:
            raise _ProjectionFailure("no sign change near the predicted point")
        flo = fn(lo)
        s_lo = math.copysign(1.0, flo.imag)
        for _ in range(120):
            mid = 0.5 * (lo + hi)
            v = fn(mid)
            if abs(v.imag) <= 1e-13 * (1.0 + abs(v)) or (hi - lo) < 1e-16 * (1.0 + abs(mid)):
                return mid, v
            if math.copysign(1.0, v.imag) == s_lo:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi), fn(0.5 * (lo + hi))

    def project(self, param: ParamSystem, u: float, y0: float) -> Tuple[float, float, float, complex]:
        """Project onto the manifold; returns (r, theta, x, f) at the point."""
        if param is ParamSystem.R:
            th, v = self.project_theta(u, y0)
            r = u
        else:
            r, v = self.project_r(u, y0)
            th = u
        if abs(v.imag) > self.opts.drift_tol * (1.0 + abs(v)):
            raise _ProjectionFailure("drift tolerance violated after projection")
        return r, th, v.real, v

    # -- right-hand sides ----------------------------------------------------

    def rhs(self, param: ParamSystem, u: float, y0: float) -> Tuple[float, float]:
        if param is ParamSystem.R:
            r, th = u, y0
        else:
            r, th = y0, u
        if r <= 0.0:
            raise _StageFailure("r left the positive half-line")
        a = self.alpha(r, th)
        mag2 = a.real * a.real + a.imag * a.imag
        if mag2 == 0.0:
            raise _StageFailure("alpha vanished inside a stage")
        if param is ParamSystem.R:
            if a.imag * a.imag <= (_SINGULAR_FRAC * _SINGULAR_FRAC) * mag2:
                raise _StageFailure("radius system singular inside a stage")
            den = r * a.imag
            return a.real / den, mag2 / den
        if a.real * a.real <= (_SINGULAR_FRAC * _SINGULAR_FRAC) * mag2:
            raise _StageFailure("angle system singular inside a stage")
        return r * a.imag / a.real, mag2 / a.real

    # -- parameterization switching -------------------------------------------

    def choose(self, a: complex, current: Optional[ParamSystem]) -> ParamSystem:
        im, re = abs(a.imag), abs(a.real)
        c = self.opts.c
        h = self.opts.switch_hysteresis
        if current is ParamSystem.R:
            return ParamSystem.THETA if im * h < c * re else ParamSystem.R
        if current is ParamSystem.THETA:
            return ParamSystem.R if im > h * c * re else ParamSystem.THETA
        return choose_param(a, c)

    def direction(self, param: ParamSystem, a: complex) -> int:
        comp = a.imag if param is ParamSystem.R else a.real
        return self.want if comp > 0 else -self.want

    def max_step(self, param: ParamSystem, r: float) -> float:
        if param is ParamSystem.R:
            return self.opts.max_step * max(1.0, r)
        return self.opts.max_step

    # -- one adaptive step -----------------------------------------------------

    def attempt_step(
        self, param: ParamSystem, dirn: int, u: float, y: Tuple[float, float], h: float
    ) -> Tuple[Optional[Tuple[float, float, float]], float]:
        """Try one embedded step of size h; returns ((u1, y0_1, x1), h_next).

        The state component y = (y0, x). On rejection returns (None, smaller h).
        Error control applies to the geometry component y0 only: x is slaved
        back onto the crossing manifold by the post-step projection, so its
        local truncation error never accumulates and must not throttle steps
        (at large radius |x| ~ |a_N| r^N and would otherwise dominate).
        """
        o = self.opts
        min_step = o.min_step
        du = dirn * h
        y0, x0 = y
        drev = self._drev
        exp = cmath.exp
        is_r = param is ParamSystem.R

        def stage(ui: float, yi: float):
            r, th = (ui, yi) if is_r else (yi, ui)
            if r <= 0.0:
                return None
            z = r * exp(1j * th)
            acc = 0j
            for c in drev:
                acc = acc * z + c
            a = 1j * z * acc
            ar = a.real
            ai = a.imag
            mag2 = ar * ar + ai * ai
            if mag2 == 0.0:
                return None
            if is_r:
                if ai * ai <= 1e-26 * mag2:
                    return None
                den = r * ai
                return ar / den, mag2 / den
            if ar * ar <= 1e-26 * mag2:
                return None
            return r * ai / ar, mag2 / ar

        cap = self._theta_cap if is_r else 0.35 * max(1.0, abs(y0))
        k = stage(u, y0)
        if k is None:
            return None, max(0.5 * h, min_step)
        k10, k11 = k
        # pre-shrink the step so the dependent coordinate stays within the
        # branch-spacing cap instead of discovering the violation after all
        # six stages are paid for
        if abs(du) * abs(k10) > 0.8 * cap:
            h = 0.8 * cap / (abs(k10) + 1e-300)
            if h < min_step:
                return None, min_step * 0.5
            du = dirn * h
        k = stage(u + du * _C2, y0 + du * (_A21 * k10))
        if k is None:
            return None, max(0.5 * h, min_step)
        k20, k21 = k
        k = stage(u + du * _C3, y0 + du * (_A31 * k10 + _A32 * k20))
        if k is None:
            return None, max(0.5 * h, min_step)
        k30, k31 = k
        k = stage(u + du * _C4, y0 + du * (_A41 * k10 + _A42 * k20 + _A43 * k30))
        if k is None:
            return None, max(0.5 * h, min_step)
        k40, k41 = k
        k = stage(
            u + du * _C5, y0 + du * (_A51 * k10 + _A52 * k20 + _A53 * k30 + _A54 * k40)
        )
        if k is None:
            return None, max(0.5 * h, min_step)
        k50, k51 = k
        k = stage(
            u + du * _C6,
            y0 + du * (_A61 * k10 + _A62 * k20 + _A63 * k30 + _A64 * k40 + _A65 * k50),
        )
        if k is None:
            return None, max(0.5 * h, min_step)
        k60, k61 = k

        y0_new = y0 + du * (_B1 * k10 + _B3 * k30 + _B4 * k40 + _B6 * k60)
        x_new = x0 + du * (_B1 * k11 + _B3 * k31 + _B4 * k41 + _B6 * k61)
        # branch-hop guard: the projection can only be trusted to land on the
        # same crossing branch while the dependent coordinate moves less than
        # the branch spacing (~pi/N in theta, ~the local radius in r)
        if not math.isfinite(y0_new) or abs(y0_new - y0) > cap:
            return None, max(0.4 * h, min_step)
        err0 = du * (_E1 * k10 + _E3 * k30 + _E4 * k40 + _E5 * k50 + _E6 * k60)
        # relative scale floored at one radian (resp. one radius unit): an
        # angle near zero is not a small quantity, it is a small coordinate
        sc0 = o.atol + o.rtol * max(1.0, abs(y0), abs(y0_new))
        err = abs(err0) / sc0
        if err > 1.0 or not math.isfinite(err):
            if not math.isfinite(err):
                return None, max(0.5 * h, min_step)
            return None, max(max(0.2, 0.9 * err ** -0.2) * h, min_step)
        grow = 5.0 if err == 0.0 else min(5.0, 0.9 * err ** -0.2)
        return (u + du, y0_new, x_new), grow * h


def _state_tuple(param: ParamSystem, r: float, th: float, x: float):
    if param is ParamSystem.R:
        return r, (th, x)
    return th, (r, x)


def _want_of_state(p: Polynomial, s: TrackState) -> int:
    a = _alpha(p, s.r, s.theta)
    comp = a.imag if s.param is ParamSystem.R else a.real
    if comp == 0.0:
        raise CriticalPointError("cannot infer tracking sense at a singular state")
    return s.direction if comp > 0 else -s.direction


def step(p: Polynomial, s: TrackState, opts: TrackerOptions) -> TrackState:
    """Advance one accepted, re-projected step preserving the motion of x.

    Raises CriticalPointError when alpha vanishes at the state and
    StepUnderflowError when step control cannot meet tolerance.
    """
    eng = _Engine(p, opts, _want_of_state(p, s))
    u0, y0x = _state_tuple(s.param, s.r, s.theta, s.x)
    r, th, x, _ = eng.project(s.param, u0, y0x[0])
    a = eng.alpha(r, th)
    if abs(a) <= opts.alpha_tol * eng.alpha_scale(r):
        raise CriticalPointError(f"alpha ~ 0 at r={r}, theta={th}")
    param = eng.choose(a, s.param)
    dirn = eng.direction(param, a)
    u, y = _state_tuple(param, r, th, x)
    h = min(opts.initial_step * max(1.0, r), eng.max_step(param, r))
    while True:
        if h < opts.min_step:
            raise StepUnderflowError("step control fell below the minimum step")
        res, h_next = eng.attempt_step(param, dirn, u, y, h)
        if res is None:
            h = h_next
            continue
        u1, y0_1, x1 = res
        try:
            r1, th1, x1p, _ = eng.project(param, u1, y0_1)
        except _ProjectionFailure:
            h = 0.5 * h
            if h < opts.min_step:
                raise StepUnderflowError("projection kept failing at minimum step")
            continue
        if eng.want * (x1p - x) < -1e-12 * (1.0 + abs(x)):
            h = 0.5 * h
            if h < opts.min_step:
                raise StepUnderflowError("monotone progress stalled at minimum step")
            continue
        a1 = eng.alpha(r1, th1)
        param1 = eng.choose(a1, param) if abs(a1) > 0 else param
        dirn1 = eng.direction(param1, a1) if abs(a1) > 0 else dirn
        return TrackState(r=r1, theta=th1, x=x1p, param=param1, direction=dirn1)


def track(
    p: Polynomial,
    start: Crossing,
    mode: str = "rightward",
    opts: Optional[TrackerOptions] = None,
) -> Trajectory:
    """Follow a crossing until a root, a critical point, a radius boundary or
    the step budget. Terminal conditions are events, never exceptions.

    mode "rightward" keeps x non-decreasing, "leftward" non-increasing. The
    start crossing must not be tangent (the motion sense is undefined there).
    """
    if start.kind is CrossingKind.TANGENT:
        raise ValueError("cannot start tracking at a tangent crossing")
    if mode not in ("rightward", "leftward"):
        raise ValueError("mode must be 'rightward' or 'leftward'")
    o = opts or TrackerOptions()
    want = 1 if mode == "rightward" else -1
    eng = _Engine(p, o, want)
    states: List[TrackState] = []

    try:
        r, th, x, v = eng.project(ParamSystem.R, start.r, start.theta)
    except _ProjectionFailure:
        th, v = start.theta, curve_point(p, start.r, start.theta)
        r, x = start.r, v.real
    a = eng.alpha(r, th)
    if abs(a) <= o.alpha_tol * eng.alpha_scale(r):
        return Trajectory((), CriticalPoint(r * cmath.exp(1j * (th % TWO_PI))))
    param = choose_param(a, o.c)
    dirn = eng.direction(param, a)
    states.append(TrackState(r=r, theta=th, x=x, param=param, direction=dirn))

    # already sitting on a root?
    z0 = r * cmath.exp(1j * (th % TWO_PI))
    if abs(x) <= o.root_x_tol * eng.x_scale(r) and abs(v) <= 10 * o.residual_tol * p.residual_scale(z0):
        z = newton_polish(p, z0, o.newton_iters)
        if abs(p.eval(z)) <= o.residual_tol * p.residual_scale(z):
            return Trajectory(tuple(states), RootFound(z))

    h = min(o.initial_step * max(1.0, r), eng.max_step(param, r))
    u, y = _state_tuple(param, r, th, x)
    stalled = 0  # consecutive zero-progress steps with alpha locally small

    for _ in range(o.max_steps):
        # clamp radius steps that would overshoot the working annulus
        if param is ParamSystem.R:
            if dirn < 0 and u - h < eng.r_min:
                h = u - eng.r_min
                if h < o.min_step:
                    return Trajectory(tuple(states), BoundaryReached(eng.r_min))
            elif dirn > 0 and u + h > eng.r_max:
                h = eng.r_max - u
                if h < o.min_step:
                    return Trajectory(tuple(states), BoundaryReached(eng.r_max))
        h = min(h, eng.max_step(param, r))

        if h < o.min_step:
            ev = _stall_event(eng, p, r, th, o)
            return Trajectory(tuple(states), ev)

        res, h_next = eng.attempt_step(param, dirn, u, y, h)
        if res is None:
            h = h_next
            if h <= o.min_step:
                ev = _stall_event(eng, p, r, th, o)
                return Trajectory(tuple(states), ev)
            continue
        u1, y0_1, x1_pred = res
        try:
            r1, th1, x1, v1 = eng.project(param, u1, y0_1)
        except _ProjectionFailure:
            h = 0.5 * h
            if h < o.min_step:
                ev = _stall_event(eng, p, r, th, o)
                return Trajectory(tuple(states), ev)
            continue
        # a projection correction comparable to the predicted move means the
        # predictor left this crossing branch's neighborhood: distrust it
        corr = abs((th1 if param is ParamSystem.R else r1) - y0_1)
        if corr > max(0.25 * abs(y0_1 - y[0]), 1e-6 * (1.0 + abs(y0_1))):
            h = 0.5 * h
            if h < o.min_step:
                ev = _stall_event(eng, p, r, th, o)
                return Trajectory(tuple(states), ev)
            continue
        if eng.want * (x1 - x) < -1e-12 * (1.0 + abs(x)):
            h = 0.5 * h
            if h < o.min_step:
                ev = _stall_event(eng, p, r, th, o)
                return Trajectory(tuple(states), ev)
            continue

        # root passage: x changed sign across the step, or landed on zero
        if (x < 0.0 < x1) or (x1 < 0.0 < x):
            z = _localize_root(eng, param, u, (y[0], x), u1, (y0_1, x1), o)
            if z is not None:
                states.append(_root_state(p, z, param, dirn))
                return Trajectory(tuple(states), RootFound(z))
        # inside the quadratic basin the tracker has done its (global) job;
        # hand the last stretch to Newton instead of resolving the increasingly
        # curved approach path step by step. Gated on the polished point
        # staying local so a distant root cannot be claimed for this track.
        z1 = r1 * cmath.exp(1j * (th1 % TWO_PI))
        if abs(x1) <= 1e-3 * p.residual_scale(z1):
            z = newton_polish(p, z1, o.newton_iters)
            if (
                abs(p.eval(z)) <= o.residual_tol * p.residual_scale(z)
                and abs(z - z1) <= 0.05 * (1.0 + abs(z1))
            ):
                states.append(_root_state(p, z, param, dirn))
                return Trajectory(tuple(states), RootFound(z))

        a1 = eng.alpha(r1, th1)
        if abs(a1) <= o.alpha_tol * eng.alpha_scale(r1):
            states.append(TrackState(r=r1, theta=th1, x=x1, param=param, direction=dirn))
            return Trajectory(
                tuple(states), CriticalPoint(r1 * cmath.exp(1j * (th1 % TWO_PI)))
            )
        # a saddle of the crossing manifold pins x in place while alpha is
        # small but not yet below alpha_tol; declare the critical point rather
        # than dither around it on steps the monotone tolerance cannot see
        if abs(x1 - x) <= 1e-11 * (1.0 + abs(x)) and abs(a1) <= 1e-4 * eng.alpha_scale(r1):
            stalled += 1
            if stalled >= 25:
                states.append(TrackState(r=r1, theta=th1, x=x1, param=param, direction=dirn))
                return Trajectory(
                    tuple(states), CriticalPoint(r1 * cmath.exp(1j * (th1 % TWO_PI)))
                )
        else:
            stalled = 0
        if r1 > eng.r_max:
            states.append(TrackState(r=r1, theta=th1, x=x1, param=param, direction=dirn))
            return Trajectory(tuple(states), BoundaryReached(eng.r_max))
        if r1 < eng.r_min:
            states.append(TrackState(r=r1, theta=th1, x=x1, param=param, direction=dirn))
            return Trajectory(tuple(states), BoundaryReached(eng.r_min))

        param1 = eng.choose(a1, param)
        dirn1 = eng.direction(param1, a1)
        if param1 is not param:
            h_next = min(h_next, o.initial_step * max(1.0, r1))
        param, dirn = param1, dirn1
        r, th, x = r1, th1, x1
        u, y = _state_tuple(param, r, th, x)
        h = h_next
        states.append(TrackState(r=r, theta=th, x=x, param=param, direction=dirn))

    return Trajectory(tuple(states), StepLimit())


def _root_state(p: Polynomial, z: complex, param: ParamSystem, dirn: int) -> TrackState:
    """Terminal state sitting exactly on the located root, so trajectories
    (and their animations) end at the root rather than at the step that
    bracketed it."""
    r, th = abs(z), math.atan2(z.imag, z.real) % TWO_PI
    return TrackState(r=r, theta=th, x=p.eval(z).real, param=param, direction=dirn)


def _stall_event(eng: _Engine, p: Polynomial, r: float, th: float,
                 o: TrackerOptions) -> TrackEvent:
    """Classify a step-control stall: hidden root, critical point, or budget."""
    z0 = r * cmath.exp(1j * (th % TWO_PI))
    z = newton_polish(p, z0, o.newton_iters)
    if abs(p.eval(z)) <= o.residual_tol * p.residual_scale(z):
        return RootFound(z)
    a = eng.alpha(r, th)
    if abs(a) <= 1e-5 * eng.alpha_scale(r):
        return CriticalPoint(z0)
    return StepLimit()


def _localize_root(
    eng: _Engine,
    param: ParamSystem,
    u_lo: float,
    y_lo: Tuple[float, float],
    u_hi: float,
    y_hi: Tuple[float, float],
    o: TrackerOptions,
) -> Optional[complex]:
    """Bisect the independent variable to the x = 0 passage, then polish."""
    x_lo = y_lo[1]
    s_lo = math.copysign(1.0, x_lo)
    a_u, b_u = u_lo, u_hi
    a_y, b_y = y_lo[0], y_hi[0]
    best = None
    for _ in range(120):
        mid_u = 0.5 * (a_u + b_u)
        w = (mid_u - a_u) / (b_u - a_u) if b_u != a_u else 0.5
        guess = a_y + w * (b_y - a_y)
        try:
            r_m, th_m, x_m, _ = eng.project(param, mid_u, guess)
        except _ProjectionFailure:
            break
        best = (r_m, th_m, x_m)
        if abs(x_m) <= 0.25 * o.root_x_tol * eng.x_scale(r_m) or abs(b_u - a_u) < 1e-15 * (1.0 + abs(mid_u)):
            break
        if math.copysign(1.0, x_m) == s_lo:
            a_u, a_y = mid_u, (th_m if param is ParamSystem.R else r_m)
        else:
            b_u, b_y = mid_u, (th_m if param is ParamSystem.R else r_m)
    if best is None:
        return None
    r_m, th_m, _ = best
    z = newton_polish(eng.p, r_m * cmath.exp(1j * (th_m % TWO_PI)), o.newton_iters)
    if abs(eng.p.eval(z)) <= o.residual_tol * eng.p.residual_scale(z):
        return z
    if abs(eng.p.eval(z)) <= 1e-6 * eng.p.residual_scale(z):
        return z
    return None


def _pick_start_upcrossing(q: Polynomial, opts: TrackerOptions) -> Optional[Crossing]:
    """Small-radius upcrossing nearest theta = pi, growing r if the rotated
    curve misses the axis at the halving-rule radius."""
    r = starting_radius(q)
    bound = 2.0 * cauchy_bound(q)
    for _ in range(24):
        ups = [c for c in find_crossings(q, r) if c.kind is CrossingKind.UP]
        if ups:
            return min(ups, key=lambda c: abs(c.theta - math.pi))
        r *= 1.5
        if r > bound:
            break
    return None


def _single_root_attempts(
    q0: Polynomial, opts: TrackerOptions
) -> Tuple[
    Optional[complex],
    List[Tuple[float, Polynomial, Optional[Crossing], Optional[Trajectory]]],
]:
    """Run the rotation schedule; returns (root or None, per-attempt log).

    q0 must have a0 = -1. Each attempt tracks the rotated polynomial
    q0 * e^{-i*nu}, whose roots coincide with q0's, so the final polish and
    residual gate run against q0 itself. Attempt log entries carry the
    polynomial actually tracked so trajectories can be replayed or dumped.
    """
    attempts: List[
        Tuple[float, Polynomial, Optional[Crossing], Optional[Trajectory]]
    ] = []
    schedule = (opts.nu,) + tuple(n for n in opts.rotation_schedule if n != opts.nu)
    for nu in schedule:
        q = rotate(q0, nu) if nu != 0.0 else q0
        start = _pick_start_upcrossing(q, opts)
        if start is None:
            attempts.append((nu, q, None, None))
            continue
        traj = track(q, start, "rightward", opts)
        attempts.append((nu, q, start, traj))
        if isinstance(traj.event, RootFound):
            root = newton_polish(q0, traj.event.root, opts.newton_iters)
            if abs(q0.eval(root)) <= opts.residual_tol * q0.residual_scale(root):
                return root, attempts
    return None, attempts


def find_single_root(p: Polynomial, opts: Optional[TrackerOptions] = None) -> complex:
    """Locate one root by tracking the small-radius upcrossing rightward.

    Critical-point terminations retry on the rotated polynomial p*e^{-i*nu}
    with nu from the rotation schedule; rotation moves critical values off the
    real axis without moving any root.
    """
    if p.degree < 1:
        raise DegreeZeroError("no roots: polynomial is constant")
    o = opts or TrackerOptions()
    norm = normalize(p)
    if isinstance(norm, ZeroRoot):
        return 0j
    root, attempts = _single_root_attempts(norm, o)
    if root is None:
        summary = ", ".join(
            f"nu={nu:g}: {type(t.event).__name__ if t else 'no upcrossing'}"
            for nu, _, _, t in attempts
        )
        raise UnconvergedError(
            f"rotation retry budget exhausted ({summary})", attempts
        )
    return root


def trajectory_records(p: Polynomial, traj: Trajectory) -> List[dict]:
    """Line-oriented view of a trajectory for debugging and UI playback."""
    recs = []
    for s in traj.states:
        v = curve_point(p, s.r, s.theta)
        recs.append(
            {
                "r": s.r,
                "theta": s.theta,
                "x": s.x,
                "param": s.param.value,
                "abs_f": abs(v),
            }
        )
    return recs


def format_trajectory(p: Polynomial, traj: Trajectory) -> str:
    """Whitespace-separated record lines closed by a single event line."""
    lines = [
        f"{rec['r']:.17g} {rec['theta']:.17g} {rec['x']:.17g} {rec['param']} {rec['abs_f']:.17g}"
        for rec in trajectory_records(p, traj)
    ]
    ev = traj.event
    if isinstance(ev, RootFound):
        lines.append(f"event root_found {ev.root.real:.17g} {ev.root.imag:.17g}")
    elif isinstance(ev, CriticalPoint):
        lines.append(
            f"event critical_point {ev.location.real:.17g} {ev.location.imag:.17g}"
        )
    elif isinstance(ev, BoundaryReached):
        lines.append(f"event boundary_reached {ev.r_limit:.17g}")
    else:
        lines.append("event step_limit")
    return "\n".join(lines) + "\n"
