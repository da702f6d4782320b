"""Geometry of the image curves f_r(t) = f(r*e^{it}) and their axis crossings.

A crossing is a parameter angle where the closed curve f_r meets the real
axis. The derivative of f_r with respect to the angle,

    alpha = i * r * e^{i*theta} * f'(r*e^{i*theta}),

classifies each crossing (Im alpha > 0 up, < 0 down, ~0 tangent) and is the
single quantity both tracking ODE systems are built from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .poly import TWO_PI, Polynomial, from_polar

# bisection on Im f_r stops when |Im f| < CROSSING_TOL * (1 + |f|)
CROSSING_TOL = 1e-12
# |Im alpha| <= CLASSIFY_TOL * |alpha| separates tangent from up/down
CLASSIFY_TOL = 1e-9


class NotOnAxisError(ValueError):
    """classify_crossing() was called at a point not on the real axis."""


class CrossingKind(str, Enum):
    UP = "up"
    DOWN = "down"
    TANGENT = "tangent"


@dataclass(frozen=True)
class Crossing:
    """One real-axis crossing of f_r: parameter angle, location and kind."""

    r: float
    theta: float  # in [0, 2*pi)
    x: float      # Re f_r(theta), the crossing location on the axis
    kind: CrossingKind


def curve_point(p: Polynomial, r: float, theta: float) -> complex:
    """f(r*e^{i*theta}); theta is reduced mod 2*pi so f_r(0) == f_r(2*pi)."""
    return p.eval(from_polar(r, theta))


def alpha(p: Polynomial, r: float, theta: float) -> complex:
    """d f_r / d theta = i*r*e^{i*theta} * f'(r*e^{i*theta}).

    Evaluated along a theta-parameterized trajectory the same quantity is the
    denominator of the radial system, so one function serves both ODEs.
    """
    z = from_polar(r, theta)
    return 1j * z * p.derivative().eval(z)


def classify_crossing(
    p: Polynomial,
    r: float,
    theta: float,
    tol: float = CLASSIFY_TOL,
    axis_tol: float = 1e-9,
) -> CrossingKind:
    """Up/Down/Tangent by the sign of Im alpha, relative to |alpha|."""
    v = curve_point(p, r, theta)
    if abs(v.imag) > axis_tol * (1.0 + abs(v)):
        raise NotOnAxisError(
            f"Im f_r(theta) = {v.imag:.3e} at r={r}, theta={theta}: not a crossing"
        )
    a = alpha(p, r, theta)
    if a.imag > tol * abs(a):
        return CrossingKind.UP
    if a.imag < -tol * abs(a):
        return CrossingKind.DOWN
    return CrossingKind.TANGENT


def default_samples(degree: int) -> int:
    """Im f_r is a degree-N trigonometric polynomial with at most 2N zeros;
    16 grid points per potential zero avoids missed sign changes in practice."""
    return max(64, 16 * degree)


def _bisect_im(p: Polynomial, r: float, lo: float, hi: float,
               im_lo: float) -> Optional[float]:
    """Bisect the sign change of Im f_r on (lo, hi). im_lo is Im f_r(lo)."""
    s_lo = math.copysign(1.0, im_lo)
    for _ in range(120):
        mid = 0.5 * (lo + hi)
        v = curve_point(p, r, mid)
        if abs(v.imag) <= CROSSING_TOL * (1.0 + abs(v)) or (hi - lo) < 1e-15:
            return mid
        if math.copysign(1.0, v.imag) == s_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _bisect_im_alpha(p: Polynomial, r: float, lo: float, hi: float) -> Optional[float]:
    """Bisect the sign change of Im alpha (extremum of Im f_r) on (lo, hi)."""
    a_lo = alpha(p, r, lo).imag
    a_hi = alpha(p, r, hi).imag
    if a_lo == 0.0:
        return lo
    if a_hi == 0.0:
        return hi
    if math.copysign(1.0, a_lo) == math.copysign(1.0, a_hi):
        return None
    s_lo = math.copysign(1.0, a_lo)
    for _ in range(120):
        mid = 0.5 * (lo + hi)
        am = alpha(p, r, mid).imag
        if am == 0.0 or (hi - lo) < 1e-15:
            return mid
        if math.copysign(1.0, am) == s_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def find_crossings(
    p: Polynomial,
    r: float,
    samples: Optional[int] = None,
    seed_angles: Sequence[float] = (),
) -> List[Crossing]:
    """All real-axis crossings of f_r, sorted by theta.

    Scans Im f_r on a uniform grid (optionally augmented with seed angles),
    bisects every sign change, and recovers tangencies -- which produce no
    sign change -- from local minima of |Im f_r|: each candidate extremum is
    refined by bisecting Im alpha, then kept if Im f_r vanishes there. An
    extremum whose refined value has the opposite sign of its neighbours is a
    dip across the axis that the grid missed; it is split into the two
    transversal crossings on either side.
    """
    if r <= 0:
        raise ValueError("radius must be positive")
    n = samples if samples is not None else default_samples(p.degree)
    if n < 4:
        raise ValueError("need at least 4 samples")
    grid = np.arange(n) * (TWO_PI / n)
    if len(seed_angles):
        extra = np.asarray(seed_angles, dtype=float) % TWO_PI
        grid = np.unique(np.concatenate([grid, extra]))
    n = len(grid)

    coeffs = np.asarray(p.coeffs)
    z = r * np.exp(1j * grid)
    vals = npoly.polyval(z, coeffs)
    im = vals.imag
    on_axis = np.abs(im) <= CROSSING_TOL * (1.0 + np.abs(vals))

    found: List[float] = []
    # grid points already on the axis (crossings landing exactly on a node)
    for k in range(n):
        if on_axis[k] and not on_axis[k - 1]:
            found.append(float(grid[k]))

    # sign changes between consecutive off-axis nodes (wrap-around included)
    for k in range(n):
        k2 = (k + 1) % n
        if on_axis[k] or on_axis[k2]:
            continue
        if math.copysign(1.0, im[k]) != math.copysign(1.0, im[k2]):
            lo = float(grid[k])
            hi = float(grid[k2]) if k2 > k else float(grid[k2]) + TWO_PI
            t = _bisect_im(p, r, lo, hi, float(im[k]))
            if t is not None:
                found.append(t % TWO_PI)

    # tangencies: local minima of |Im f_r| without a sign change
    absim = np.abs(im)
    for k in range(n):
        km, kp = (k - 1) % n, (k + 1) % n
        if on_axis[k] or on_axis[km] or on_axis[kp]:
            continue
        if not (absim[k] <= absim[km] and absim[k] <= absim[kp]):
            continue
        if math.copysign(1.0, im[km]) != math.copysign(1.0, im[kp]):
            continue  # already handled as a sign change
        lo = float(grid[km])
        hi = float(grid[kp]) if kp > km else float(grid[kp]) + TWO_PI
        t = _bisect_im_alpha(p, r, lo, hi)
        if t is None:
            continue
        v = curve_point(p, r, t)
        if abs(v.imag) <= CROSSING_TOL * (1.0 + abs(v)):
            found.append(t % TWO_PI)
        elif math.copysign(1.0, v.imag) != math.copysign(1.0, im[k]):
            # the grid skipped a dip across the axis: two crossings hide here
            for a_, b_ in ((lo, t), (t, hi)):
                ta = _bisect_im(p, r, a_, b_, curve_point(p, r, a_).imag)
                if ta is not None:
                    found.append(ta % TWO_PI)

    # dedupe angles that several passes converged to
    found.sort()
    dedup: List[float] = []
    for t in found:
        if dedup and abs(t - dedup[-1]) < 1e-10:
            continue
        dedup.append(t)
    if len(dedup) > 1 and (dedup[0] + TWO_PI) - dedup[-1] < 1e-10:
        dedup.pop()

    out = []
    for t in dedup:
        v = curve_point(p, r, t)
        kind = classify_crossing(p, r, t, axis_tol=1e-6)
        out.append(Crossing(r=r, theta=t, x=v.real, kind=kind))
    return out


def sample_curve(p: Polynomial, r: float, m: int) -> List[complex]:
    """m points f_r(2*pi*k/m), k = 0 .. m-1 (the closed-curve polyline)."""
    if m < 1:
        raise ValueError("need at least one sample")
    thetas = np.arange(m) * (TWO_PI / m)
    z = r * np.exp(1j * thetas)
    vals = npoly.polyval(z, np.asarray(p.coeffs))
    return [complex(v) for v in vals]
