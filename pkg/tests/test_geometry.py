import math

import pytest

from polycross import (
    CrossingKind,
    NotOnAxisError,
    Polynomial,
    alpha,
    classify_crossing,
    curve_point,
    find_crossings,
    sample_curve,
    starting_radius,
)
from conftest import random_normalized_poly

TWO_PI = 2.0 * math.pi


def test_curve_point_examples():
    p = Polynomial([-1, 0, 1])
    assert curve_point(p, 2.0, 0.0) == 3 + 0j
    assert abs(curve_point(p, 2.0, math.pi / 2) - (-5 + 0j)) < 1e-14


def test_curve_point_small_radius_hugs_constant_term(rng):
    for _ in range(20):
        p = random_normalized_poly(rng, int(rng.integers(2, 8)))
        r = starting_radius(p)
        for th in rng.uniform(0, TWO_PI, 8):
            assert abs(curve_point(p, r, th) + 1.0) < 0.5


def test_curve_closure_is_exact(rng):
    for _ in range(10):
        p = random_normalized_poly(rng, int(rng.integers(1, 9)))
        r = float(rng.uniform(0.2, 4.0))
        assert curve_point(p, r, 0.0) == curve_point(p, r, TWO_PI)


def test_alpha_examples():
    p = Polynomial([-1, 0, 1])
    assert abs(alpha(p, 2.0, 0.0) - 8j) < 1e-13
    lin = Polynomial([-1, 1])
    for r in (0.5, 1.0, 2.7):
        assert abs(alpha(lin, r, 0.0) - 1j * r) < 1e-14
    # analytic: alpha = 2 i r^2 e^{2 i theta} at theta = pi/2 gives -8i
    assert abs(alpha(p, 2.0, math.pi / 2) - (-8j)) < 1e-13


def test_alpha_matches_finite_differences(rng):
    h = 1e-6
    for _ in range(60):
        p = random_normalized_poly(rng, int(rng.integers(1, 9)))
        r = float(rng.uniform(0.1, 5.0))
        th = float(rng.uniform(0, TWO_PI))
        fd = (curve_point(p, r, th + h) - curve_point(p, r, th - h)) / (2 * h)
        a = alpha(p, r, th)
        assert abs(fd - a) < 1e-6 * (1.0 + abs(a))


def test_classify_crossing_examples():
    p = Polynomial([-1, 0, 1])
    assert classify_crossing(p, 2.0, 0.0) is CrossingKind.UP
    assert classify_crossing(p, 2.0, math.pi / 2) is CrossingKind.DOWN
    # a root sitting on the circle is still a transversal crossing
    assert curve_point(p, 1.0, 0.0) == 0j
    assert classify_crossing(p, 1.0, 0.0) is CrossingKind.UP
    with pytest.raises(NotOnAxisError):
        classify_crossing(p, 2.0, 0.3)


def test_find_crossings_z2_minus_1():
    # oracle: Im f_r = 4 sin(2 theta) at r = 2, zeros at multiples of pi/2
    p = Polynomial([-1, 0, 1])
    out = find_crossings(p, 2.0)
    assert len(out) == 4
    want = [
        (0.0, 3.0, CrossingKind.UP),
        (math.pi / 2, -5.0, CrossingKind.DOWN),
        (math.pi, 3.0, CrossingKind.UP),
        (3 * math.pi / 2, -5.0, CrossingKind.DOWN),
    ]
    for c, (th, x, kind) in zip(out, want):
        assert abs(c.theta - th) < 1e-9
        assert abs(c.x - x) < 1e-9
        assert c.kind is kind
        assert c.r == 2.0


def test_find_crossings_linear():
    out = find_crossings(Polynomial([-1, 1]), 0.5)
    assert len(out) == 2
    assert abs(out[0].theta) < 1e-9 and abs(out[0].x + 0.5) < 1e-12
    assert out[0].kind is CrossingKind.UP
    assert abs(out[1].theta - math.pi) < 1e-9 and abs(out[1].x + 1.5) < 1e-12
    assert out[1].kind is CrossingKind.DOWN


def test_find_crossings_sorted_and_in_range(rng):
    for _ in range(15):
        p = random_normalized_poly(rng, int(rng.integers(2, 9)))
        r = float(rng.uniform(0.3, 3.0))
        out = find_crossings(p, r)
        thetas = [c.theta for c in out]
        assert thetas == sorted(thetas)
        assert all(0.0 <= t < TWO_PI for t in thetas)
        for c in out:
            v = curve_point(p, c.r, c.theta)
            assert abs(v.imag) <= 1e-9 * (1.0 + abs(v))
            assert c.x == v.real


def test_census_large_radius(rng):
    from polycross import cauchy_bound

    for _ in range(15):
        n = int(rng.integers(1, 9))
        p = random_normalized_poly(rng, n)
        out = find_crossings(p, 2.0 * cauchy_bound(p))
        ups = [c for c in out if c.kind is CrossingKind.UP and c.x > 0]
        downs = [c for c in out if c.kind is CrossingKind.DOWN and c.x < 0]
        assert len(ups) >= n
        assert len(downs) >= n


def test_census_never_empty_inside_working_annulus(rng):
    from polycross import cauchy_bound

    for _ in range(10):
        p = random_normalized_poly(rng, int(rng.integers(1, 7)))
        assert find_crossings(p, starting_radius(p))
        assert find_crossings(p, 1.5 * cauchy_bound(p))


def test_small_radius_has_exactly_two_crossings(rng):
    # generic polynomials: |a1| bounded away from zero so the small-r image
    # is a once-traversed near-circle around -1
    for _ in range(20):
        p = random_normalized_poly(rng, int(rng.integers(2, 9)), min_a1=0.3)
        r = starting_radius(p)
        out = find_crossings(p, r)
        assert len(out) == 2
        rightmost = max(out, key=lambda c: c.x)
        assert rightmost.kind is CrossingKind.UP
        for z in sample_curve(p, r, 128):
            assert abs(z + 1.0) < 0.5


def test_small_radius_degenerate_a1_zero():
    # z^2 - 1 traverses its image circle twice: 4 parameter crossings at 2
    # distinct axis locations, the rightmost location upcrossing
    p = Polynomial([-1, 0, 1])
    out = find_crossings(p, 0.5)
    assert len(out) == 4
    xs = sorted({round(c.x, 9) for c in out})
    assert len(xs) == 2
    right = [c for c in out if abs(c.x - max(xs)) < 1e-9]
    assert all(c.kind is CrossingKind.UP for c in right)


def test_alternation_between_transversal_crossings(rng):
    for _ in range(15):
        p = random_normalized_poly(rng, int(rng.integers(2, 8)))
        r = float(rng.uniform(0.5, 2.5))
        out = find_crossings(p, r)
        kinds = [c.kind for c in out]
        if CrossingKind.TANGENT in kinds or len(kinds) < 2:
            continue
        for a, b in zip(kinds, kinds[1:] + kinds[:1]):
            assert a is not b


def locate_tangency(p: Polynomial, r_lo: float, r_hi: float) -> float:
    """Bisect the radius where the crossing count changes (a fold birth)."""
    n_lo = len(find_crossings(p, r_lo))
    for _ in range(60):
        mid = 0.5 * (r_lo + r_hi)
        if len(find_crossings(p, mid)) == n_lo:
            r_lo = mid
        else:
            r_hi = mid
    return 0.5 * (r_lo + r_hi)


def test_tangency_detected_at_fold_birth(cubic_b):
    # a new crossing pair is born between r = 1.5 and r = 2 for this cubic;
    # exactly at the fold the curve is tangent to the axis
    r_star = locate_tangency(cubic_b, 1.5, 2.0)
    assert 1.5 < r_star < 2.0
    out = find_crossings(cubic_b, r_star)
    kinds = {c.kind for c in out}
    assert CrossingKind.TANGENT in kinds or (
        # half-ulp away from the fold both transversal twins exist
        len(find_crossings(cubic_b, r_star * (1 + 1e-12))) != len(out)
    )


def test_sample_curve_examples():
    lin = Polynomial([-1, 1])
    pts = sample_curve(lin, 1.0, 4)
    want = [0j, -1 + 1j, -2 + 0j, -1 - 1j]
    assert all(abs(a - b) < 1e-12 for a, b in zip(pts, want))
    sq = Polynomial([-1, 0, 1])
    pts = sample_curve(sq, 1.0, 4)
    want = [0j, -2 + 0j, 0j, -2 + 0j]
    assert all(abs(a - b) < 1e-12 for a, b in zip(pts, want))


def test_sample_curve_anchor(rng):
    for _ in range(10):
        p = random_normalized_poly(rng, int(rng.integers(1, 8)))
        r = float(rng.uniform(0.2, 3.0))
        pts = sample_curve(p, r, 7)
        assert pts[0] == curve_point(p, r, 0.0)


def test_seed_angles_are_merged():
    p = Polynomial([-1, 0, 1])
    out = find_crossings(p, 2.0, seed_angles=[0.0, 1.0, math.pi])
    assert len(out) == 4  # seeds must not create duplicates
