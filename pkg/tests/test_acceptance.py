"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; the corpus criteria share one seeded 1800-polynomial corpus.
"""

import math
import time

import numpy as np
import pytest

from polycross import (
    Crossing,
    CrossingKind,
    Polynomial,
    RootFound,
    alpha,
    cauchy_bound,
    curve_point,
    find_crossings,
    find_single_root,
    from_roots,
    solve_deflation,
    solve_parallel,
    track,
)
from conftest import (
    CUBIC_A_ROOTS,
    CUBIC_B_ROOTS,
    annulus_roots,
    poly_with_roots,
    random_normalized_poly,
)

CORPUS_SEED = 715225741
PER_DEGREE = 200
DEGREES = range(2, 11)


def _report(name: str, detail: str = "") -> None:
    print(f"ACCEPTANCE {name}: PASS {detail}".rstrip())


@pytest.fixture(scope="module")
def corpus():
    rng = np.random.default_rng(CORPUS_SEED)
    out = []
    for degree in DEGREES:
        for _ in range(PER_DEGREE):
            roots = annulus_roots(rng, degree)
            out.append((poly_with_roots(roots), roots))
    return out


def test_reference_cubic_b_roots_and_track_radii():
    a1, a2, a3 = CUBIC_B_ROOTS
    lead = 1.0 / (a1 * a2 * a3)
    p = from_roots([a1, a2, a3], leading=lead)
    t0 = time.perf_counter()
    rep = solve_parallel(p)
    elapsed = time.perf_counter() - t0
    assert rep.complete
    assert len(rep.roots) == 3
    err = max(min(abs(e.root - g) for e in rep.roots) for g in CUBIC_B_ROOTS)
    assert err < 1e-8
    # terminal radii of the root-finding tracks against the expected moduli
    moduli = (2.1213, 2.2627, 2.4042)
    terminal = [abs(t.event.root) for t in rep.tracks if isinstance(t.event, RootFound)]
    assert terminal, "no root-finding tracks"
    for r in terminal:
        assert min(abs(r - m) for m in moduli) < 0.02
    for m in moduli:
        assert min(abs(r - m) for r in terminal) < 0.02
    assert elapsed < 1.0
    _report(
        "reference cubic B (roots + track radii)",
        f"(max root error {err:.2e}, radii {sorted(set(round(r, 4) for r in terminal))}, {elapsed:.2f}s)",
    )


def test_reference_cubic_a_both_modes():
    p = poly_with_roots(CUBIC_A_ROOTS)
    t0 = time.perf_counter()
    rep_p = solve_parallel(p)
    rep_d = solve_deflation(p)
    elapsed = time.perf_counter() - t0
    for rep in (rep_p, rep_d):
        assert rep.complete
        err = max(min(abs(e.root - g) for e in rep.roots) for g in CUBIC_A_ROOTS)
        assert err < 1e-8
    assert elapsed < 1.0
    _report("reference cubic A (both modes)", f"({elapsed:.2f}s)")


def test_corpus_completeness_and_vieta(corpus):
    t0 = time.perf_counter()
    worst = 0.0
    for p, roots in corpus:
        rep = solve_parallel(p)
        assert rep.complete
        err = max(min(abs(e.root - g) for e in rep.roots) for g in roots)
        worst = max(worst, err)
        assert err < 1e-6
        n = p.degree
        cs = p.coeffs
        assert rep.vieta.sum_error < 1e-8 * (1.0 + abs(cs[n - 1] / cs[n]))
        assert rep.vieta.product_error < 1e-8 * (1.0 + abs(cs[0] / cs[n]))
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    _report(
        "corpus completeness + Vieta",
        f"({len(corpus)} solves, worst error {worst:.2e}, {elapsed:.1f}s)",
    )


def test_ode_oracle_z2_minus_1():
    p = Polynomial([-1, 0, 1])
    start = Crossing(r=0.5, theta=0.0, x=-0.75, kind=CrossingKind.UP)
    traj = track(p, start, "rightward")
    assert isinstance(traj.event, RootFound)
    assert abs(traj.event.root - 1.0) < 1e-10
    worst = max(abs(s.x - (s.r ** 2 - 1.0)) for s in traj.states)
    assert worst < 1e-8
    _report("ODE closed-form oracle x(r) = r^2 - 1", f"(max defect {worst:.2e})")


def test_alpha_finite_difference_suite():
    rng = np.random.default_rng(CORPUS_SEED + 1)
    h = 1e-6
    worst = 0.0
    for _ in range(1000):
        p = random_normalized_poly(rng, int(rng.integers(1, 9)))
        r = float(rng.uniform(0.1, 5.0))
        th = float(rng.uniform(0.0, 2.0 * math.pi))
        fd = (curve_point(p, r, th + h) - curve_point(p, r, th - h)) / (2 * h)
        a = alpha(p, r, th)
        rel = abs(fd - a) / (1.0 + abs(a))
        worst = max(worst, rel)
        assert rel < 1e-6
    _report("angular-derivative finite-difference suite", f"(1000 cases, worst {worst:.2e})")


def test_sign_law_and_monotonicity_subcorpus():
    rng = np.random.default_rng(CORPUS_SEED + 2)
    tracks = 0
    steps = 0
    for degree in DEGREES:
        for _ in range(5):
            roots = annulus_roots(rng, degree)
            p = poly_with_roots(roots)
            sink = []
            solve_parallel(p, trajectory_sink=sink)
            for q, start, traj in sink:
                tracks += 1
                want = 1 if start.kind is CrossingKind.DOWN else -1
                states = traj.states
                for s0, s1 in zip(states, states[1:]):
                    steps += 1
                    # monotone in the tracked direction
                    assert want * (s1.x - s0.x) >= -1e-12 * (1.0 + abs(s0.x))
                    # sign law at non-tangent radius-system steps
                    if (
                        s0.param.value == "r"
                        and s1.param.value == "r"
                        and s1.r != s0.r
                        and abs(s1.x - s0.x) > 1e-12 * (1.0 + abs(s0.x))
                    ):
                        a = alpha(q, s0.r, s0.theta)
                        if abs(a.imag) > 1e-9 * abs(a):
                            fd = (s1.x - s0.x) / (s1.r - s0.r)
                            assert math.copysign(1.0, fd) == math.copysign(1.0, a.imag)
    _report(
        "sign law + rightward monotonicity",
        f"({tracks} trajectories, {steps} accepted steps)",
    )


def test_large_radius_census(corpus):
    for p, _roots in corpus:
        n = p.degree
        out = find_crossings(p, 2.0 * cauchy_bound(p))
        ups = sum(1 for c in out if c.kind is CrossingKind.UP and c.x > 0)
        downs = sum(1 for c in out if c.kind is CrossingKind.DOWN and c.x < 0)
        assert ups >= n
        assert downs >= n
    _report("large-radius crossing census", f"({len(corpus)} polynomials)")


def test_critical_point_rotation_path():
    # oracle: constructed factorization (z^2 - 0.25)(z - 2) / 0.5, whose
    # derivative vanishes at (4 - sqrt(19))/6 ~ -0.0598 inside [-1, 0]
    p = from_roots([0.5, -0.5, 2.0], leading=1.0 / 0.5)
    dp = p.derivative()
    crits = np.roots([c.real for c in reversed(dp.coeffs)])
    assert any(-1.0 <= c <= 0.0 for c in crits.real if abs(c.imag) < 1e-12)
    root = find_single_root(p)
    err = min(abs(root - g) for g in (0.5, -0.5, 2.0))
    assert err < 1e-8
    _report("critical-point polynomial single-root", f"(root {root:.6f}, err {err:.1e})")


def test_primary_runs_without_secondary():
    # the library, service and CLI import from the primary package alone;
    # nothing here references any frontend artifact
    import polycross
    import polycross.cli
    import polycross.service

    for mod in (polycross, polycross.cli, polycross.service):
        assert "frontend" not in repr(getattr(mod, "__file__", ""))
    _report("primary component standalone")
