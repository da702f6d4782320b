import math

import pytest

from polycross import (
    BoundaryReached,
    CriticalPoint,
    CrossingKind,
    DegreeZeroError,
    IncompleteError,
    Polynomial,
    RootFound,
    StepLimit,
    TrackerOptions,
    dedupe,
    from_roots,
    initial_crossings,
    normalize,
    solve_deflation,
    solve_parallel,
    solve_single,
)
from conftest import CUBIC_A_ROOTS, CUBIC_B_ROOTS, annulus_roots, poly_with_roots


def match_roots(report, true_roots):
    """Max over true roots of the distance to the nearest reported root."""
    return max(
        min(abs(e.root - g) for e in report.roots) for g in true_roots
    )


# ---------------------------------------------------------------- census

def test_initial_crossings_z2_minus_1():
    # oracle: f(4) = 15 and f(4i) = -17; Im f_r = 16 sin(2 theta) vanishes at
    # multiples of pi/2
    p = Polynomial([-1, 0, 1])
    out = initial_crossings(p)
    assert len(out) == 4
    assert all(c.r == 4.0 for c in out)
    ups = [c for c in out if c.kind is CrossingKind.UP]
    downs = [c for c in out if c.kind is CrossingKind.DOWN]
    assert sorted(round(c.theta, 9) for c in ups) == [0.0, round(math.pi, 9)]
    assert sorted(round(c.theta, 9) for c in downs) == [
        round(math.pi / 2, 9),
        round(3 * math.pi / 2, 9),
    ]
    assert all(abs(c.x - 15.0) < 1e-9 for c in ups)
    assert all(abs(c.x + 17.0) < 1e-9 for c in downs)


def test_initial_crossings_linear():
    out = initial_crossings(Polynomial([-1, 1]))
    assert len(out) == 2


def test_initial_crossings_cubic_b(cubic_b):
    out = initial_crossings(normalize(cubic_b))
    ups = [c for c in out if c.kind is CrossingKind.UP and c.x > 0]
    downs = [c for c in out if c.kind is CrossingKind.DOWN and c.x < 0]
    assert len(ups) >= 3 and len(downs) >= 3


# ---------------------------------------------------------------- dedupe

def test_dedupe_double_root_cluster():
    p = from_roots([1.0, 1.0, -1.0])  # 1 is a double root
    out = dedupe([1.0 + 0j, 1.0 + 1e-12j, -1.0 + 0j], p)
    out = sorted(out, key=lambda t: t[0].real)
    assert len(out) == 2
    assert abs(out[0][0] + 1.0) < 1e-9 and out[0][1] == 1
    assert abs(out[1][0] - 1.0) < 1e-9 and out[1][1] == 2


def test_dedupe_distinct_singletons():
    p = from_roots([1j, -1j])
    out = dedupe([1j, -1j], p)
    assert sorted(m for _, m in out) == [1, 1]
    assert len(out) == 2


def test_dedupe_merges_multi_track_hits(cubic_b):
    # several tracks landing on the same simple root must not inflate its
    # multiplicity
    g = CUBIC_B_ROOTS[0]
    est = [g, g + 1e-9, g - 1e-9j, CUBIC_B_ROOTS[1], CUBIC_B_ROOTS[2]]
    out = dedupe(est, cubic_b)
    assert len(out) == 3
    assert all(m == 1 for _, m in out)


# ---------------------------------------------------------------- parallel

def test_solve_parallel_z2_minus_1():
    rep = solve_parallel(Polynomial([-1, 0, 1]))
    assert rep.complete and rep.mode == "parallel"
    assert sorted(round(e.root.real, 9) for e in rep.roots) == [-1.0, 1.0]
    assert all(e.multiplicity == 1 for e in rep.roots)
    assert rep.vieta.sum_error < 1e-12
    assert rep.vieta.product_error < 1e-12


def test_solve_parallel_cubic_a(cubic_a):
    rep = solve_parallel(cubic_a)
    assert rep.complete
    assert match_roots(rep, CUBIC_A_ROOTS) < 1e-8


def test_solve_parallel_cubic_b(cubic_b):
    rep = solve_parallel(cubic_b)
    assert rep.complete
    assert match_roots(rep, CUBIC_B_ROOTS) < 1e-8
    moduli = sorted(abs(e.root) for e in rep.roots)
    for got, want in zip(moduli, (2.1213, 2.2627, 2.4042)):
        assert abs(got - want) < 1e-3


def test_solve_parallel_zero_roots():
    # 3 z^2 (1 - z): roots 0 (x2) and 1
    rep = solve_parallel(Polynomial([0, 0, 3, -3]))
    assert rep.complete
    by_mult = {round(e.root.real, 6): e.multiplicity for e in rep.roots}
    assert by_mult == {0.0: 2, 1.0: 1}


def test_solve_parallel_triple_root():
    rep = solve_parallel(from_roots([1.0, 1.0, 1.0]))
    assert rep.complete
    assert len(rep.roots) == 1
    assert rep.roots[0].multiplicity == 3
    assert abs(rep.roots[0].root - 1.0) < 1e-4  # conditioning-limited


def test_solve_parallel_degree_one():
    rep = solve_parallel(Polynomial([-2, 1]))
    assert rep.complete and abs(rep.roots[0].root - 2.0) < 1e-12


def test_solve_rejects_constants():
    with pytest.raises(DegreeZeroError):
        solve_parallel(Polynomial([3.0]))
    with pytest.raises(DegreeZeroError):
        solve_deflation(Polynomial([3.0]))


def test_track_outcomes_are_typed_and_sufficient(cubic_b):
    rep = solve_parallel(cubic_b)
    assert len(rep.tracks) == 6  # 2N for the cubic
    for t in rep.tracks:
        assert isinstance(
            t.event, (RootFound, CriticalPoint, BoundaryReached, StepLimit)
        )
        assert t.steps >= 1
    found = sum(1 for t in rep.tracks if isinstance(t.event, RootFound))
    assert found >= 3


# ---------------------------------------------------------------- deflation

def test_solve_deflation_z2_minus_1():
    rep = solve_deflation(Polynomial([-1, 0, 1]))
    assert rep.complete and rep.mode == "deflation"
    assert sorted(round(e.root.real, 9) for e in rep.roots) == [-1.0, 1.0]


def test_solve_deflation_triple_root_clusters():
    rep = solve_deflation(from_roots([1.0, 1.0, 1.0]))
    assert rep.complete
    assert len(rep.roots) == 1
    assert rep.roots[0].multiplicity == 3


def test_mode_agreement_cubic_b(cubic_b):
    a = solve_parallel(cubic_b)
    b = solve_deflation(cubic_b)
    got_a = sorted((round(e.root.real, 6), round(e.root.imag, 6)) for e in a.roots)
    got_b = sorted((round(e.root.real, 6), round(e.root.imag, 6)) for e in b.roots)
    assert got_a == got_b


def test_mode_agreement_random(rng):
    for _ in range(8):
        degree = int(rng.integers(2, 7))
        roots = annulus_roots(rng, degree)
        p = poly_with_roots(roots)
        a = solve_parallel(p)
        b = solve_deflation(p)
        assert a.complete and b.complete
        for e in a.roots:
            assert min(abs(e.root - f.root) for f in b.roots) < 1e-6


# ---------------------------------------------------------------- invariants

def test_mini_corpus_completeness_and_vieta(rng):
    for degree in range(2, 7):
        for _ in range(6):
            roots = annulus_roots(rng, degree)
            p = poly_with_roots(roots)
            rep = solve_parallel(p)
            assert rep.complete
            assert match_roots(rep, roots) < 1e-6
            cs = p.coeffs
            sum_scale = 1.0 + abs(cs[degree - 1] / cs[degree])
            prod_scale = 1.0 + abs(cs[0] / cs[degree])
            assert rep.vieta.sum_error < 1e-8 * sum_scale
            assert rep.vieta.product_error < 1e-8 * prod_scale


def test_parallel_determinism_and_workers(cubic_b, rng):
    seq = solve_parallel(cubic_b)
    threaded = solve_parallel(cubic_b, workers=4)
    again = solve_parallel(cubic_b)
    key = lambda rep: sorted(
        (round(e.root.real, 12), round(e.root.imag, 12), e.multiplicity)
        for e in rep.roots
    )
    assert key(seq) == key(threaded) == key(again)
    assert [type(t.event).__name__ for t in seq.tracks] == [
        type(t.event).__name__ for t in threaded.tracks
    ]


def test_residuals_within_tolerance(rng):
    for _ in range(5):
        roots = annulus_roots(rng, 5)
        p = poly_with_roots(roots)
        rep = solve_parallel(p)
        for e in rep.roots:
            assert e.residual <= 1e-10 * p.residual_scale(e.root)


def test_solve_single_modes(cubic_a):
    rep = solve_single(cubic_a)
    assert rep.mode == "single" and rep.complete
    assert rep.vieta is None
    assert len(rep.roots) == 1
    assert min(abs(rep.roots[0].root - g) for g in CUBIC_A_ROOTS) < 1e-8


def test_incomplete_raises_with_report(cubic_a):
    with pytest.raises(IncompleteError) as exc_info:
        solve_parallel(cubic_a, TrackerOptions(max_steps=2))
    rep = exc_info.value.report
    assert not rep.complete
    assert rep.degree == 3
