"""All-roots solvers built on the crossing tracker.

The parallel mode seeds one track per large-radius axis crossing (at least N
upcrossings on the positive axis and N downcrossings on the negative axis
exist once the leading term dominates), follows every upcrossing leftward and
every downcrossing rightward toward the origin, and merges whatever roots the
tracks deliver. Not every track ends in a root; when the merged set is short,
the found roots are deflated out and the deflation mode finishes the job.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .geometry import Crossing, CrossingKind, find_crossings
from .poly import (
    DegreeZeroError,
    Polynomial,
    ZeroRoot,
    cauchy_bound,
    normalize,
    strip_zero_roots,
    synthetic_division,
)
from .tracker import (
    RootFound,
    TrackEvent,
    TrackerOptions,
    Trajectory,
    UnconvergedError,
    _single_root_attempts,
    newton_polish,
    track,
)


class CensusShortfallError(RuntimeError):
    """Large-radius census kept missing crossings after doubling the radius."""


class IncompleteError(RuntimeError):
    """Some roots are still missing after the fallback budget.

    Carries the partial report (with per-track diagnostics) as .report.
    """

    def __init__(self, message: str, report: "SolverReport"):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class RootEstimate:
    root: complex
    residual: float
    multiplicity: int


@dataclass(frozen=True)
class TrackOutcome:
    start: Crossing
    event: TrackEvent
    steps: int


@dataclass(frozen=True)
class VietaDiagnostics:
    """Residuals of the root/coefficient identities of the full root multiset."""

    sum_error: float
    product_error: float


@dataclass(frozen=True)
class SolverReport:
    mode: str
    degree: int
    roots: Tuple[RootEstimate, ...]
    tracks: Tuple[TrackOutcome, ...]
    vieta: Optional[VietaDiagnostics]
    complete: bool
    label: Optional[str] = None


def initial_crossings(
    p: Polynomial, samples: Optional[int] = None
) -> List[Crossing]:
    """Census of all crossings at r0 = 2 * Cauchy bound.

    Seeds the scan with the leading-term angles arg(a_N) + N*theta = 0 (mod pi)
    and asserts the census holds: at least N upcrossings at x > 0 and at least
    N downcrossings at x < 0. A shortfall doubles r0 (at most 6 times); a
    census containing a tangency nudges r0 off the degenerate radius.
    """
    n = p.degree
    if n < 1:
        raise DegreeZeroError("census needs degree >= 1")
    arg_lead = math.atan2(p.coeffs[-1].imag, p.coeffs[-1].real)
    seeds = [(k * math.pi - arg_lead) / n for k in range(2 * n)]
    r0 = 2.0 * cauchy_bound(p)
    last: List[Crossing] = []
    for _ in range(7):
        r_try = r0
        for _ in range(5):
            crossings = find_crossings(p, r_try, samples=samples, seed_angles=seeds)
            if not any(c.kind is CrossingKind.TANGENT for c in crossings):
                break
            r_try *= 1.007
        ups = sum(1 for c in crossings if c.kind is CrossingKind.UP and c.x > 0)
        downs = sum(1 for c in crossings if c.kind is CrossingKind.DOWN and c.x < 0)
        if ups >= n and downs >= n:
            return crossings
        last = crossings
        r0 *= 2.0
    raise CensusShortfallError(
        f"census still short at r={r0 / 2:g}: "
        f"{len(last)} crossings for degree {n}"
    )


def dedupe(roots: Sequence[complex], p: Polynomial) -> List[Tuple[complex, int]]:
    """Cluster near-identical root estimates and attribute multiplicities.

    Single linkage; the base radius is max(1e-7, 1e-7*|root|) but widens to
    the conditioning limit (noise)^(1/m) for estimates the derivative test
    marks as m-fold, since an m-fold root is only determined to that precision
    and its estimates legitimately scatter wider than any fixed radius. The
    cluster center is the residual-weighted mean; multiplicity is the cluster
    size capped by the derivative test and the remaining degree budget, so
    several tracks landing on one simple root still report multiplicity 1.
    """
    pts = [complex(z) for z in roots]
    if not pts:
        return []
    n = len(pts)
    m_hats = [_derivative_multiplicity(p, z) for z in pts]

    def link_radius(i: int, j: int) -> float:
        scale = max(1.0, abs(pts[i]), abs(pts[j]))
        base = 1e-7 * scale
        m = max(m_hats[i], m_hats[j])
        if m > 1:
            base = max(base, 1e-14 ** (1.0 / m) * scale)
        return max(1e-7, base)

    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(pts[i] - pts[j]) <= link_radius(i, j):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj

    clusters: dict = {}
    for i in range(n):
        clusters.setdefault(find(i), []).append(pts[i])

    out: List[Tuple[complex, int, float]] = []
    for members in clusters.values():
        weights = [1.0 / (abs(p.eval(z)) + 1e-300) for z in members]
        total = sum(weights)
        center = sum(w * z for w, z in zip(weights, members)) / total
        center = newton_polish(p, center, 8)
        m_hat = _derivative_multiplicity(p, center)
        mult = min(len(members), m_hat)
        out.append((center, mult, abs(p.eval(center))))

    out.sort(key=lambda t: t[2])  # most trustworthy clusters claim budget first
    budget = p.degree
    result: List[Tuple[complex, int]] = []
    for center, mult, _ in out:
        take = min(mult, budget)
        if take >= 1:
            result.append((center, take))
            budget -= take
    result.sort(key=lambda t: (t[0].real, t[0].imag))
    return result


def _derivative_multiplicity(p: Polynomial, z: complex) -> int:
    """Largest multiplicity hypothesis the derivative values support at z.

    An m-fold root known to the floating noise floor eps sits within
    eps^(1/m) of the true root, where the j-th derivative still measures
    ~ eps^((m-j)/m) relative to its own scale. Each hypothesis m is confirmed
    only if every lower derivative is small at that m-dependent level, which
    keeps a simple root with a merely nearby neighbor from passing as double.
    """
    eps = 1e-13
    slack = 100.0
    rels = []
    q = p
    for _ in range(1, p.degree + 1):
        q = q.derivative()
        rels.append(abs(q.eval(z)) / q.residual_scale(z))
        if q.degree == 0:
            break
    m_hat = 1
    for m in range(2, len(rels) + 2):
        if m - 1 > len(rels):
            break
        ok = all(
            rels[j - 1] <= slack * eps ** ((m - j) / m) for j in range(1, m)
        )
        if ok:
            m_hat = m
        else:
            break
    return min(m_hat, p.degree)


def _vieta(p: Polynomial, roots: Sequence[Tuple[complex, int]]) -> VietaDiagnostics:
    cs = p.coeffs
    n = p.degree
    expected_sum = -cs[n - 1] / cs[n]
    expected_prod = ((-1) ** n) * cs[0] / cs[n]
    got_sum = sum(z * m for z, m in roots)
    got_prod = 1.0 + 0j
    for z, m in roots:
        got_prod *= z ** m
    return VietaDiagnostics(
        sum_error=abs(got_sum - expected_sum),
        product_error=abs(got_prod - expected_prod),
    )


def _run_tracks(
    p: Polynomial,
    crossings: Sequence[Crossing],
    opts: TrackerOptions,
    workers: Optional[int],
) -> List[Tuple[Crossing, Trajectory]]:
    """One track per crossing: upcrossings head left, downcrossings right.

    Results are merged by index, so the outcome is identical however the
    tasks are scheduled.
    """

    def run_one(c: Crossing) -> Trajectory:
        mode = "leftward" if c.kind is CrossingKind.UP else "rightward"
        return track(p, c, mode, opts)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            trajectories = list(pool.map(run_one, crossings))
    else:
        trajectories = [run_one(c) for c in crossings]
    return list(zip(crossings, trajectories))


def _polish_and_filter(
    p: Polynomial, candidates: Sequence[complex], opts: TrackerOptions
) -> List[complex]:
    good = []
    for z in candidates:
        z = newton_polish(p, z, opts.newton_iters)
        if abs(p.eval(z)) <= 100 * opts.residual_tol * p.residual_scale(z):
            good.append(z)
    return good


def _assemble(
    original: Polynomial,
    mode: str,
    roots: List[Tuple[complex, int]],
    outcomes: List[TrackOutcome],
    opts: TrackerOptions,
    label: Optional[str],
) -> SolverReport:
    estimates = tuple(
        RootEstimate(root=z, residual=abs(original.eval(z)), multiplicity=m)
        for z, m in roots
    )
    total = sum(e.multiplicity for e in estimates)
    residual_ok = all(
        e.residual <= 100 * opts.residual_tol * original.residual_scale(e.root)
        for e in estimates
    )
    vieta = _vieta(original, roots) if total == original.degree else None
    # completeness demands the root/coefficient identities too: per-root
    # residuals cannot see a missing root masked by an inflated multiplicity.
    # An m-fold root is only determined to eps^(1/m), so the identities carry
    # a multiplicity-aware slack on top of the 1e-8 simple-root tolerance.
    vieta_ok = True
    if vieta is not None:
        cs = original.coeffs
        n = original.degree
        cond = sum(
            m * 1e-13 ** (1.0 / m) * max(1.0, abs(z)) for z, m in roots if m > 1
        )
        sum_tol = 1e-8 * (1.0 + abs(cs[n - 1] / cs[n])) + cond
        vieta_ok = vieta.sum_error < sum_tol
        prod_scale = abs(cs[0] / cs[n])
        if math.isfinite(vieta.product_error) and math.isfinite(prod_scale):
            prod_tol = (1e-8 + cond) * (1.0 + prod_scale)
            vieta_ok = vieta_ok and vieta.product_error < prod_tol
    complete = total == original.degree and residual_ok and vieta_ok
    return SolverReport(
        mode=mode,
        degree=original.degree,
        roots=estimates,
        tracks=tuple(outcomes),
        vieta=vieta,
        complete=complete,
        label=label,
    )


def solve_parallel(
    p: Polynomial,
    opts: Optional[TrackerOptions] = None,
    workers: Optional[int] = None,
    label: Optional[str] = None,
    trajectory_sink: Optional[List[Tuple[Polynomial, Crossing, Trajectory]]] = None,
) -> SolverReport:
    """Find all roots from the 2N large-radius crossings tracked inward.

    Roots are polished against the original input; missing roots after the
    track sweep are recovered by deflating the found ones and running the
    deflation solver on the quotient. Raises IncompleteError (carrying the
    partial report) only if that fallback also comes up short.
    trajectory_sink, when given, receives (tracked polynomial, start,
    trajectory) for every track run.
    """
    if p.degree < 1:
        raise DegreeZeroError("solver needs degree >= 1")
    o = opts or TrackerOptions()
    nonzero, zero_mult = strip_zero_roots(p)
    found: List[Tuple[complex, int]] = []
    outcomes: List[TrackOutcome] = []
    if zero_mult:
        found.append((0j, zero_mult))
    if nonzero.degree >= 1:
        norm = normalize(nonzero)
        assert not isinstance(norm, ZeroRoot)
        crossings = initial_crossings(norm)
        results = _run_tracks(norm, crossings, o, workers)
        if trajectory_sink is not None:
            trajectory_sink.extend((norm, c, t) for c, t in results)
        outcomes = [
            TrackOutcome(start=c, event=t.event, steps=len(t.states))
            for c, t in results
        ]
        candidates = [
            t.event.root for _, t in results if isinstance(t.event, RootFound)
        ]
        polished = _polish_and_filter(p, candidates, o)
        found.extend(dedupe(polished, nonzero))
    report = _assemble(p, "parallel", found, outcomes, o, label)
    if report.complete:
        return report

    # fallback: claimed multiplicities may be part of what went wrong, so
    # deflate one copy of each distinct found root and let the deflation
    # solver recover whatever is genuinely left (including extra copies of
    # true multiple roots); the final dedupe recounts from raw copies
    quotient = nonzero
    distinct = [z for z, _m in found if z != 0j]
    for z in distinct:
        if quotient.degree < 1:
            break
        quotient, _rem = synthetic_division(quotient, z)
    if quotient.degree >= 1:
        try:
            fallback = solve_deflation(quotient, o, trajectory_sink=trajectory_sink)
            extra = [(e.root, e.multiplicity) for e in fallback.roots]
            outcomes.extend(fallback.tracks)
        except (IncompleteError, UnconvergedError):
            extra = []
        merged = list(distinct)
        merged += [newton_polish(p, z, o.newton_iters) for z, m in extra for _ in range(m)]
        refound = dedupe(_polish_and_filter(p, merged, o), nonzero)
        if zero_mult:
            refound.append((0j, zero_mult))
        report = _assemble(p, "parallel", refound, outcomes, o, label)
    if not report.complete:
        raise IncompleteError(
            f"found multiplicity {sum(e.multiplicity for e in report.roots)} "
            f"of degree {p.degree}",
            report,
        )
    return report


def solve_deflation(
    p: Polynomial,
    opts: Optional[TrackerOptions] = None,
    label: Optional[str] = None,
    trajectory_sink: Optional[List[Tuple[Polynomial, Crossing, Trajectory]]] = None,
) -> SolverReport:
    """Find roots one at a time, deflating after each.

    Every root estimate is polished against the original polynomial, never the
    running quotient, so deflation rounding does not accumulate into the
    reported roots.
    """
    if p.degree < 1:
        raise DegreeZeroError("solver needs degree >= 1")
    o = opts or TrackerOptions()
    nonzero, zero_mult = strip_zero_roots(p)
    raw: List[complex] = []
    outcomes: List[TrackOutcome] = []
    current = nonzero
    while current.degree >= 1:
        norm = normalize(current)
        if isinstance(norm, ZeroRoot):
            # deflation noise produced a tiny constant term; 0 is not a root
            # of the original, so stop rather than manufacture one
            break
        root, attempts = _single_root_attempts(norm, o)
        for _nu, q, start, traj in attempts:
            if start is not None and traj is not None:
                outcomes.append(
                    TrackOutcome(start=start, event=traj.event, steps=len(traj.states))
                )
                if trajectory_sink is not None:
                    trajectory_sink.append((q, start, traj))
        if root is None:
            raise UnconvergedError(
                f"single-root search failed at degree {current.degree}",
                attempts,
            )
        root = newton_polish(p, root, o.newton_iters)
        raw.append(root)
        current, _rem = synthetic_division(current, root)
    roots = dedupe(_polish_and_filter(p, raw, o), nonzero)
    if zero_mult:
        roots.append((0j, zero_mult))
    report = _assemble(p, "deflation", roots, outcomes, o, label)
    if not report.complete:
        raise IncompleteError(
            f"deflation recovered multiplicity "
            f"{sum(e.multiplicity for e in report.roots)} of degree {p.degree}",
            report,
        )
    return report


def solve_single(
    p: Polynomial,
    opts: Optional[TrackerOptions] = None,
    label: Optional[str] = None,
) -> SolverReport:
    """One root only, reported in the same document shape as the full solves."""
    if p.degree < 1:
        raise DegreeZeroError("solver needs degree >= 1")
    o = opts or TrackerOptions()
    norm = normalize(p)
    outcomes: List[TrackOutcome] = []
    if isinstance(norm, ZeroRoot):
        root: Optional[complex] = 0j
    else:
        root, attempts = _single_root_attempts(norm, o)
        for _nu, _q, start, traj in attempts:
            if start is not None and traj is not None:
                outcomes.append(
                    TrackOutcome(start=start, event=traj.event, steps=len(traj.states))
                )
    if root is None:
        raise UnconvergedError("single-root search failed", outcomes)
    root = newton_polish(p, root, o.newton_iters)
    est = RootEstimate(
        root=root,
        residual=abs(p.eval(root)),
        multiplicity=_derivative_multiplicity(p, root),
    )
    ok = est.residual <= 100 * o.residual_tol * p.residual_scale(root)
    return SolverReport(
        mode="single",
        degree=p.degree,
        roots=(est,),
        tracks=tuple(outcomes),
        vieta=None,
        complete=ok,
        label=label,
    )
