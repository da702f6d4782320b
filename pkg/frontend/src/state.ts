// Pure view-model logic: slider geometry, marker derivation, selection and
// playback. Everything about f itself comes from the service; the only
// client-side arithmetic is on the user's own coefficient list (slider
// bounds, rotation of coefficients) and on screen coordinates.

import {
    CrossingDto,
    CrossingKind,
    Pair,
    PolyDocument,
    TrackEvent,
    TrackRecord,
} from "./types";

export interface SliderBounds {
    rMin: number;
    rMax: number;
}

export interface Marker {
    x: number; // location on the real axis of the image plane
    theta: number; // parameter angle (preimage is r * e^{i theta})
    kind: CrossingKind;
    emphasized: boolean; // crossing sitting on the origin, i.e. a root
}

export interface MarkerStyle {
    shape: "circle" | "diamond";
    filled: boolean;
    color: string;
}

export interface ViewState {
    poly: PolyDocument | null;
    bounds: SliderBounds;
    r: number;
    census: CrossingDto[];
    selected: number | null; // index into census
    trajectory: TrackRecord[];
    lastEventText: string;
    nu: number; // accumulated rotation angle applied to the polynomial
    playhead: number; // fractional index into trajectory
    playDirection: 1 | -1;
    message: string;
}

export function initialViewState(): ViewState {
    return {
        poly: null,
        bounds: { rMin: 0.1, rMax: 10 },
        r: 1.0,
        census: [],
        selected: null,
        trajectory: [],
        lastEventText: "",
        nu: 0,
        playhead: 0,
        playDirection: 1,
        message: "enter a polynomial to begin",
    };
}

// ---------------------------------------------------------------- slider

export function cauchyBound(coeffs: Pair[]): number {
    const lead = Math.hypot(...coeffs[coeffs.length - 1]);
    let worst = 0;
    for (let i = 0; i < coeffs.length - 1; i++) {
        worst = Math.max(worst, Math.hypot(...coeffs[i]));
    }
    return 1 + worst / lead;
}

export function smallRadius(coeffs: Pair[]): number {
    // halving search: largest r in {1, 1/2, ...} with sum_{n>=1} |a_n| r^n < 0.5
    let r = 1.0;
    for (let k = 0; k < 200; k++) {
        let s = 0;
        let rp = 1;
        for (let n = 1; n < coeffs.length; n++) {
            rp *= r;
            s += Math.hypot(...coeffs[n]) * rp;
        }
        if (s < 0.5) return r;
        r /= 2;
    }
    return r;
}

export function sliderBounds(poly: PolyDocument): SliderBounds {
    return {
        rMin: smallRadius(poly.coeffs),
        rMax: 4 * cauchyBound(poly.coeffs),
    };
}

// log-scaled slider: interesting crossing births cluster multiplicatively
export function sliderToRadius(t: number, b: SliderBounds): number {
    const clamped = Math.min(1, Math.max(0, t));
    return b.rMin * Math.pow(b.rMax / b.rMin, clamped);
}

export function radiusToSlider(r: number, b: SliderBounds): number {
    const clamped = Math.min(b.rMax, Math.max(b.rMin, r));
    return Math.log(clamped / b.rMin) / Math.log(b.rMax / b.rMin);
}

// ---------------------------------------------------------------- markers

export const ROOT_EMPHASIS_TOL = 1e-6;

export function markersFromCensus(
    census: CrossingDto[],
    emphasisTol: number = ROOT_EMPHASIS_TOL,
): Marker[] {
    return census.map((c) => ({
        x: c.x,
        theta: c.theta,
        kind: c.kind,
        emphasized: Math.abs(c.x) < emphasisTol * (1 + Math.abs(c.x)),
    }));
}

export function markerStyle(kind: CrossingKind): MarkerStyle {
    switch (kind) {
        case "up":
            return { shape: "circle", filled: true, color: "#1f77b4" };
        case "down":
            return { shape: "circle", filled: false, color: "#d62728" };
        case "tangent":
            return { shape: "diamond", filled: true, color: "#9467bd" };
    }
}

export function nearestCrossing(census: CrossingDto[], theta: number): number | null {
    if (census.length === 0) return null;
    const twoPi = 2 * Math.PI;
    let best = 0;
    let bestDist = Infinity;
    census.forEach((c, i) => {
        const d = Math.abs((((c.theta - theta) % twoPi) + twoPi) % twoPi);
        const dist = Math.min(d, twoPi - d);
        if (dist < bestDist) {
            bestDist = dist;
            best = i;
        }
    });
    return best;
}

// ---------------------------------------------------------------- rotation

export function rotateCoeffs(coeffs: Pair[], nu: number): Pair[] {
    // multiply every coefficient by e^{-i nu}; the root set is unchanged
    const c = Math.cos(-nu);
    const s = Math.sin(-nu);
    return coeffs.map(([re, im]) => [re * c - im * s, re * s + im * c]);
}

// ---------------------------------------------------------------- playback

export const PLAYBACK_RECORDS_PER_SECOND = 120;

// advance the fractional playhead by wall-clock time, independent of how the
// integrator chose its steps
export function advancePlayhead(
    state: Pick<ViewState, "playhead" | "playDirection" | "trajectory">,
    dtSeconds: number,
): number {
    const span = state.trajectory.length - 1;
    if (span <= 0) return 0;
    const moved =
        state.playhead + state.playDirection * dtSeconds * PLAYBACK_RECORDS_PER_SECOND;
    return Math.min(span, Math.max(0, moved));
}

export function recordAtPlayhead(
    trajectory: TrackRecord[],
    playhead: number,
): TrackRecord | null {
    if (trajectory.length === 0) return null;
    const i = Math.min(trajectory.length - 1, Math.max(0, Math.round(playhead)));
    return trajectory[i];
}

// the radii visited so far, for asserting the fold reversal is visible
export function radiusExtent(trajectory: TrackRecord[], upto: number): [number, number] {
    let lo = Infinity;
    let hi = -Infinity;
    for (let i = 0; i <= Math.min(upto, trajectory.length - 1); i++) {
        lo = Math.min(lo, trajectory[i].r);
        hi = Math.max(hi, trajectory[i].r);
    }
    return [lo, hi];
}

// ---------------------------------------------------------------- display

export function formatEvent(ev: TrackEvent | null): string {
    if (!ev) return "stream ended without a terminal event";
    switch (ev.type) {
        case "root_found": {
            const [re, im] = ev.root;
            const res =
                ev.residual !== undefined ? ev.residual.toExponential(2) : "?";
            return (
                `root found: ${re.toPrecision(10)} ${im >= 0 ? "+" : "-"} ` +
                `${Math.abs(im).toPrecision(10)}i   (residual ${res})`
            );
        }
        case "critical_point":
            return (
                "critical point: f' vanishes on this path. Rotate the " +
                "polynomial (nu buttons) and steer again."
            );
        case "boundary_reached":
            return `track left the working annulus at r = ${ev.r_limit.toPrecision(4)}`;
        case "step_limit":
            return "step budget exhausted; try a different crossing or rotate";
    }
}
