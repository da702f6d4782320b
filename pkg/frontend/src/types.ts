// Wire types mirroring the service's /v1 payloads. Complex numbers travel
// as [re, im] pairs; polynomial coefficients ascend in power.

export type Pair = [number, number];

export interface PolyDocument {
    coeffs: Pair[];
    label?: string;
}

export type CrossingKind = "up" | "down" | "tangent";

export interface CrossingDto {
    r: number;
    theta: number;
    x: number;
    kind: CrossingKind;
}

export interface CurveResponse {
    r: number;
    points: Pair[];
    crossings: CrossingDto[];
}

export interface TrackRecord {
    r: number;
    theta: number;
    x: number;
    param: "r" | "theta";
    abs_f: number;
}

export type TrackEvent =
    | { type: "root_found"; root: Pair; residual?: number }
    | { type: "critical_point"; location: Pair }
    | { type: "boundary_reached"; r_limit: number }
    | { type: "step_limit" };

export interface RootEstimateDto {
    root: Pair;
    residual: number;
    multiplicity: number;
}

export interface SolveResponse {
    mode: string;
    degree: number;
    complete: boolean;
    label: string | null;
    roots: RootEstimateDto[];
    vieta: { sum_error: number; product_error: number } | null;
}

export type TrackLine = TrackRecord | { event: TrackEvent };

export function isEventLine(line: TrackLine): line is { event: TrackEvent } {
    return "event" in line;
}
