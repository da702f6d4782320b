// Canvas rendering of the two linked panes. Drawing goes through a small
// structural interface so tests can count marker draws with a recorder
// instead of a real 2D context.

import { Marker, markerStyle } from "./state";
import { Pair, TrackRecord } from "./types";

export interface Ctx2D {
    fillStyle: string | CanvasGradient | CanvasPattern;
    strokeStyle: string | CanvasGradient | CanvasPattern;
    lineWidth: number;
    font: string;
    clearRect(x: number, y: number, w: number, h: number): void;
    beginPath(): void;
    moveTo(x: number, y: number): void;
    lineTo(x: number, y: number): void;
    arc(x: number, y: number, r: number, a0: number, a1: number): void;
    closePath(): void;
    stroke(): void;
    fill(): void;
    fillText(text: string, x: number, y: number): void;
}

export interface Viewport {
    xMin: number;
    xMax: number;
    yMin: number;
    yMax: number;
}

export interface PaneStats {
    markersDrawn: number;
    curvePoints: number;
}

export function fitViewport(points: Pair[], padFrac = 0.12): Viewport {
    let xMin = Infinity,
        xMax = -Infinity,
        yMin = Infinity,
        yMax = -Infinity;
    for (const [x, y] of points) {
        xMin = Math.min(xMin, x);
        xMax = Math.max(xMax, x);
        yMin = Math.min(yMin, y);
        yMax = Math.max(yMax, y);
    }
    if (!isFinite(xMin)) return { xMin: -1, xMax: 1, yMin: -1, yMax: 1 };
    const spanX = Math.max(xMax - xMin, 1e-9);
    const spanY = Math.max(yMax - yMin, 1e-9);
    const span = Math.max(spanX, spanY);
    const cx = 0.5 * (xMin + xMax);
    const cy = 0.5 * (yMin + yMax);
    const half = 0.5 * span * (1 + padFrac);
    return { xMin: cx - half, xMax: cx + half, yMin: cy - half, yMax: cy + half };
}

function toScreen(
    v: Viewport,
    w: number,
    h: number,
): (x: number, y: number) => [number, number] {
    return (x, y) => [
        ((x - v.xMin) / (v.xMax - v.xMin)) * w,
        h - ((y - v.yMin) / (v.yMax - v.yMin)) * h,
    ];
}

function drawMarkerShape(
    ctx: Ctx2D,
    sx: number,
    sy: number,
    size: number,
    shape: "circle" | "diamond",
    filled: boolean,
): void {
    ctx.beginPath();
    if (shape === "circle") {
        ctx.arc(sx, sy, size, 0, 2 * Math.PI);
    } else {
        ctx.moveTo(sx, sy - size);
        ctx.lineTo(sx + size, sy);
        ctx.lineTo(sx, sy + size);
        ctx.lineTo(sx - size, sy);
        ctx.closePath();
    }
    if (filled) {
        ctx.fill();
    } else {
        ctx.stroke();
    }
}

// right pane: the image curve f(C_r), the real axis, and one marker per
// census crossing (solid = up, hollow = down, diamond = tangent); a crossing
// sitting on the origin gets an emphasis ring
export function drawImagePane(
    ctx: Ctx2D,
    w: number,
    h: number,
    curve: Pair[],
    markers: Marker[],
    trajectory: TrackRecord[] = [],
    playhead = 0,
): PaneStats {
    ctx.clearRect(0, 0, w, h);
    const view = fitViewport([...curve, ...markers.map((m) => [m.x, 0] as Pair)]);
    const s = toScreen(view, w, h);

    ctx.strokeStyle = "#cccccc";
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.moveTo(...s(view.xMin, 0));
    ctx.lineTo(...s(view.xMax, 0));
    ctx.stroke();

    ctx.strokeStyle = "#555555";
    ctx.beginPath();
    curve.forEach(([x, y], i) => {
        const [sx, sy] = s(x, y);
        if (i === 0) ctx.moveTo(sx, sy);
        else ctx.lineTo(sx, sy);
    });
    ctx.stroke();

    // origin cross-hair
    ctx.strokeStyle = "#2ca02c";
    const [ox, oy] = s(0, 0);
    ctx.beginPath();
    ctx.moveTo(ox - 5, oy);
    ctx.lineTo(ox + 5, oy);
    ctx.moveTo(ox, oy - 5);
    ctx.lineTo(ox, oy + 5);
    ctx.stroke();

    // played part of the trajectory in the image plane: (x, 0) marching
    if (trajectory.length > 1) {
        ctx.strokeStyle = "#ff7f0e";
        ctx.lineWidth = 2;
        ctx.beginPath();
        const upto = Math.min(Math.round(playhead), trajectory.length - 1);
        for (let i = 0; i <= upto; i++) {
            const [sx, sy] = s(trajectory[i].x, 0);
            if (i === 0) ctx.moveTo(sx, sy);
            else ctx.lineTo(sx, sy);
        }
        ctx.stroke();
    }

    let drawn = 0;
    for (const m of markers) {
        const st = markerStyle(m.kind);
        ctx.fillStyle = st.color;
        ctx.strokeStyle = st.color;
        ctx.lineWidth = 2;
        const [sx, sy] = s(m.x, 0);
        drawMarkerShape(ctx, sx, sy, 6, st.shape, st.filled);
        if (m.emphasized) {
            ctx.strokeStyle = "#000000";
            ctx.beginPath();
            ctx.arc(sx, sy, 10, 0, 2 * Math.PI);
            ctx.stroke();
        }
        drawn++;
    }
    return { markersDrawn: drawn, curvePoints: curve.length };
}

// left pane: the circle C_r, the preimages of the crossings at their angles,
// and the played part of the trajectory's preimage path
export function drawPreimagePane(
    ctx: Ctx2D,
    w: number,
    h: number,
    r: number,
    markers: Marker[],
    trajectory: TrackRecord[] = [],
    playhead = 0,
    rootOverlays: Pair[] = [],
): PaneStats {
    ctx.clearRect(0, 0, w, h);
    const rs = trajectory.map((t) => t.r);
    const extent = Math.max(r, ...rs, 1e-9);
    const view: Viewport = {
        xMin: -1.25 * extent,
        xMax: 1.25 * extent,
        yMin: -1.25 * extent,
        yMax: 1.25 * extent,
    };
    const s = toScreen(view, w, h);

    ctx.strokeStyle = "#cccccc";
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.moveTo(...s(view.xMin, 0));
    ctx.lineTo(...s(view.xMax, 0));
    ctx.stroke();

    ctx.strokeStyle = "#555555";
    ctx.beginPath();
    const [cx, cy] = s(0, 0);
    const [px] = s(r, 0);
    ctx.arc(cx, cy, Math.abs(px - cx), 0, 2 * Math.PI);
    ctx.stroke();

    if (trajectory.length > 1) {
        ctx.strokeStyle = "#ff7f0e";
        ctx.lineWidth = 2;
        ctx.beginPath();
        const upto = Math.min(Math.round(playhead), trajectory.length - 1);
        for (let i = 0; i <= upto; i++) {
            const t = trajectory[i];
            const [sx, sy] = s(t.r * Math.cos(t.theta), t.r * Math.sin(t.theta));
            if (i === 0) ctx.moveTo(sx, sy);
            else ctx.lineTo(sx, sy);
        }
        ctx.stroke();
    }

    let drawn = 0;
    for (const m of markers) {
        const st = markerStyle(m.kind);
        ctx.fillStyle = st.color;
        ctx.strokeStyle = st.color;
        ctx.lineWidth = 2;
        const [sx, sy] = s(r * Math.cos(m.theta), r * Math.sin(m.theta));
        drawMarkerShape(ctx, sx, sy, 6, st.shape, st.filled);
        if (m.emphasized) {
            // the preimage of a crossing sitting on 0 is (numerically) a root
            ctx.fillStyle = "#000000";
            ctx.beginPath();
            ctx.arc(sx, sy, 9, 0, 2 * Math.PI);
            ctx.fill();
        }
        drawn++;
    }

    ctx.fillStyle = "#000000";
    for (const [x, y] of rootOverlays) {
        const [sx, sy] = s(x, y);
        ctx.beginPath();
        ctx.arc(sx, sy, 4, 0, 2 * Math.PI);
        ctx.fill();
    }
    return { markersDrawn: drawn, curvePoints: 0 };
}
