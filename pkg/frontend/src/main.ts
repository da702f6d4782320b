// DOM wiring: one polynomial input, a log-scaled radius slider, two linked
// canvas panes, steering buttons and a rotation control. All mathematics
// comes from the service; this file only schedules requests and draws.

import { ServiceClient, ServiceError } from "./api";
import { degreeOf, parsePolynomialInput, ParseError } from "./parse";
import { drawImagePane, drawPreimagePane } from "./render";
import {
    advancePlayhead,
    formatEvent,
    initialViewState,
    markersFromCensus,
    nearestCrossing,
    radiusToSlider,
    recordAtPlayhead,
    rotateCoeffs,
    sliderBounds,
    sliderToRadius,
    ViewState,
} from "./state";
import { isEventLine, Pair, PolyDocument, TrackEvent } from "./types";

const client = new ServiceClient("");
const state: ViewState = initialViewState();
let rootOverlays: Pair[] = [];

const $ = <T extends HTMLElement>(id: string): T => {
    const el = document.getElementById(id);
    if (!el) throw new Error(`missing element #${id}`);
    return el as T;
};

const polyInput = $<HTMLInputElement>("poly-input");
const slider = $<HTMLInputElement>("r-slider");
const rReadout = $<HTMLSpanElement>("r-readout");
const message = $<HTMLDivElement>("message");
const eventBox = $<HTMLDivElement>("event-box");
const preimageCanvas = $<HTMLCanvasElement>("preimage-pane");
const imageCanvas = $<HTMLCanvasElement>("image-pane");
const nuReadout = $<HTMLSpanElement>("nu-readout");

function rotatedPoly(): PolyDocument | null {
    if (!state.poly) return null;
    if (state.nu === 0) return state.poly;
    return { coeffs: rotateCoeffs(state.poly.coeffs, state.nu), label: state.poly.label };
}

// ---------------------------------------------------------------- census

let censusAbort: AbortController | null = null;
let censusTimer: ReturnType<typeof setTimeout> | null = null;

function requestCensusDebounced() {
    if (censusTimer) clearTimeout(censusTimer);
    censusTimer = setTimeout(requestCensus, 120);
}

async function requestCensus() {
    const poly = rotatedPoly();
    if (!poly) return;
    censusAbort?.abort(); // superseded requests are cancelled
    const abort = new AbortController();
    censusAbort = abort;
    const requestedR = state.r;
    try {
        const resp = await client.curve(poly, requestedR, undefined, abort.signal);
        if (state.r !== requestedR) return; // stale: a newer request is in flight
        state.census = resp.crossings;
        if (state.selected !== null && state.selected >= state.census.length) {
            state.selected = null;
        }
        draw(resp.points);
        message.textContent = `${resp.crossings.length} crossings at r = ${requestedR.toPrecision(5)}`;
    } catch (err) {
        if (abort.signal.aborted) return;
        message.textContent = `service error: ${err instanceof Error ? err.message : err}`;
    }
}

let lastCurve: Pair[] = [];

function draw(curve?: Pair[]) {
    if (curve) lastCurve = curve;
    const markers = markersFromCensus(state.census);
    drawImagePane(
        imageCanvas.getContext("2d")!,
        imageCanvas.width,
        imageCanvas.height,
        lastCurve,
        markers,
        state.trajectory,
        state.playhead,
    );
    drawPreimagePane(
        preimageCanvas.getContext("2d")!,
        preimageCanvas.width,
        preimageCanvas.height,
        state.r,
        markers,
        state.trajectory,
        state.playhead,
        rootOverlays,
    );
}

// ---------------------------------------------------------------- input

function applyPolynomial() {
    try {
        const doc = parsePolynomialInput(polyInput.value);
        if (degreeOf(doc) < 1) {
            message.textContent = "degree must be >= 1";
            return;
        }
        state.poly = doc;
        state.nu = 0;
        nuReadout.textContent = "0.00";
        state.bounds = sliderBounds(doc);
        state.r = Math.min(Math.max(state.r, state.bounds.rMin), state.bounds.rMax);
        state.trajectory = [];
        state.selected = null;
        rootOverlays = [];
        eventBox.textContent = "";
        syncSlider();
        requestCensus();
    } catch (err) {
        if (err instanceof ParseError) {
            message.textContent = err.message;
        } else {
            throw err;
        }
    }
}

function syncSlider() {
    slider.value = String(Math.round(radiusToSlider(state.r, state.bounds) * 1000));
    rReadout.textContent = state.r.toPrecision(5);
}

slider.addEventListener("input", () => {
    state.r = sliderToRadius(Number(slider.value) / 1000, state.bounds);
    rReadout.textContent = state.r.toPrecision(5);
    requestCensusDebounced();
});

polyInput.addEventListener("change", applyPolynomial);
$<HTMLButtonElement>("apply-btn").addEventListener("click", applyPolynomial);

// click a marker in the image pane to select its crossing
imageCanvas.addEventListener("click", (ev) => {
    if (state.census.length === 0) return;
    // selection by nearest marker x: project the click back through the pane
    const rect = imageCanvas.getBoundingClientRect();
    const fx = (ev.clientX - rect.left) / rect.width;
    const xs = state.census.map((c) => c.x);
    const xMin = Math.min(...xs, 0);
    const xMax = Math.max(...xs, 0);
    const clickX = xMin + fx * (xMax - xMin);
    let best = 0;
    state.census.forEach((c, i) => {
        if (Math.abs(c.x - clickX) < Math.abs(state.census[best].x - clickX)) best = i;
    });
    state.selected = best;
    message.textContent =
        `selected ${state.census[best].kind}-crossing at theta = ` +
        state.census[best].theta.toFixed(4);
});

// ---------------------------------------------------------------- steering

let trackAbort: AbortController | null = null;
let animating = false;

async function steer(mode: "rightward" | "leftward") {
    const poly = rotatedPoly();
    if (!poly) return;
    let idx = state.selected;
    if (idx === null) idx = nearestCrossing(state.census, 0.0);
    if (idx === null) {
        message.textContent = "no crossing to steer";
        return;
    }
    const start = state.census[idx];
    if (start.kind === "tangent") {
        message.textContent = "cannot steer a tangent crossing; nudge r first";
        return;
    }
    trackAbort?.abort(); // at most one in-flight track stream
    const abort = new AbortController();
    trackAbort = abort;
    state.trajectory = [];
    state.playhead = 0;
    state.playDirection = 1;
    eventBox.textContent = "tracking...";
    let terminal: TrackEvent | null = null;
    try {
        for await (const line of client.track(
            poly,
            { r: start.r, theta: start.theta },
            mode,
            abort.signal,
        )) {
            if (isEventLine(line)) {
                terminal = line.event;
            } else {
                state.trajectory.push(line);
            }
        }
    } catch (err) {
        if (!abort.signal.aborted) {
            eventBox.textContent =
                err instanceof ServiceError ? err.message : `stream failed: ${err}`;
        }
        return;
    }
    describeEvent(terminal);
    startAnimation();
}

function describeEvent(ev: TrackEvent | null) {
    eventBox.textContent = formatEvent(ev);
    if (ev && ev.type === "root_found") {
        rootOverlays.push(ev.root);
    }
}

function startAnimation() {
    if (animating) return;
    animating = true;
    let last = performance.now();
    const tick = (now: number) => {
        const dt = (now - last) / 1000;
        last = now;
        state.playhead = advancePlayhead(state, dt);
        const rec = recordAtPlayhead(state.trajectory, state.playhead);
        if (rec) {
            state.r = rec.r; // the slider follows the animated radius
            syncSlider();
        }
        draw();
        const span = state.trajectory.length - 1;
        const done =
            span <= 0 ||
            (state.playDirection > 0 ? state.playhead >= span : state.playhead <= 0);
        if (!done) {
            requestAnimationFrame(tick);
        } else {
            animating = false;
            requestCensus(); // settle the census at the final radius
        }
    };
    requestAnimationFrame(tick);
}

$<HTMLButtonElement>("follow-right").addEventListener("click", () => steer("rightward"));
$<HTMLButtonElement>("follow-left").addEventListener("click", () => steer("leftward"));
$<HTMLButtonElement>("reverse-btn").addEventListener("click", () => {
    state.playDirection = state.playDirection === 1 ? -1 : 1;
    startAnimation();
});

// ---------------------------------------------------------------- rotation

function applyRotation(delta: number) {
    state.nu += delta;
    nuReadout.textContent = state.nu.toFixed(2);
    state.trajectory = [];
    // root overlays stay put: rotation does not move roots
    requestCensus();
}

$<HTMLButtonElement>("nu-plus").addEventListener("click", () => applyRotation(0.05));
$<HTMLButtonElement>("nu-minus").addEventListener("click", () => applyRotation(-0.05));

// ---------------------------------------------------------------- solve all

$<HTMLButtonElement>("solve-btn").addEventListener("click", async () => {
    const poly = rotatedPoly();
    if (!poly) return;
    try {
        const rep = await client.solve(poly);
        rootOverlays = rep.roots.map((e) => e.root);
        const lines = rep.roots.map(
            (e) =>
                `${e.root[0].toPrecision(8)} ${e.root[1] >= 0 ? "+" : "-"} ` +
                `${Math.abs(e.root[1]).toPrecision(8)}i  x${e.multiplicity}  ` +
                `|f| = ${e.residual.toExponential(2)}`,
        );
        eventBox.textContent = (rep.complete ? "all roots:\n" : "PARTIAL:\n") + lines.join("\n");
        draw();
    } catch (err) {
        eventBox.textContent = `solve failed: ${err instanceof Error ? err.message : err}`;
    }
});

// ---------------------------------------------------------------- boot

polyInput.value = "-1, 0, 1";
applyPolynomial();
client.health().then((ok) => {
    if (!ok) {
        message.textContent =
            "service unreachable: start it with `polycross serve` and reload " +
            "(or serve this page from the same origin)";
    }
});
