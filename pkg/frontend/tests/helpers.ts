// Shared constants and stubs for the test suite. Integration tests talk to
// a real service instance spawned by globalSetup on this port.

import { Ctx2D } from "../src/render";

export const SERVICE_PORT = 8799;
export const SERVICE_URL = `http://127.0.0.1:${SERVICE_PORT}`;

export const Z2_MINUS_1 = { coeffs: [[-1, 0], [0, 0], [1, 0]] as [number, number][] };

// the reference cubic with roots 1.6(1+i), 1.7(-1+i), 1.5(-1-i), coefficients
// expanded once (scaled so the constant term is -1)
export const REF_CUBIC = {
    coeffs: [
        [-1.0, 0.0],
        [-0.31495098039215685, -0.2732843137254903],
        [-0.012254901960784326, -0.20833333333333331],
        [0.061274509803921566, -0.061274509803921566],
    ] as [number, number][],
};
export const REF_CUBIC_ROOTS: [number, number][] = [
    [1.6, 1.6],
    [-1.7, 1.7],
    [-1.5, -1.5],
];

// a 2D-context stand-in that counts path fills/strokes so tests can verify
// how many markers actually got rendered
export class RecordingCtx implements Ctx2D {
    fillStyle: string | CanvasGradient | CanvasPattern = "";
    strokeStyle: string | CanvasGradient | CanvasPattern = "";
    lineWidth = 1;
    font = "";
    calls: string[] = [];
    clearRect() {
        this.calls.push("clearRect");
    }
    beginPath() {
        this.calls.push("beginPath");
    }
    moveTo() {
        this.calls.push("moveTo");
    }
    lineTo() {
        this.calls.push("lineTo");
    }
    arc() {
        this.calls.push("arc");
    }
    closePath() {
        this.calls.push("closePath");
    }
    stroke() {
        this.calls.push("stroke");
    }
    fill() {
        this.calls.push("fill");
    }
    fillText() {
        this.calls.push("fillText");
    }
}
