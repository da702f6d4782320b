// Thin client for the /v1 service. The frontend never computes f: every
// curve point, crossing and trajectory record comes from these calls.

import {
    CurveResponse,
    PolyDocument,
    SolveResponse,
    TrackLine,
} from "./types";

export class ServiceError extends Error {
    constructor(readonly status: number, message: string) {
        super(message);
    }
}

async function postJson<T>(
    url: string,
    body: unknown,
    signal?: AbortSignal,
): Promise<T> {
    const resp = await fetch(url, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
        signal,
    });
    if (!resp.ok) {
        const text = await resp.text();
        throw new ServiceError(resp.status, `${resp.status}: ${text}`);
    }
    return (await resp.json()) as T;
}

export class ServiceClient {
    constructor(readonly base: string) {}

    async health(): Promise<boolean> {
        try {
            const resp = await fetch(`${this.base}/v1/health`);
            return resp.ok;
        } catch {
            return false;
        }
    }

    curve(
        poly: PolyDocument,
        r: number,
        samples?: number,
        signal?: AbortSignal,
    ): Promise<CurveResponse> {
        return postJson(`${this.base}/v1/curve`, { poly, r, samples }, signal);
    }

    solve(
        poly: PolyDocument,
        mode: "parallel" | "deflation" | "single" = "parallel",
    ): Promise<SolveResponse> {
        return postJson(`${this.base}/v1/solve`, { poly, mode });
    }

    // newline-delimited JSON stream of trajectory records closed by exactly
    // one event record
    async *track(
        poly: PolyDocument,
        start: { r: number; theta: number },
        mode: "rightward" | "leftward",
        signal?: AbortSignal,
    ): AsyncGenerator<TrackLine> {
        const resp = await fetch(`${this.base}/v1/track`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ poly, start, mode }),
            signal,
        });
        if (!resp.ok || resp.body === null) {
            const text = await resp.text();
            throw new ServiceError(resp.status, `${resp.status}: ${text}`);
        }
        const reader = resp.body.getReader();
        const decoder = new TextDecoder();
        let buffered = "";
        for (;;) {
            const { done, value } = await reader.read();
            if (done) break;
            buffered += decoder.decode(value, { stream: true });
            let nl;
            while ((nl = buffered.indexOf("\n")) >= 0) {
                const line = buffered.slice(0, nl).trim();
                buffered = buffered.slice(nl + 1);
                if (line) yield JSON.parse(line) as TrackLine;
            }
        }
        const tail = buffered.trim();
        if (tail) yield JSON.parse(tail) as TrackLine;
    }
}
