// Parse the polynomial input field. Accepted forms, ascending powers:
//   "-1, 0, 1"                      real coefficients
//   "-1, 0, 1+2i"                   a+bi entries
//   "[[-1,0],[0,0],[1,0]]"          explicit [re, im] pairs (the wire form)

import { Pair, PolyDocument } from "./types";

export class ParseError extends Error {}

function parseComplexEntry(text: string): Pair {
    const t = text.trim().replace(/\s+/g, "");
    if (t === "") throw new ParseError("empty coefficient");
    if (t === "i") return [0, 1];
    if (t === "-i") return [0, -1];
    // a+bi / a-bi / bi / a
    const m = t.match(/^([+-]?\d*\.?\d+(?:[eE][+-]?\d+)?)?(?:([+-]\d*\.?\d*(?:[eE][+-]?\d+)?)?i)?$/);
    if (!m || (m[1] === undefined && m[2] === undefined && !t.endsWith("i"))) {
        throw new ParseError(`cannot parse coefficient "${text}"`);
    }
    if (t.endsWith("i")) {
        const imText = t.slice(0, -1);
        if (m[1] !== undefined && m[2] !== undefined) {
            const im = m[2] === "+" || m[2] === "-" ? `${m[2]}1` : m[2];
            return [Number(m[1]), Number(im)];
        }
        const im = imText === "" || imText === "+" ? 1 : imText === "-" ? -1 : Number(imText);
        if (Number.isNaN(im)) throw new ParseError(`cannot parse coefficient "${text}"`);
        return [0, im];
    }
    const re = Number(t);
    if (Number.isNaN(re)) throw new ParseError(`cannot parse coefficient "${text}"`);
    return [re, 0];
}

export function parsePolynomialInput(text: string): PolyDocument {
    const trimmed = text.trim();
    if (!trimmed) throw new ParseError("enter coefficients, ascending powers");
    if (trimmed.startsWith("[")) {
        let data: unknown;
        try {
            data = JSON.parse(trimmed);
        } catch (e) {
            throw new ParseError(`not valid JSON: ${e}`);
        }
        if (!Array.isArray(data) || data.length === 0) {
            throw new ParseError("expected a nonempty JSON array");
        }
        const coeffs: Pair[] = data.map((entry, i) => {
            if (typeof entry === "number") return [entry, 0];
            if (
                Array.isArray(entry) &&
                entry.length === 2 &&
                entry.every((v) => typeof v === "number" && Number.isFinite(v))
            ) {
                return [entry[0], entry[1]];
            }
            throw new ParseError(`coefficient ${i} must be a number or [re, im]`);
        });
        return { coeffs };
    }
    const coeffs = trimmed.split(",").map(parseComplexEntry);
    return { coeffs };
}

export function degreeOf(doc: PolyDocument): number {
    let last = 0;
    doc.coeffs.forEach(([re, im], i) => {
        if (Math.hypot(re, im) > 0) last = i;
    });
    return last;
}
