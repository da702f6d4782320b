// Spawn the real root-finding service for the integration tests and tear it
// down afterwards. The frontend is a pure view over that service, so its
// tests run against the genuine article, not fixtures.

import { spawn, ChildProcess } from "node:child_process";
import { SERVICE_PORT, SERVICE_URL } from "./helpers";

let proc: ChildProcess | null = null;

async function waitForHealth(timeoutMs: number): Promise<void> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
        try {
            const resp = await fetch(`${SERVICE_URL}/v1/health`);
            if (resp.ok) return;
        } catch {
            // not up yet
        }
        if (Date.now() > deadline) {
            throw new Error(
                `service did not come up on port ${SERVICE_PORT} within ${timeoutMs}ms`,
            );
        }
        await new Promise((r) => setTimeout(r, 250));
    }
}

export default async function setup(): Promise<() => void> {
    proc = spawn(
        "python3",
        ["-m", "polycross.cli", "serve", "--port", String(SERVICE_PORT)],
        { stdio: ["ignore", "pipe", "pipe"] },
    );
    proc.on("error", (err) => {
        console.error("failed to spawn the service:", err);
    });
    await waitForHealth(20000);
    return () => {
        proc?.kill();
        proc = null;
    };
}
