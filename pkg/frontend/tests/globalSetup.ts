/**
 * Boots the Python API service once for the whole test run, so the
 * collinearity and parity suites exercise the real HTTP contract
 * instead of fixtures.
 */

import { spawn, type ChildProcess } from "node:child_process";

export const BASE_URL = "http://127.0.0.1:8377";

let server: ChildProcess | null = null;

async function waitForHealth(timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const res = await fetch(`${BASE_URL}/v1/health`);
      if (res.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error("API service did not become healthy in time");
}

export async function setup(): Promise<void> {
  server = spawn(
    "python3",
    ["-m", "uvicorn", "bayescreen.service:app", "--host", "127.0.0.1", "--port", "8377"],
    { cwd: "..", stdio: "ignore" },
  );
  server.on("exit", (code) => {
    if (code !== null && code !== 0) {
      // Surfaces in waitForHealth's timeout; nothing else to do here.
    }
  });
  await waitForHealth(30_000);
}

export async function teardown(): Promise<void> {
  if (server) {
    server.kill("SIGTERM");
    server = null;
  }
}
