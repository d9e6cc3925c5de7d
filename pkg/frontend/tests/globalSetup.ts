// Boots the real authentication service with a seeded store for the e2e
// tests, and tears it down afterwards.

import { ChildProcess, execFileSync, spawn } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { E2E_BASE_URL, E2E_PORT, SEEDED_PASSWORD } from "./serverInfo.js";

let server: ChildProcess | undefined;
let workDir: string | undefined;

export async function setup(): Promise<void> {
  workDir = mkdtempSync(join(tmpdir(), "gridauth-e2e-"));
  const store = join(workDir, "e2e.store");
  execFileSync("python3", ["-m", "gridauth.cli", "init-db", "--store", store]);
  execFileSync("python3", ["-m", "gridauth.cli", "add-user", "--store", store], {
    input: `${SEEDED_PASSWORD}\n`,
  });
  server = spawn(
    "python3",
    [
      "-m", "gridauth.cli", "serve",
      "--store", store,
      "--listen", `127.0.0.1:${E2E_PORT}`,
      "--rate-limit", "1000000",
    ],
    { stdio: "ignore" },
  );
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const resp = await fetch(`${E2E_BASE_URL}/api/health`);
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error("seeded test server did not come up");
}

export async function teardown(): Promise<void> {
  server?.kill();
  if (workDir) rmSync(workDir, { recursive: true, force: true });
}
