// Pinned demo grid (same fixture the backend ships) plus page scaffolding
// helpers for DOM tests.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { ChallengePayload, GridCell } from "../src/gridview.js";

export const DEMO_CHARSET =
  "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789.+*/(){}-_%=@!^$,#";
export const DEMO_CODES =
  "87767890499200949551931924713109326356681166820735801188357373545704222844642560";

export function demoCells(): GridCell[] {
  return [...DEMO_CHARSET].map((ch, i) => ({ ch, code: Number(DEMO_CODES[i]) }));
}

export function demoPayload(
  id = "demo-challenge-1",
  expiresAt = Date.now() / 1000 + 120,
): ChallengePayload {
  return { challenge_id: id, grid: demoCells(), expires_at: expiresAt, ttl_s: 120 };
}

/** The real login page's body markup, scripts stripped. */
export function pageBodyHtml(): string {
  const here = dirname(fileURLToPath(import.meta.url));
  const html = readFileSync(join(here, "..", "static", "index.html"), "utf8");
  const match = html.match(/<body>([\s\S]*)<\/body>/);
  if (!match) throw new Error("index.html has no <body>");
  return match[1].replace(/<script[\s\S]*?<\/script>/g, "");
}

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}
