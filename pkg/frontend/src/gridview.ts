// Pure view-model logic for the login grid: payload validation, layout,
// input filtering, and login request construction. No DOM access here so
// everything is unit-testable.

export interface GridCell {
  ch: string;
  code: number;
}

export interface ChallengePayload {
  challenge_id: string;
  grid: GridCell[];
  expires_at: number; // epoch seconds
  ttl_s?: number;
}

export interface GridViewModel {
  challengeId: string;
  expiresAt: number;
  cells: GridCell[]; // exactly the payload cells, order preserved
  rows: GridCell[][]; // layout: character classes chunked 13 per row
  integrityWarning: string | null;
}

export const GRID_COLUMNS = 13;

export class PayloadError extends Error {}

function isCell(value: unknown): value is GridCell {
  if (typeof value !== "object" || value === null) return false;
  const cell = value as Record<string, unknown>;
  return (
    typeof cell.ch === "string" &&
    cell.ch.length === 1 &&
    typeof cell.code === "number" &&
    Number.isInteger(cell.code) &&
    cell.code >= 0 &&
    cell.code <= 9
  );
}

/** Validate a server challenge payload; throws PayloadError when malformed. */
export function validatePayload(raw: unknown): ChallengePayload {
  if (typeof raw !== "object" || raw === null) {
    throw new PayloadError("challenge payload is not an object");
  }
  const payload = raw as Record<string, unknown>;
  if (typeof payload.challenge_id !== "string" || payload.challenge_id.length === 0) {
    throw new PayloadError("missing challenge_id");
  }
  if (typeof payload.expires_at !== "number" || !Number.isFinite(payload.expires_at)) {
    throw new PayloadError("missing expires_at");
  }
  if (!Array.isArray(payload.grid) || payload.grid.length === 0) {
    throw new PayloadError("missing grid cells");
  }
  for (const cell of payload.grid) {
    if (!isCell(cell)) {
      throw new PayloadError(`malformed grid cell: ${JSON.stringify(cell)}`);
    }
  }
  const seen = new Set<string>();
  for (const cell of payload.grid as GridCell[]) {
    if (seen.has(cell.ch)) throw new PayloadError(`duplicate character ${cell.ch}`);
    seen.add(cell.ch);
  }
  return payload as unknown as ChallengePayload;
}

/**
 * The alphabet promise is that every digit labels exactly |X|/10 characters;
 * a payload violating it means a broken (or tampered-with) server, so the
 * client surfaces a warning rather than silently rendering.
 */
export function frequencyViolation(cells: GridCell[]): string | null {
  if (cells.length % 10 !== 0) {
    return `grid has ${cells.length} cells, not a multiple of 10`;
  }
  const expected = cells.length / 10;
  const counts = new Array(10).fill(0);
  for (const cell of cells) counts[cell.code] += 1;
  for (let digit = 0; digit < 10; digit++) {
    if (counts[digit] !== expected) {
      return `digit ${digit} labels ${counts[digit]} characters, expected ${expected}`;
    }
  }
  return null;
}

function characterClass(ch: string): number {
  if (ch >= "A" && ch <= "Z") return 0;
  if (ch >= "a" && ch <= "z") return 1;
  if (ch >= "0" && ch <= "9") return 2;
  return 3; // specials
}

/** Rows: uppercase, lowercase, digits, specials — 13 columns per row. */
export function layoutRows(cells: GridCell[]): GridCell[][] {
  const groups: GridCell[][] = [[], [], [], []];
  for (const cell of cells) groups[characterClass(cell.ch)].push(cell);
  const rows: GridCell[][] = [];
  for (const group of groups) {
    for (let i = 0; i < group.length; i += GRID_COLUMNS) {
      rows.push(group.slice(i, i + GRID_COLUMNS));
    }
  }
  return rows;
}

export function buildViewModel(payload: ChallengePayload): GridViewModel {
  return {
    challengeId: payload.challenge_id,
    expiresAt: payload.expires_at,
    cells: payload.grid,
    rows: layoutRows(payload.grid),
    integrityWarning: frequencyViolation(payload.grid),
  };
}

/** Keep only digit characters (the input field blocks everything else). */
export function digitsOnly(text: string): string {
  return text.replace(/[^0-9]/g, "");
}

export interface LoginRequestBody {
  challenge_id: string;
  digits: string;
  username?: string;
}

/**
 * The request never carries password characters: exactly the challenge id,
 * the typed digits, and (only when given) a username.
 */
export function loginRequestBody(
  challengeId: string,
  digits: string,
  username?: string,
): LoginRequestBody {
  const body: LoginRequestBody = { challenge_id: challengeId, digits: digitsOnly(digits) };
  if (username !== undefined && username !== "") body.username = username;
  return body;
}

/** Whole seconds remaining before the challenge expires (never negative). */
export function countdownSeconds(expiresAtEpochS: number, nowMs: number): number {
  return Math.max(0, Math.ceil(expiresAtEpochS - nowMs / 1000));
}
