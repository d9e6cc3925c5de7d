import { describe, expect, it } from "vitest";

import {
  GRID_COLUMNS,
  PayloadError,
  buildViewModel,
  countdownSeconds,
  digitsOnly,
  frequencyViolation,
  layoutRows,
  loginRequestBody,
  validatePayload,
} from "../src/gridview.js";
import { demoCells, demoPayload } from "./fixtures.js";

describe("validatePayload", () => {
  it("accepts a well-formed payload", () => {
    const payload = validatePayload(demoPayload());
    expect(payload.grid).toHaveLength(80);
  });

  it.each([
    [null, "not an object"],
    [{}, "challenge_id"],
    [{ challenge_id: "x", expires_at: 1 }, "grid"],
    [{ challenge_id: "x", expires_at: 1, grid: [] }, "grid"],
    [{ challenge_id: "x", expires_at: "soon", grid: [{ ch: "A", code: 1 }] }, "expires_at"],
  ])("rejects malformed payload %#", (raw, fragment) => {
    expect(() => validatePayload(raw)).toThrowError(PayloadError);
    expect(() => validatePayload(raw)).toThrowError(new RegExp(fragment));
  });

  it.each([
    { ch: "AB", code: 1 },
    { ch: "A", code: 10 },
    { ch: "A", code: 1.5 },
    { ch: "A" },
  ])("rejects malformed cell %#", (cell) => {
    const raw = { challenge_id: "x", expires_at: 1, grid: [cell] };
    expect(() => validatePayload(raw)).toThrowError(/malformed grid cell/);
  });

  it("rejects duplicate characters", () => {
    const grid = [{ ch: "A", code: 1 }, { ch: "A", code: 2 }];
    expect(() => validatePayload({ challenge_id: "x", expires_at: 1, grid }))
      .toThrowError(/duplicate/);
  });
});

describe("frequencyViolation", () => {
  it("passes the demo grid (every digit labels 8 characters)", () => {
    expect(frequencyViolation(demoCells())).toBeNull();
  });

  it("flags a grid whose size is not a multiple of 10", () => {
    expect(frequencyViolation(demoCells().slice(0, 77))).toMatch(/77 cells/);
  });

  it("flags an uneven digit distribution", () => {
    const cells = demoCells();
    // relabel one character: digit counts become 7 and 9
    const donor = cells.findIndex((c) => c.code === 0);
    cells[donor] = { ...cells[donor], code: 1 };
    expect(frequencyViolation(cells)).toMatch(/digit 0 labels 7/);
  });
});

describe("layoutRows", () => {
  it("chunks the default alphabet into 13-column class rows", () => {
    const rows = layoutRows(demoCells());
    expect(rows.map((r) => r.length)).toEqual([13, 13, 13, 13, 10, 13, 5]);
    expect(rows.every((r) => r.length <= GRID_COLUMNS)).toBe(true);
    // class boundaries: uppercase rows first, then lowercase, digits, specials
    expect(rows[0][0].ch).toBe("A");
    expect(rows[2][0].ch).toBe("a");
    expect(rows[4][0].ch).toBe("0");
    expect(rows[5][0].ch).toBe(".");
  });

  it("preserves payload order when flattened", () => {
    const flattened = layoutRows(demoCells()).flat();
    expect(flattened).toEqual(demoCells());
  });
});

describe("buildViewModel", () => {
  it("mirrors the payload cells exactly and carries no warning", () => {
    const payload = demoPayload("abc123", 999.5);
    const vm = buildViewModel(payload);
    expect(vm.challengeId).toBe("abc123");
    expect(vm.expiresAt).toBe(999.5);
    expect(vm.cells).toEqual(payload.grid);
    expect(vm.integrityWarning).toBeNull();
  });

  it("carries an integrity warning for a tampered grid", () => {
    const payload = demoPayload();
    payload.grid[0] = { ...payload.grid[0], code: (payload.grid[0].code + 1) % 10 };
    expect(buildViewModel(payload).integrityWarning).not.toBeNull();
  });
});

describe("digitsOnly", () => {
  it.each([
    ["27318081174", "27318081174"],
    ["2a3 1-8", "2318"],
    ["abc", ""],
    ["", ""],
  ])("filters %j to %j", (input, expected) => {
    expect(digitsOnly(input)).toBe(expected);
  });
});

describe("loginRequestBody", () => {
  it("contains exactly challenge_id and digits by default", () => {
    const body = loginRequestBody("cid-1", "2731");
    expect(Object.keys(body).sort()).toEqual(["challenge_id", "digits"]);
    expect(body).toEqual({ challenge_id: "cid-1", digits: "2731" });
  });

  it("includes username only when non-empty", () => {
    expect(Object.keys(loginRequestBody("c", "1", ""))).not.toContain("username");
    expect(loginRequestBody("c", "1", "ada").username).toBe("ada");
  });

  it("never lets non-digits through", () => {
    expect(loginRequestBody("c", "2a3").digits).toBe("23");
  });
});

describe("countdownSeconds", () => {
  it("rounds up and clamps at zero", () => {
    expect(countdownSeconds(100.5, 100_000)).toBe(1);
    expect(countdownSeconds(130, 100_000)).toBe(30);
    expect(countdownSeconds(99, 100_000)).toBe(0);
  });
});
