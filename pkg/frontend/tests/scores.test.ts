import { describe, expect, it } from "vitest";

import { clampScore, isValidScore, scoreForKey } from "../src/scores.js";

describe("scoreForKey", () => {
  it("maps digits 1-9 directly", () => {
    for (let d = 1; d <= 9; d++) {
      expect(scoreForKey(String(d))).toBe(d);
    }
  });

  it("maps 0 to 10", () => {
    expect(scoreForKey("0")).toBe(10);
  });

  it("ignores non-digit keys", () => {
    for (const key of ["a", "Enter", " ", "-", "F1", "#"]) {
      expect(scoreForKey(key)).toBeNull();
    }
  });
});

describe("clampScore", () => {
  it("never produces a value outside [1, 10]", () => {
    expect(clampScore(0)).toBe(1);
    expect(clampScore(-5)).toBe(1);
    expect(clampScore(11)).toBe(10);
    expect(clampScore(10.4)).toBe(10);
    expect(clampScore(7)).toBe(7);
    for (let i = 0; i < 500; i++) {
      const clamped = clampScore(Math.random() * 40 - 20);
      expect(isValidScore(clamped)).toBe(true);
    }
  });
});

describe("isValidScore", () => {
  it("accepts exactly the integers 1-10", () => {
    expect(isValidScore(1)).toBe(true);
    expect(isValidScore(10)).toBe(true);
    expect(isValidScore(0)).toBe(false);
    expect(isValidScore(11)).toBe(false);
    expect(isValidScore(5.5)).toBe(false);
  });
});
