import { describe, expect, it } from "vitest";

import { markerFractions, markerTimes, segmentForTime } from "../src/segments.js";
import { layout } from "./helpers.js";

function linearScan(time: number, segments: ReturnType<typeof layout>): number {
  for (const seg of segments) {
    if (time >= seg.start && time < seg.end) return seg.segment_index;
  }
  throw new Error("not covered");
}

describe("segmentForTime", () => {
  it("matches a linear-scan oracle across random times", () => {
    const segments = layout(23);
    for (let i = 0; i < 1000; i++) {
      const time = Math.random() * 22.999;
      expect(segmentForTime(time, segments)).toBe(linearScan(time, segments));
    }
  });

  it("maps boundaries to the later segment (half-open spans)", () => {
    const segments = layout(10);
    expect(segmentForTime(0, segments)).toBe(0);
    expect(segmentForTime(5, segments)).toBe(1);
  });

  it("clamps times at or past the end to the last segment", () => {
    const segments = layout(23);
    expect(segmentForTime(23, segments)).toBe(4);
    expect(segmentForTime(99, segments)).toBe(4);
    expect(segmentForTime(-0.5, segments)).toBe(0);
  });

  it("rejects an empty layout", () => {
    expect(() => segmentForTime(1, [])).toThrow();
  });
});

describe("markers", () => {
  it("places one marker per interior boundary, every 5 seconds", () => {
    expect(markerTimes(layout(23))).toEqual([5, 10, 15, 20]);
    expect(markerTimes(layout(4))).toEqual([]);
  });

  it("converts to fractions of the duration", () => {
    expect(markerFractions(layout(10), 10)).toEqual([0.5]);
  });
});
