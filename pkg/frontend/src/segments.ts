/** Segment math mirroring the server's half-open [start, end) layout. */

import type { SegmentSpan } from "./types.js";

/**
 * Index of the segment containing `time`. Player time can momentarily sit
 * outside [0, duration) (e.g. exactly at the end), so the result clamps to
 * the first/last segment instead of failing.
 */
export function segmentForTime(time: number, segments: SegmentSpan[]): number {
  if (segments.length === 0) {
    throw new Error("empty segment layout");
  }
  const first = segments[0]!;
  const last = segments[segments.length - 1]!;
  if (time < first.start) return first.segment_index;
  if (time >= last.end) return last.segment_index;
  for (const seg of segments) {
    if (time >= seg.start && time < seg.end) return seg.segment_index;
  }
  return last.segment_index;
}

/** Boundary times for seek-bar markers: one every segment start except 0. */
export function markerTimes(segments: SegmentSpan[]): number[] {
  return segments.filter((s) => s.start > 0).map((s) => s.start);
}

/** Fraction of the full duration at which each marker sits, for CSS layout. */
export function markerFractions(segments: SegmentSpan[], duration: number): number[] {
  return markerTimes(segments).map((t) => t / duration);
}
