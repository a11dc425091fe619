import { describe, expect, it } from "vitest";

import { PlayerController, type MediaLike } from "../src/player.js";
import { layout } from "./helpers.js";

class FakeMedia implements MediaLike {
  currentTime = 0;
  paused = true;
  private listeners: Array<() => void> = [];

  constructor(readonly duration: number) {}

  play(): void {
    this.paused = false;
  }

  pause(): void {
    this.paused = true;
  }

  addEventListener(_type: "timeupdate", listener: () => void): void {
    this.listeners.push(listener);
  }

  /** Simulate playback reaching `time`. */
  tick(time: number): void {
    this.currentTime = time;
    for (const listener of this.listeners) listener();
  }
}

describe("PlayerController", () => {
  it("seeks within ±0.2 s of a segment start", () => {
    const media = new FakeMedia(23);
    const player = new PlayerController(media, layout(23));
    player.seekToSegment(4);
    expect(Math.abs(media.currentTime - 20)).toBeLessThanOrEqual(0.2);
    player.seekToSegment(0);
    expect(media.currentTime).toBe(0);
  });

  it("rejects out-of-layout segments", () => {
    const player = new PlayerController(new FakeMedia(10), layout(10));
    expect(() => player.seekToSegment(2)).toThrow();
  });

  it("auto-advances to the next boundary and resumes playback", () => {
    const media = new FakeMedia(23);
    const player = new PlayerController(media, layout(23));
    media.tick(7.3);
    player.advanceFrom(1);
    expect(Math.abs(media.currentTime - 10)).toBeLessThanOrEqual(0.2);
    expect(media.paused).toBe(false);
  });

  it("pauses instead of advancing past the last segment", () => {
    const media = new FakeMedia(23);
    media.play();
    const player = new PlayerController(media, layout(23));
    player.advanceFrom(4);
    expect(media.paused).toBe(true);
  });

  it("replay loops the current 5-second window", () => {
    const media = new FakeMedia(23);
    const player = new PlayerController(media, layout(23));
    player.replaySegment(4); // [20, 23)
    expect(media.paused).toBe(false);
    media.tick(21.0);
    expect(media.currentTime).toBeCloseTo(21.0);
    media.tick(23.0); // reached the end of the window: loop
    expect(Math.abs(media.currentTime - 20)).toBeLessThanOrEqual(0.2);
    player.stopReplay();
    media.tick(23.0);
    expect(media.currentTime).toBe(23.0);
  });

  it("reports the active segment on every timeupdate", () => {
    const media = new FakeMedia(23);
    const player = new PlayerController(media, layout(23));
    const seen: number[] = [];
    player.onSegmentTime((index) => seen.push(index));
    for (const t of [0, 4.9, 5.0, 11, 22.5]) media.tick(t);
    expect(seen).toEqual([0, 0, 1, 2, 4]);
  });
});
