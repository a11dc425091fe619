/**
 * Player control against a minimal media interface, so the logic is testable
 * with a fake element: segment seeking, auto-advance, and window replay.
 */

import { segmentForTime } from "./segments.js";
import type { SegmentSpan } from "./types.js";

/** Subset of HTMLVideoElement the controller needs. */
export interface MediaLike {
  currentTime: number;
  duration: number;
  paused: boolean;
  play(): void;
  pause(): void;
  addEventListener(type: "timeupdate", listener: () => void): void;
}

/** Seeks land a hair inside the segment so boundary rounding cannot bleed
 * into the previous one; well within the ±0.2 s contract. */
const SEEK_EPSILON = 0.01;

export class PlayerController {
  private replayIndex: number | null = null;
  private listeners: Array<(segmentIndex: number, time: number) => void> = [];

  constructor(
    private readonly media: MediaLike,
    readonly segments: SegmentSpan[],
  ) {
    media.addEventListener("timeupdate", () => this.handleTimeUpdate());
  }

  onSegmentTime(listener: (segmentIndex: number, time: number) => void): void {
    this.listeners.push(listener);
  }

  currentSegment(): number {
    return segmentForTime(this.media.currentTime, this.segments);
  }

  seekToSegment(index: number): void {
    const segment = this.segments[index];
    if (segment === undefined) {
      throw new Error(`segment ${index} outside layout of ${this.segments.length}`);
    }
    this.media.currentTime = segment.start === 0 ? 0 : segment.start + SEEK_EPSILON;
  }

  /** Jump playback to the next segment boundary; pause at the end of the video. */
  advanceFrom(index: number): void {
    if (index + 1 < this.segments.length) {
      this.seekToSegment(index + 1);
      if (this.media.paused) this.media.play();
    } else {
      this.media.pause();
    }
  }

  /** Loop the 5-second window of `index` until stopReplay(). */
  replaySegment(index: number): void {
    this.replayIndex = index;
    this.seekToSegment(index);
    if (this.media.paused) this.media.play();
  }

  stopReplay(): void {
    this.replayIndex = null;
  }

  isReplaying(): boolean {
    return this.replayIndex !== null;
  }

  private handleTimeUpdate(): void {
    const time = this.media.currentTime;
    if (this.replayIndex !== null) {
      const segment = this.segments[this.replayIndex];
      if (segment !== undefined && (time >= segment.end || time < segment.start)) {
        this.media.currentTime = segment.start === 0 ? 0 : segment.start + SEEK_EPSILON;
        return;
      }
    }
    const index = segmentForTime(time, this.segments);
    for (const listener of this.listeners) listener(index, time);
  }
}
