/**
 * Per-video annotation session state.
 *
 * The server is the single source of truth: `scores` holds confirmed values,
 * `buffer` holds optimistic local entries awaiting a PUT response, and a
 * rollback or a reload drops the buffer so UI state converges to server state.
 */

import { clampScore } from "./scores.js";
import { segmentForTime } from "./segments.js";
import type { SaveState, SegmentSpan, VideoDetail } from "./types.js";

export class AnnotationSession {
  readonly videoId: string;
  readonly segments: SegmentSpan[];
  currentSegment = 0;
  private scores = new Map<number, number>();
  private buffer = new Map<number, number>();
  private saveStates = new Map<number, SaveState>();

  constructor(detail: VideoDetail) {
    this.videoId = detail.video_id;
    this.segments = detail.segments;
    this.applyServerScores(detail.scores);
  }

  private applyServerScores(scores: Record<string, number>): void {
    this.scores = new Map(
      Object.entries(scores).map(([index, score]) => [Number(index), score]),
    );
    for (const index of this.scores.keys()) {
      this.saveStates.set(index, "saved");
    }
  }

  /** Active segment is always derived from playback time, never cached. */
  updateTime(time: number): number {
    this.currentSegment = segmentForTime(time, this.segments);
    return this.currentSegment;
  }

  /** Buffer an optimistic score (clamped into [1, 10]); returns the value sent. */
  beginScore(segmentIndex: number, rawScore: number): number {
    const score = clampScore(rawScore);
    this.buffer.set(segmentIndex, score);
    this.saveStates.set(segmentIndex, "pending");
    return score;
  }

  /** Server acknowledged the PUT: promote the buffer entry to confirmed. */
  confirmScore(segmentIndex: number, score: number): void {
    this.buffer.delete(segmentIndex);
    this.scores.set(segmentIndex, score);
    this.saveStates.set(segmentIndex, "saved");
  }

  /** Server rejected the PUT: drop the optimistic entry. */
  rollbackScore(segmentIndex: number): void {
    this.buffer.delete(segmentIndex);
    if (this.scores.has(segmentIndex)) {
      this.saveStates.set(segmentIndex, "saved");
    } else {
      this.saveStates.set(segmentIndex, "error");
    }
  }

  /** Reload from the server; any phantom local state disappears. */
  reconcile(detail: VideoDetail): void {
    this.buffer.clear();
    this.saveStates.clear();
    this.applyServerScores(detail.scores);
  }

  /** Score to display: optimistic buffer wins over confirmed state. */
  displayedScore(segmentIndex: number): number | undefined {
    return this.buffer.get(segmentIndex) ?? this.scores.get(segmentIndex);
  }

  confirmedScore(segmentIndex: number): number | undefined {
    return this.scores.get(segmentIndex);
  }

  saveState(segmentIndex: number): SaveState | undefined {
    return this.saveStates.get(segmentIndex);
  }

  completedCount(): number {
    return this.scores.size;
  }

  isDone(): boolean {
    return this.scores.size === this.segments.length;
  }

  /** Confirmed state as the server would report it (for invariant checks). */
  snapshot(): Record<string, number> {
    const out: Record<string, number> = {};
    for (const [index, score] of this.scores) out[String(index)] = score;
    return out;
  }
}
