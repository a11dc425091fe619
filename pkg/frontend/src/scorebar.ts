/** Geometry of the per-segment score strip: one bar per segment, height
 * proportional to its 1-10 score. */

import { MAX_SCORE } from "./scores.js";
import type { AnnotationSession } from "./session.js";
import type { SaveState } from "./types.js";

export interface ScoreBar {
  index: number;
  score: number | null;
  /** 0 for unscored, score/10 otherwise */
  heightFraction: number;
  state: SaveState | "none";
  active: boolean;
}

export function scoreBars(session: AnnotationSession): ScoreBar[] {
  return session.segments.map((segment) => {
    const index = segment.segment_index;
    const score = session.displayedScore(index) ?? null;
    return {
      index,
      score,
      heightFraction: score === null ? 0 : score / MAX_SCORE,
      state: session.saveState(index) ?? "none",
      active: index === session.currentSegment,
    };
  });
}
