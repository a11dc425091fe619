/** Payload types of the annotation service's JSON API. */

export type TaskStatus = "NEW" | "IN_PROGRESS" | "DONE";

export interface AnnotationTask {
  video_id: string;
  total_segments: number;
  completed_segments: number;
  status: TaskStatus;
}

export interface SegmentSpan {
  segment_index: number;
  start: number;
  end: number;
}

export interface VideoDetail {
  video_id: string;
  media_path: string;
  duration: number;
  native_fps: number;
  topic: string;
  source: string;
  subtitle_path: string | null;
  segments: SegmentSpan[];
  /** server-confirmed scores, keyed by segment index (JSON object keys are strings) */
  scores: Record<string, number>;
  task: AnnotationTask;
}

export interface PutScoreResponse {
  video_id: string;
  segment_index: number;
  score: number;
  task: AnnotationTask;
}

/** Per-segment save lifecycle in the UI. */
export type SaveState = "pending" | "saved" | "error";
