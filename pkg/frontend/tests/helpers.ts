import type { SegmentSpan, VideoDetail } from "../src/types.js";

export function layout(duration: number, segmentSeconds = 5): SegmentSpan[] {
  const segments: SegmentSpan[] = [];
  let index = 0;
  for (let start = 0; start < duration; start += segmentSeconds) {
    segments.push({
      segment_index: index,
      start,
      end: Math.min(start + segmentSeconds, duration),
    });
    index += 1;
  }
  return segments;
}

export function detail(
  videoId: string,
  duration: number,
  scores: Record<string, number> = {},
): VideoDetail {
  const segments = layout(duration);
  const completed = Object.keys(scores).length;
  return {
    video_id: videoId,
    media_path: `${videoId}.mp4`,
    duration,
    native_fps: 30,
    topic: "demo",
    source: "fixture",
    subtitle_path: null,
    segments,
    scores,
    task: {
      video_id: videoId,
      total_segments: segments.length,
      completed_segments: completed,
      status:
        completed === 0 ? "NEW" : completed === segments.length ? "DONE" : "IN_PROGRESS",
    },
  };
}
