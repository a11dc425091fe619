/** Typed client for the annotation service's JSON/HTTP API. */

import { isValidScore } from "./scores.js";
import type { AnnotationTask, PutScoreResponse, VideoDetail } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = await response.json();
        detail = JSON.stringify(body.detail ?? body);
      } catch {
        // body was not JSON; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  listVideos(): Promise<AnnotationTask[]> {
    return this.request<AnnotationTask[]>("/videos");
  }

  getVideo(videoId: string): Promise<VideoDetail> {
    return this.request<VideoDetail>(`/videos/${encodeURIComponent(videoId)}`);
  }

  putScore(videoId: string, segmentIndex: number, score: number): Promise<PutScoreResponse> {
    if (!isValidScore(score)) {
      // guard behind the input-layer clamp: invalid values never reach the wire
      return Promise.reject(new ApiError(0, `score ${score} outside [1, 10]`));
    }
    return this.request<PutScoreResponse>(
      `/videos/${encodeURIComponent(videoId)}/segments/${segmentIndex}/score`,
      {
        method: "PUT",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ score }),
      },
    );
  }

  mediaUrl(videoId: string): string {
    return `${this.baseUrl}/videos/${encodeURIComponent(videoId)}/media`;
  }
}
