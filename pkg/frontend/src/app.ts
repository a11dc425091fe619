/**
 * DOM glue: video-list view and the annotator view (player, segment strip,
 * keyboard score entry). All decision logic lives in the imported modules;
 * this file only renders state and wires events.
 */

import { ApiClient, ApiError } from "./api.js";
import { PlayerController } from "./player.js";
import { scoreBars } from "./scorebar.js";
import { scoreForKey } from "./scores.js";
import { markerFractions } from "./segments.js";
import { AnnotationSession } from "./session.js";
import type { AnnotationTask, VideoDetail } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class App {
  private session: AnnotationSession | null = null;
  private player: PlayerController | null = null;
  private autoAdvance = true;
  private keyHandler: ((event: KeyboardEvent) => void) | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  async start(): Promise<void> {
    await this.showList();
  }

  // ------------------------------------------------------------ list view --
  private async showList(): Promise<void> {
    this.teardownAnnotator();
    this.root.replaceChildren(el("p", "loading", "loading videos…"));
    let tasks: AnnotationTask[];
    try {
      tasks = await this.api.listVideos();
    } catch (error) {
      this.renderRetryBanner(error, () => this.showList());
      return;
    }
    const container = el("div", "list-view");
    container.append(el("h1", undefined, "Videos to annotate"));
    const table = el("table", "video-list");
    for (const task of tasks) {
      const row = el("tr", task.status === "DONE" ? "done" : "");
      const name = el("td", "video-id", task.video_id);
      const progress = el(
        "td",
        "progress",
        `${task.completed_segments}/${task.total_segments}`,
      );
      const status = el("td", `status status-${task.status.toLowerCase()}`);
      status.textContent = task.status === "DONE" ? "✓ DONE" : task.status;
      row.append(name, progress, status);
      row.addEventListener("click", () => void this.openVideo(task.video_id));
      table.append(row);
    }
    if (tasks.length === 0) {
      container.append(el("p", "empty", "no videos in the store"));
    }
    container.append(table);
    this.root.replaceChildren(container);
  }

  private renderRetryBanner(error: unknown, retry: () => void): void {
    const banner = el("div", "banner error");
    const message =
      error instanceof ApiError ? `server error ${error.status}` : "server unreachable";
    banner.append(el("span", undefined, `${message} — `));
    const button = el("button", undefined, "retry");
    button.addEventListener("click", retry);
    banner.append(button);
    this.root.replaceChildren(banner);
  }

  // ------------------------------------------------------- annotator view --
  private async openVideo(videoId: string): Promise<void> {
    let detail: VideoDetail;
    try {
      detail = await this.api.getVideo(videoId);
    } catch (error) {
      this.renderRetryBanner(error, () => void this.openVideo(videoId));
      return;
    }
    this.session = new AnnotationSession(detail);

    const view = el("div", "annotator");
    const header = el("div", "header");
    const back = el("button", "back", "← videos");
    back.addEventListener("click", () => void this.showList());
    header.append(back, el("h2", undefined, detail.video_id));
    const autoLabel = el("label", "auto-advance");
    const autoBox = el("input") as HTMLInputElement;
    autoBox.type = "checkbox";
    autoBox.checked = this.autoAdvance;
    autoBox.addEventListener("change", () => (this.autoAdvance = autoBox.checked));
    autoLabel.append(autoBox, document.createTextNode(" auto-advance"));
    header.append(autoLabel);
    view.append(header);

    const video = el("video") as HTMLVideoElement;
    video.src = this.api.mediaUrl(videoId);
    video.controls = true;
    view.append(video);

    // boundary markers over the seek strip, one every segment start
    const markerStrip = el("div", "marker-strip");
    for (const fraction of markerFractions(detail.segments, detail.duration)) {
      const marker = el("span", "marker");
      marker.style.left = `${(fraction * 100).toFixed(2)}%`;
      markerStrip.append(marker);
    }
    view.append(markerStrip);

    const info = el("div", "segment-info");
    const strip = el("div", "score-strip");
    const status = el("div", "status-line");
    view.append(info, strip, status);
    this.root.replaceChildren(view);

    this.player = new PlayerController(video, detail.segments);
    this.player.onSegmentTime((index) => {
      // active segment is recomputed from playback time on every update
      this.session?.updateTime(video.currentTime);
      this.renderSegmentState(info, strip, index);
    });
    this.session.updateTime(0);
    this.renderSegmentState(info, strip, 0);

    this.keyHandler = (event) => void this.handleKey(event, info, strip, status);
    document.addEventListener("keydown", this.keyHandler);
  }

  private teardownAnnotator(): void {
    if (this.keyHandler) {
      document.removeEventListener("keydown", this.keyHandler);
      this.keyHandler = null;
    }
    this.session = null;
    this.player = null;
  }

  private renderSegmentState(
    info: HTMLElement,
    strip: HTMLElement,
    activeIndex: number,
  ): void {
    const session = this.session;
    if (!session) return;
    const segment = session.segments[activeIndex];
    if (!segment) return;
    const score = session.displayedScore(activeIndex);
    info.textContent =
      `segment ${activeIndex + 1}/${session.segments.length} ` +
      `[${segment.start.toFixed(1)}s – ${segment.end.toFixed(1)}s] — ` +
      (score === undefined ? "press 1–9 or 0 (=10) to score" : `score ${score}`);

    strip.replaceChildren(
      ...scoreBars(session).map((bar) => {
        const cell = el("div", `bar-cell${bar.active ? " active" : ""}`);
        const fill = el("div", `bar state-${bar.state}`);
        fill.style.height = `${(bar.heightFraction * 100).toFixed(0)}%`;
        fill.title = bar.score === null ? `segment ${bar.index + 1}` : `score ${bar.score}`;
        cell.append(fill);
        cell.addEventListener("click", () => {
          this.player?.stopReplay();
          this.player?.seekToSegment(bar.index);
        });
        cell.addEventListener("dblclick", () => this.player?.replaySegment(bar.index));
        strip.append(cell);
        return cell;
      }),
    );
  }

  private async handleKey(
    event: KeyboardEvent,
    info: HTMLElement,
    strip: HTMLElement,
    status: HTMLElement,
  ): Promise<void> {
    const session = this.session;
    const player = this.player;
    if (!session || !player) return;
    if (event.key === "ArrowRight") {
      player.stopReplay();
      player.seekToSegment(Math.min(session.currentSegment + 1, session.segments.length - 1));
      return;
    }
    if (event.key === "ArrowLeft") {
      player.stopReplay();
      player.seekToSegment(Math.max(session.currentSegment - 1, 0));
      return;
    }
    if (event.key === "r") {
      player.replaySegment(session.currentSegment);
      return;
    }
    const score = scoreForKey(event.key);
    if (score === null) return;

    const index = session.currentSegment;
    const sent = session.beginScore(index, score);
    this.renderSegmentState(info, strip, index);
    try {
      const response = await this.api.putScore(session.videoId, index, sent);
      session.confirmScore(index, response.score);
      status.textContent =
        response.task.status === "DONE" ? "all segments scored ✓" : "";
      if (this.autoAdvance) player.advanceFrom(index);
    } catch (error) {
      session.rollbackScore(index);
      status.textContent =
        error instanceof ApiError
          ? `save failed (${error.status}): ${error.message}`
          : "save failed: server unreachable";
    }
    this.renderSegmentState(info, strip, session.currentSegment);
  }
}
