"""HTTP API for the annotation workflow.

JSON over HTTP; media served with byte-range support so the browser player can
seek to segment boundaries. CORS is open for the UI origin, and the UI's
static assets are mounted at /ui when a build directory is provided.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import FileResponse, JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from eduvsum.core.manifest import manifest_to_dict
from eduvsum.errors import InvalidInputError
from eduvsum.service.store import DEFAULT_ANNOTATOR, AnnotationStore


class ScoreBody(BaseModel):
    score: int = Field(ge=1, le=10, description="importance score, 1-10")
    annotator_id: str = DEFAULT_ANNOTATOR


def _task_dict(task) -> dict:
    return {
        "video_id": task.video_id,
        "total_segments": task.total_segments,
        "completed_segments": task.completed_segments,
        "status": task.status.value,
    }


def create_app(store: AnnotationStore, media_root: str | Path = ".",
               ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="segment annotation service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"],
    )
    media_root = Path(media_root)

    @app.get("/videos")
    def list_videos(annotator_id: str = DEFAULT_ANNOTATOR):
        return [_task_dict(t) for t in store.list_tasks(annotator_id)]

    @app.get("/videos/{video_id}")
    def get_video(video_id: str, annotator_id: str = DEFAULT_ANNOTATOR):
        video = store.get_video(video_id)
        if video is None:
            raise HTTPException(404, f"unknown video {video_id!r}")
        layout = store.segment_layout(video_id)
        return {
            "video_id": video.video_id,
            "media_path": video.media_path,
            "duration": video.duration,
            "native_fps": video.native_fps,
            "topic": video.topic,
            "source": video.source,
            "subtitle_path": video.subtitle_path,
            "segments": [
                {"segment_index": s.segment_index, "start": s.start, "end": s.end}
                for s in layout
            ],
            "scores": store.scores_for(video_id, annotator_id),
            "task": _task_dict(store.task_for(video_id, annotator_id)),
        }

    @app.get("/videos/{video_id}/media")
    def get_media(video_id: str):
        video = store.get_video(video_id)
        if video is None:
            raise HTTPException(404, f"unknown video {video_id!r}")
        path = Path(video.media_path)
        if not path.is_absolute():
            path = media_root / path
        if not path.is_file():
            raise HTTPException(404, f"media file missing for {video_id!r}")
        # FileResponse answers Range requests with 206 partial content
        return FileResponse(path, media_type="video/mp4")

    @app.put("/videos/{video_id}/segments/{segment_index}/score")
    def put_score(video_id: str, segment_index: int, body: ScoreBody):
        if store.get_video(video_id) is None:
            raise HTTPException(404, f"unknown video {video_id!r}")
        try:
            task = store.put_score(video_id, segment_index, body.score, body.annotator_id)
        except InvalidInputError as e:
            raise HTTPException(404, str(e)) from e
        return {
            "video_id": video_id,
            "segment_index": segment_index,
            "score": body.score,
            "task": _task_dict(task),
        }

    @app.get("/export")
    def export(partial: bool = Query(default=False),
               annotator_id: str = DEFAULT_ANNOTATOR):
        manifest, partial_ids = store.export_manifest(partial, annotator_id)
        doc = manifest_to_dict(manifest)
        if partial:
            doc["partial_videos"] = partial_ids
        return JSONResponse(doc)

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
