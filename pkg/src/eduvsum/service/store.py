"""Embedded relational store for the annotation workflow.

Single SQLite file; per-segment score writes are one transaction each, so
concurrent PUTs to distinct segments serialize without lost updates.
"""

from __future__ import annotations

import sqlite3
from contextlib import contextmanager
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path

from eduvsum.core.segments import segmentize
from eduvsum.core.types import AnnotationSet, DatasetManifest, Segment, VideoRecord
from eduvsum.errors import InvalidInputError, ValidationError

DEFAULT_ANNOTATOR = "default"

_SCHEMA = """
CREATE TABLE IF NOT EXISTS videos (
    video_id TEXT PRIMARY KEY,
    media_path TEXT NOT NULL,
    duration REAL NOT NULL,
    native_fps REAL NOT NULL,
    topic TEXT NOT NULL DEFAULT '',
    source TEXT NOT NULL DEFAULT '',
    subtitle_path TEXT
);
CREATE TABLE IF NOT EXISTS scores (
    video_id TEXT NOT NULL,
    annotator_id TEXT NOT NULL,
    segment_index INTEGER NOT NULL,
    score INTEGER NOT NULL CHECK (score BETWEEN 1 AND 10),
    updated_at TEXT NOT NULL,
    PRIMARY KEY (video_id, annotator_id, segment_index),
    FOREIGN KEY (video_id) REFERENCES videos(video_id)
);
"""


class TaskStatus(str, Enum):
    NEW = "NEW"
    IN_PROGRESS = "IN_PROGRESS"
    DONE = "DONE"


@dataclass(frozen=True)
class AnnotationTask:
    video_id: str
    total_segments: int
    completed_segments: int
    status: TaskStatus

    def __post_init__(self):
        if self.completed_segments > self.total_segments:
            raise ValidationError(
                f"task {self.video_id!r}: completed {self.completed_segments} exceeds "
                f"total {self.total_segments}"
            )
        done = self.completed_segments == self.total_segments
        if (self.status is TaskStatus.DONE) != done:
            raise ValidationError(f"task {self.video_id!r}: status inconsistent with counts")


def _status_for(completed: int, total: int) -> TaskStatus:
    if completed == 0:
        return TaskStatus.NEW
    if completed == total:
        return TaskStatus.DONE
    return TaskStatus.IN_PROGRESS


class AnnotationStore:
    def __init__(self, db_path: str | Path):
        self.db_path = str(db_path)
        with self._connect() as conn:
            conn.executescript(_SCHEMA)

    @contextmanager
    def _connect(self):
        conn = sqlite3.connect(self.db_path, timeout=30.0)
        conn.execute("PRAGMA journal_mode=WAL")
        conn.execute("PRAGMA foreign_keys=ON")
        try:
            yield conn
            conn.commit()
        except Exception:
            conn.rollback()
            raise
        finally:
            conn.close()

    # -- initialization -----------------------------------------------------
    def init_from_manifest(self, manifest: DatasetManifest) -> None:
        """Load videos (and any annotations the manifest carries); idempotent."""
        with self._connect() as conn:
            for v in manifest.videos:
                conn.execute(
                    "INSERT OR REPLACE INTO videos VALUES (?, ?, ?, ?, ?, ?, ?)",
                    (v.video_id, v.media_path, v.duration, v.native_fps,
                     v.topic, v.source, v.subtitle_path),
                )
            now = datetime.now(timezone.utc).isoformat()
            for ann in manifest.annotations:
                for index, score in enumerate(ann.scores):
                    conn.execute(
                        "INSERT OR REPLACE INTO scores VALUES (?, ?, ?, ?, ?)",
                        (ann.video_id, ann.annotator_id, index, score, now),
                    )

    # -- reads ---------------------------------------------------------------
    def get_video(self, video_id: str) -> VideoRecord | None:
        with self._connect() as conn:
            row = conn.execute(
                "SELECT video_id, media_path, duration, native_fps, topic, source, "
                "subtitle_path FROM videos WHERE video_id = ?", (video_id,)
            ).fetchone()
        if row is None:
            return None
        return VideoRecord(*row)

    def segment_layout(self, video_id: str) -> list[Segment]:
        video = self.get_video(video_id)
        if video is None:
            raise InvalidInputError(f"unknown video_id {video_id!r}")
        return segmentize(video.duration)

    def scores_for(self, video_id: str, annotator_id: str = DEFAULT_ANNOTATOR) -> dict[int, int]:
        with self._connect() as conn:
            rows = conn.execute(
                "SELECT segment_index, score FROM scores "
                "WHERE video_id = ? AND annotator_id = ?",
                (video_id, annotator_id),
            ).fetchall()
        return dict(rows)

    def task_for(self, video_id: str, annotator_id: str = DEFAULT_ANNOTATOR) -> AnnotationTask:
        total = len(self.segment_layout(video_id))
        completed = len(self.scores_for(video_id, annotator_id))
        return AnnotationTask(video_id, total, completed, _status_for(completed, total))

    def list_tasks(self, annotator_id: str = DEFAULT_ANNOTATOR) -> list[AnnotationTask]:
        with self._connect() as conn:
            ids = [r[0] for r in conn.execute(
                "SELECT video_id FROM videos ORDER BY video_id").fetchall()]
        return [self.task_for(video_id, annotator_id) for video_id in ids]

    # -- writes ---------------------------------------------------------------
    def put_score(
        self,
        video_id: str,
        segment_index: int,
        score: int,
        annotator_id: str = DEFAULT_ANNOTATOR,
    ) -> AnnotationTask:
        """Durable upsert of one segment score; re-annotation overwrites."""
        if not isinstance(score, int) or not 1 <= score <= 10:
            raise ValidationError(f"score must be an integer in [1, 10], got {score!r}")
        layout = self.segment_layout(video_id)
        if not 0 <= segment_index < len(layout):
            raise InvalidInputError(
                f"segment index {segment_index} outside layout of {len(layout)} segments"
            )
        now = datetime.now(timezone.utc).isoformat()
        with self._connect() as conn:
            conn.execute(
                "INSERT INTO scores VALUES (?, ?, ?, ?, ?) "
                "ON CONFLICT(video_id, annotator_id, segment_index) "
                "DO UPDATE SET score = excluded.score, updated_at = excluded.updated_at",
                (video_id, annotator_id, segment_index, score, now),
            )
        return self.task_for(video_id, annotator_id)

    # -- export ----------------------------------------------------------------
    def export_manifest(
        self,
        include_partial: bool = False,
        annotator_id: str = DEFAULT_ANNOTATOR,
    ) -> tuple[DatasetManifest, list[str]]:
        """Manifest of annotated videos plus the ids of partially scored ones.

        Fully annotated videos carry their AnnotationSet. Partially annotated
        videos are excluded by default; with include_partial their VideoRecord
        is included (an incomplete score list can never form a valid
        annotation) and their id is returned in the second element. Videos with
        no scores at all never export. Pure function of store state: timestamps
        come from the stored rows.
        """
        videos: list[VideoRecord] = []
        annotations: list[AnnotationSet] = []
        partial_ids: list[str] = []
        with self._connect() as conn:
            ids = [r[0] for r in conn.execute(
                "SELECT video_id FROM videos ORDER BY video_id").fetchall()]
        for video_id in ids:
            video = self.get_video(video_id)
            layout = segmentize(video.duration)
            scores = self.scores_for(video_id, annotator_id)
            if not scores:
                continue
            if len(scores) < len(layout):
                if include_partial:
                    videos.append(video)
                    partial_ids.append(video_id)
                continue
            with self._connect() as conn:
                updated = conn.execute(
                    "SELECT MAX(updated_at) FROM scores WHERE video_id = ? AND annotator_id = ?",
                    (video_id, annotator_id),
                ).fetchone()[0]
            videos.append(video)
            annotations.append(AnnotationSet(
                video_id=video_id,
                annotator_id=annotator_id,
                scores=tuple(scores[i] for i in range(len(layout))),
                created_at=updated or "",
            ))
        manifest = DatasetManifest(videos=tuple(videos), annotations=tuple(annotations))
        return manifest, partial_ids
