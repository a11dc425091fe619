"""Domain types shared by every stage of the pipeline.

All types are immutable values: construct, validate, share freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from eduvsum.errors import ReferentialError, ValidationError

SEGMENT_SECONDS = 5.0
MIN_SCORE = 1
MAX_SCORE = 10

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class VideoRecord:
    """Metadata for one source video."""

    video_id: str
    media_path: str
    duration: float
    native_fps: float
    topic: str = ""
    source: str = ""
    subtitle_path: str | None = None

    def __post_init__(self):
        if not self.video_id:
            raise ValidationError("video_id must be a non-empty string")
        if not self.duration > 0:
            raise ValidationError(f"video {self.video_id!r}: duration must be > 0, got {self.duration}")
        if not self.native_fps > 0:
            raise ValidationError(f"video {self.video_id!r}: native_fps must be > 0, got {self.native_fps}")


@dataclass(frozen=True)
class Segment:
    """Half-open time span [start, end) within one video."""

    segment_index: int
    start: float
    end: float

    def __post_init__(self):
        if self.segment_index < 0:
            raise ValidationError(f"segment_index must be >= 0, got {self.segment_index}")
        if not self.end > self.start:
            raise ValidationError(f"segment {self.segment_index}: end must exceed start ({self.start}, {self.end})")

    @property
    def length(self) -> float:
        return self.end - self.start

    def contains(self, timestamp: float) -> bool:
        return self.start <= timestamp < self.end


@dataclass(frozen=True)
class AnnotationSet:
    """Per-video ground truth: one integer score in [1, 10] per segment."""

    video_id: str
    annotator_id: str
    scores: tuple[int, ...]
    created_at: str = ""

    def __post_init__(self):
        object.__setattr__(self, "scores", tuple(self.scores))
        for i, s in enumerate(self.scores):
            if not isinstance(s, int) or isinstance(s, bool) or not MIN_SCORE <= s <= MAX_SCORE:
                raise ValidationError(
                    f"annotation for {self.video_id!r}: score {s!r} at segment {i} "
                    f"is outside [{MIN_SCORE}, {MAX_SCORE}]"
                )


@dataclass(frozen=True)
class DatasetManifest:
    """Serialization container binding videos to their annotations."""

    videos: tuple[VideoRecord, ...]
    annotations: tuple[AnnotationSet, ...] = ()
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self):
        object.__setattr__(self, "videos", tuple(self.videos))
        object.__setattr__(self, "annotations", tuple(self.annotations))
        self.validate()

    def validate(self):
        from eduvsum.core.segments import segmentize

        seen: set[str] = set()
        for v in self.videos:
            if v.video_id in seen:
                raise ValidationError(f"duplicate video_id {v.video_id!r} in manifest")
            seen.add(v.video_id)
        by_id = {v.video_id: v for v in self.videos}
        for ann in self.annotations:
            video = by_id.get(ann.video_id)
            if video is None:
                raise ReferentialError(
                    f"annotation references unknown video_id {ann.video_id!r}"
                )
            expected = len(segmentize(video.duration))
            if len(ann.scores) != expected:
                raise ValidationError(
                    f"annotation for {ann.video_id!r} has {len(ann.scores)} scores, "
                    f"video has {expected} segments"
                )

    def video(self, video_id: str) -> VideoRecord:
        for v in self.videos:
            if v.video_id == video_id:
                return v
        raise ReferentialError(f"unknown video_id {video_id!r}")

    def annotation_for(self, video_id: str) -> AnnotationSet | None:
        for ann in self.annotations:
            if ann.video_id == video_id:
                return ann
        return None

    @property
    def video_ids(self) -> tuple[str, ...]:
        return tuple(v.video_id for v in self.videos)


@dataclass(frozen=True)
class SplitSpec:
    """Disjoint train/test partition of a manifest's video ids."""

    train_ids: tuple[str, ...]
    test_ids: tuple[str, ...]
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "train_ids", tuple(self.train_ids))
        object.__setattr__(self, "test_ids", tuple(self.test_ids))
        overlap = set(self.train_ids) & set(self.test_ids)
        if overlap:
            raise ValidationError(f"train/test overlap: {sorted(overlap)}")
