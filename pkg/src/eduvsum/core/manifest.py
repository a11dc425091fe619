"""Read and write the `dataset.json` manifest (schema_version "1", UTF-8).

Floats are serialized by Python's shortest-round-trip repr, so every
floating-point field survives a save/load cycle bit-exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

from eduvsum.core.types import SCHEMA_VERSION, AnnotationSet, DatasetManifest, VideoRecord
from eduvsum.errors import ParseError, ValidationError


def _video_to_dict(v: VideoRecord) -> dict:
    d = {
        "video_id": v.video_id,
        "media_path": v.media_path,
        "duration": v.duration,
        "native_fps": v.native_fps,
        "topic": v.topic,
        "source": v.source,
    }
    if v.subtitle_path is not None:
        d["subtitle_path"] = v.subtitle_path
    return d


def _video_from_dict(d: dict, index: int) -> VideoRecord:
    try:
        return VideoRecord(
            video_id=d["video_id"],
            media_path=d["media_path"],
            duration=float(d["duration"]),
            native_fps=float(d["native_fps"]),
            topic=d.get("topic", ""),
            source=d.get("source", ""),
            subtitle_path=d.get("subtitle_path"),
        )
    except KeyError as e:
        raise ParseError(f"video entry {index} is missing a required field", field=e.args[0]) from e


def _annotation_from_dict(d: dict, index: int) -> AnnotationSet:
    try:
        return AnnotationSet(
            video_id=d["video_id"],
            annotator_id=d.get("annotator_id", "default"),
            scores=tuple(d["scores"]),
            created_at=d.get("created_at", ""),
        )
    except KeyError as e:
        raise ParseError(f"annotation entry {index} is missing a required field", field=e.args[0]) from e


def manifest_to_dict(manifest: DatasetManifest) -> dict:
    return {
        "schema_version": manifest.schema_version,
        "videos": [_video_to_dict(v) for v in manifest.videos],
        "annotations": [
            {
                "video_id": a.video_id,
                "annotator_id": a.annotator_id,
                "scores": list(a.scores),
                "created_at": a.created_at,
            }
            for a in manifest.annotations
        ],
    }


def manifest_from_dict(doc: dict) -> DatasetManifest:
    if not isinstance(doc, dict):
        raise ParseError("manifest root must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValidationError(
            f"unsupported schema_version {version!r}; this toolkit reads version {SCHEMA_VERSION!r}"
        )
    videos = [_video_from_dict(d, i) for i, d in enumerate(doc.get("videos", []))]
    annotations = [_annotation_from_dict(d, i) for i, d in enumerate(doc.get("annotations", []))]
    return DatasetManifest(videos=tuple(videos), annotations=tuple(annotations), schema_version=version)


def save_manifest(manifest: DatasetManifest, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest_to_dict(manifest), fh, indent=2, ensure_ascii=False)
        fh.write("\n")


def load_manifest(path: str | Path) -> DatasetManifest:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed manifest: {e.msg}", line=e.lineno) from e
    return manifest_from_dict(doc)
