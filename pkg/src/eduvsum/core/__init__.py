"""Canonical data model: videos, segments, annotations, manifests, splits."""

from eduvsum.core.types import (
    SEGMENT_SECONDS,
    AnnotationSet,
    DatasetManifest,
    Segment,
    SplitSpec,
    VideoRecord,
)
from eduvsum.core.segments import frame_to_segment, segmentize
from eduvsum.core.split import split_dataset
from eduvsum.core.manifest import (
    load_manifest,
    manifest_from_dict,
    manifest_to_dict,
    save_manifest,
)

__all__ = [
    "SEGMENT_SECONDS",
    "AnnotationSet",
    "DatasetManifest",
    "Segment",
    "SplitSpec",
    "VideoRecord",
    "frame_to_segment",
    "segmentize",
    "split_dataset",
    "load_manifest",
    "manifest_from_dict",
    "manifest_to_dict",
    "save_manifest",
]
