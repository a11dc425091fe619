"""Video decoding: container probing and fixed-rate frame sampling.

Frames are pulled in streaming order (grab/retrieve), never buffered whole;
lecture videos can run for hours.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import cv2
import numpy as np

from eduvsum.core.segments import frame_to_segment, segmentize
from eduvsum.errors import DecodeError, InvalidConfigError


@dataclass(frozen=True)
class SampledFrame:
    """One sampled frame: index within the sampled sequence, not the container."""

    frame_index: int
    timestamp: float
    image: np.ndarray = field(repr=False)
    segment_index: int


def _open_capture(media_path: str | Path) -> cv2.VideoCapture:
    path = Path(media_path)
    if not path.is_file():
        raise DecodeError(f"media file not found: {path}")
    cap = cv2.VideoCapture(str(path))
    if not cap.isOpened():
        raise DecodeError(f"cannot open media container: {path}")
    return cap


def probe_video(media_path: str | Path) -> tuple[float, float, bool]:
    """Return (duration_seconds, native_fps, has_audio) from container metadata."""
    from eduvsum.ingest.audio import audio_source_for

    cap = _open_capture(media_path)
    try:
        fps = cap.get(cv2.CAP_PROP_FPS)
        frame_count = cap.get(cv2.CAP_PROP_FRAME_COUNT)
        if fps <= 0 or frame_count <= 0:
            raise DecodeError(
                f"container reports no decodable video stream: {media_path} "
                f"(fps={fps}, frames={frame_count})"
            )
        duration = frame_count / fps
    finally:
        cap.release()
    return duration, fps, audio_source_for(media_path) is not None


def iter_sampled_frames(
    media_path: str | Path,
    sample_rate: float,
    segment_seconds: float = 5.0,
) -> Iterator[SampledFrame]:
    """Yield frames at `sample_rate` per second, nearest native frame to each
    ideal timestamp k / sample_rate, tagged with their 5-second segment index."""
    if sample_rate <= 0:
        raise InvalidConfigError(f"sample_rate must be > 0, got {sample_rate}")
    cap = _open_capture(media_path)
    try:
        fps = cap.get(cv2.CAP_PROP_FPS)
        frame_count = int(cap.get(cv2.CAP_PROP_FRAME_COUNT))
        if fps <= 0 or frame_count <= 0:
            raise DecodeError(f"container reports no decodable video stream: {media_path}")
        if sample_rate > fps:
            raise InvalidConfigError(
                f"sample_rate {sample_rate} exceeds native fps {fps} of {media_path}"
            )
        duration = frame_count / fps
        segments = segmentize(duration, segment_seconds)

        # Native index nearest to each ideal timestamp; int(x + 0.5) keeps the
        # sequence strictly increasing because fps / sample_rate >= 1.
        targets: list[int] = []
        k = 0
        while k / sample_rate < duration:
            n = int(k * fps / sample_rate + 0.5)
            n = min(n, frame_count - 1)
            if not targets or n > targets[-1]:
                targets.append(n)
            k += 1

        target_pos = 0
        native_index = 0
        while target_pos < len(targets):
            if not cap.grab():
                break
            if native_index == targets[target_pos]:
                ok, bgr = cap.retrieve()
                if not ok:
                    break
                timestamp = native_index / fps
                yield SampledFrame(
                    frame_index=target_pos,
                    timestamp=timestamp,
                    image=cv2.cvtColor(bgr, cv2.COLOR_BGR2RGB),
                    segment_index=frame_to_segment(timestamp, segments),
                )
                target_pos += 1
            native_index += 1
    finally:
        cap.release()


def sample_frames(
    media_path: str | Path,
    sample_rate: float,
    segment_seconds: float = 5.0,
) -> list[SampledFrame]:
    return list(iter_sampled_frames(media_path, sample_rate, segment_seconds))


def write_frame_cache(video_id: str, frames, root: str | Path) -> list[Path]:
    """Optional PNG dump: frames/<video_id>/<frame_index>.png under `root`."""
    out_dir = Path(root) / video_id
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for f in frames:
        path = out_dir / f"{f.frame_index}.png"
        cv2.imwrite(str(path), cv2.cvtColor(f.image, cv2.COLOR_RGB2BGR))
        written.append(path)
    return written
