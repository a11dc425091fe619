"""Segment layout math: tile a video into 5-second spans and map times to them."""

from __future__ import annotations

import math

from eduvsum.core.types import SEGMENT_SECONDS, Segment
from eduvsum.errors import InvalidInputError


def segmentize(duration: float, segment_seconds: float = SEGMENT_SECONDS) -> list[Segment]:
    """Tile [0, duration) with fixed-length segments; the last may be shorter.

    Returns ceil(duration / segment_seconds) segments without gaps or overlaps.
    """
    if not duration > 0:
        raise InvalidInputError(f"duration must be > 0, got {duration}")
    if not segment_seconds > 0:
        raise InvalidInputError(f"segment_seconds must be > 0, got {segment_seconds}")
    count = math.ceil(duration / segment_seconds)
    return [
        Segment(i, i * segment_seconds, min((i + 1) * segment_seconds, duration))
        for i in range(count)
    ]


def frame_to_segment(timestamp: float, segments: list[Segment]) -> int:
    """Return the index of the segment whose half-open span contains `timestamp`."""
    if not segments:
        raise InvalidInputError("empty segment list")
    if timestamp < segments[0].start or timestamp >= segments[-1].end:
        raise InvalidInputError(
            f"timestamp {timestamp} outside [{segments[0].start}, {segments[-1].end})"
        )
    # Uniform tiling makes direct arithmetic exact except for float edge cases,
    # which the neighbourhood check below resolves.
    length = segments[0].length
    i = min(int(timestamp / length), len(segments) - 1)
    for j in (i, i - 1, i + 1):
        if 0 <= j < len(segments) and segments[j].contains(timestamp):
            return j
    raise InvalidInputError(f"timestamp {timestamp} not covered by the segment tiling")
