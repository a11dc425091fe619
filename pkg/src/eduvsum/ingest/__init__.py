"""Media decoding: video metadata, frame sampling, audio tracks, subtitles."""

from eduvsum.ingest.video import (
    SampledFrame,
    iter_sampled_frames,
    probe_video,
    sample_frames,
    write_frame_cache,
)
from eduvsum.ingest.audio import AudioTrack, audio_source_for, extract_audio
from eduvsum.ingest.subtitles import SubtitleCue, parse_subtitles, serialize_subtitles

__all__ = [
    "SampledFrame",
    "iter_sampled_frames",
    "probe_video",
    "sample_frames",
    "write_frame_cache",
    "AudioTrack",
    "audio_source_for",
    "extract_audio",
    "SubtitleCue",
    "parse_subtitles",
    "serialize_subtitles",
]
