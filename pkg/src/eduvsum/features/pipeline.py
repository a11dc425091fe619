"""Single-video feature extraction: decode, extract per modality, align, bundle.

Extraction is pure per video, so different videos can run on a worker pool;
results are independent of worker count.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from eduvsum.core.types import VideoRecord
from eduvsum.errors import MissingModalityError
from eduvsum.features.align import align_audio_to_frames, align_text_to_frames
from eduvsum.features.audio_features import (
    DEFAULT_STEP,
    DEFAULT_WINDOW,
    extract_audio_features,
    window_count,
)
from eduvsum.features.backends import STUB, BackendSpec, Modality, stub_vector
from eduvsum.features.bundle import FeatureBundle
from eduvsum.features.text import extract_text
from eduvsum.features.visual import extract_visual
from eduvsum.ingest.audio import DEFAULT_AUDIO_RATE, AudioTrack, extract_audio
from eduvsum.ingest.subtitles import parse_subtitles
from eduvsum.ingest.video import iter_sampled_frames


@dataclass(frozen=True)
class FeatureConfig:
    """Every setting that affects feature values; hashed into the cache key."""

    visual_backend: str = "vgg16"
    audio_backend: str = "shortterm34"
    text_backend: str = "bert-base"
    stub_visual_dim: int = 16
    stub_audio_dim: int = 16
    stub_text_dim: int = 16
    stub_seed: int = 0
    sample_rate: float = 3.0
    segment_seconds: float = 5.0
    audio_rate: int = DEFAULT_AUDIO_RATE
    window: float = DEFAULT_WINDOW
    step: float = DEFAULT_STEP

    def fingerprint(self) -> str:
        payload = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(payload).hexdigest()[:16]

    def visual_spec(self) -> BackendSpec:
        return BackendSpec.named(Modality.VISUAL, self.visual_backend,
                                 self.stub_visual_dim, self.stub_seed)

    def audio_spec(self) -> BackendSpec:
        return BackendSpec.named(Modality.AUDIO, self.audio_backend,
                                 self.stub_audio_dim, self.stub_seed)

    def text_spec(self) -> BackendSpec:
        return BackendSpec.named(Modality.TEXT, self.text_backend,
                                 self.stub_text_dim, self.stub_seed)


def _stub_audio_features(track: AudioTrack, config: FeatureConfig, spec: BackendSpec) -> np.ndarray:
    rate = track.sample_rate
    window_samples = int(round(config.window * rate))
    step_samples = int(round(config.step * rate))
    n = window_count(len(track.samples), window_samples, step_samples)
    if n == 0:
        raise MissingModalityError("audio", "track shorter than analysis window")
    rows = []
    for i in range(n):
        chunk = track.samples[i * step_samples : i * step_samples + window_samples]
        rows.append(stub_vector(chunk.tobytes(), spec.seed, spec.output_dim))
    return np.stack(rows)


def extract_bundle(video: VideoRecord, config: FeatureConfig) -> FeatureBundle:
    """Extract and align all modalities for one manifest video.

    Frames stream straight from the decoder into the visual extractor; only
    their timestamps and segment tags are retained.
    """
    timeline: list[tuple[float, int]] = []

    def stream():
        for f in iter_sampled_frames(video.media_path, config.sample_rate,
                                     config.segment_seconds):
            timeline.append((f.timestamp, f.segment_index))
            yield f

    visual = extract_visual(stream(), config.visual_spec()).astype(np.float32)
    timestamps = np.array([t for t, _ in timeline], dtype=np.float64)
    segment_indices = np.array([s for _, s in timeline], dtype=np.int64)
    present = {Modality.VISUAL}

    audio_spec = config.audio_spec()
    try:
        track = extract_audio(video.media_path, config.audio_rate)
        if audio_spec.name == STUB:
            short_term = _stub_audio_features(track, config, audio_spec)
        else:
            short_term = extract_audio_features(track, config.window, config.step)
        audio = align_audio_to_frames(short_term, timestamps, config.window, config.step)
        audio = audio.astype(np.float32)
        present.add(Modality.AUDIO)
    except MissingModalityError:
        audio = np.zeros((len(timestamps), audio_spec.output_dim), np.float32)

    text_spec = config.text_spec()
    subtitle_path = video.subtitle_path
    if subtitle_path and Path(subtitle_path).is_file():
        cues = parse_subtitles(subtitle_path)
        words = extract_text(cues, text_spec)
        text = align_text_to_frames(words, timestamps, text_spec.output_dim)
        present.add(Modality.TEXT)
    else:
        text = np.zeros((len(timestamps), text_spec.output_dim), np.float32)

    return FeatureBundle(
        video_id=video.video_id,
        visual=visual,
        audio=audio,
        text=text,
        present_modalities=frozenset(present),
        frame_timestamps=timestamps,
        segment_indices=segment_indices,
    )
