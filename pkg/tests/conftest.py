"""Shared fixtures: tiny synthetic videos, wav tracks, and subtitle files."""

import cv2
import numpy as np
import pytest
from scipy.io import wavfile


def encode_frame_value(native_index: int) -> int:
    """Flat gray level identifying a native frame (lossless with FFV1)."""
    return (native_index * 8) % 256


def write_video(path, duration_s, fps, size=(64, 48), codec="FFV1"):
    """Write a clip whose frame n is a flat image of encode_frame_value(n)."""
    writer = cv2.VideoWriter(str(path), cv2.VideoWriter_fourcc(*codec), fps, size)
    assert writer.isOpened(), f"cannot open VideoWriter for {path}"
    n_frames = int(round(duration_s * fps))
    for n in range(n_frames):
        frame = np.full((size[1], size[0], 3), encode_frame_value(n), np.uint8)
        writer.write(frame)
    writer.release()
    return path


def write_wav(path, samples, rate=16_000):
    wavfile.write(str(path), rate, samples)
    return path


def sine_wave(freq_hz, duration_s, rate=16_000, amplitude=0.5):
    t = np.arange(int(duration_s * rate)) / rate
    return (amplitude * np.sin(2 * np.pi * freq_hz * t)).astype(np.float32)


@pytest.fixture
def video_factory(tmp_path):
    def make(name="clip.avi", duration_s=1.0, fps=10.0, **kw):
        return write_video(tmp_path / name, duration_s, fps, **kw)

    return make


@pytest.fixture
def srt_file(tmp_path):
    def make(content, name="subs.srt"):
        path = tmp_path / name
        path.write_text(content, encoding="utf-8")
        return path

    return make


TOY_SRT = """1
00:00:00,500 --> 00:00:04,000
introduction to the topic

2
00:00:04,500 --> 00:00:09,000
details and a worked example
"""


def make_toy_dataset(root, n_videos=4, duration_s=10.0, fps=10.0, seed=0):
    """Small on-disk dataset: FFV1 clips + wav sidecars + srt + manifest."""
    from eduvsum.core import AnnotationSet, DatasetManifest, VideoRecord, save_manifest, segmentize

    root.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    topics = ["alpha", "beta"]
    videos, annotations = [], []
    for i in range(n_videos):
        vid = f"vid{i}"
        media = write_video(root / f"{vid}.avi", duration_s, fps)
        write_wav(root / f"{vid}.wav", sine_wave(220 + 55 * i, duration_s))
        (root / f"{vid}.srt").write_text(TOY_SRT)
        videos.append(VideoRecord(
            video_id=vid, media_path=str(media), duration=duration_s, native_fps=fps,
            topic=topics[i % len(topics)], source="fixture",
            subtitle_path=str(root / f"{vid}.srt"),
        ))
        n_segments = len(segmentize(duration_s))
        scores = tuple(int(s) for s in rng.integers(1, 11, size=n_segments))
        annotations.append(AnnotationSet(vid, "annotator-1", scores))
    manifest = DatasetManifest(videos=tuple(videos), annotations=tuple(annotations))
    manifest_path = root / "dataset.json"
    save_manifest(manifest, manifest_path)
    return manifest_path


def class_prototypes(dim, spread=4.0):
    """Ten well-separated feature prototypes, one per importance class."""
    rng = np.random.default_rng(99)
    return rng.normal(size=(10, dim)).astype(np.float32) * spread


def make_class_bundle(video_id, duration_s=30.0, dv=16, da=68, dt=24, seed=0, noise=0.05):
    """Synthetic bundle whose features are a deterministic function of the label.

    Segment scores are drawn per video; frame features are the class prototype
    plus small noise, so a linear probe separates the classes perfectly.
    Returns (FeatureBundle, AnnotationSet).
    """
    from eduvsum.core import AnnotationSet, segmentize
    from eduvsum.features import FeatureBundle, Modality

    rng = np.random.default_rng(seed)
    segments = segmentize(duration_s)
    scores = tuple(int(s) for s in rng.integers(1, 11, size=len(segments)))
    timestamps = np.arange(int(duration_s * 3)) / 3.0
    segment_indices = np.minimum((timestamps // 5.0).astype(np.int64), len(segments) - 1)
    labels = np.array([scores[i] - 1 for i in segment_indices], np.int64)

    def matrix(dim):
        protos = class_prototypes(dim)
        return protos[labels] + rng.normal(size=(len(labels), dim)).astype(np.float32) * noise

    bundle = FeatureBundle(
        video_id=video_id,
        visual=matrix(dv),
        audio=matrix(da),
        text=matrix(dt),
        present_modalities=frozenset({Modality.VISUAL, Modality.AUDIO, Modality.TEXT}),
        frame_timestamps=timestamps,
        segment_indices=segment_indices,
    )
    annotation = AnnotationSet(video_id, "synthetic", scores)
    return bundle, annotation
