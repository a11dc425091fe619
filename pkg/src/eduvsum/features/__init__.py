"""Per-frame aligned feature extraction for the visual, audio and text modalities."""

from eduvsum.features.backends import BACKEND_DIMS, STUB, BackendSpec, Modality, stub_vector
from eduvsum.features.audio_features import (
    N_BASE_FEATURES,
    N_FEATURES,
    extract_audio_features,
    window_count,
)
from eduvsum.features.align import align_audio_to_frames, align_text_to_frames
from eduvsum.features.bundle import FeatureBundle
from eduvsum.features.cache import cache_features, load_cached
from eduvsum.features.pipeline import FeatureConfig, extract_bundle
from eduvsum.features.text import WordVector, extract_text, word_timestamps
from eduvsum.features.visual import extract_visual

__all__ = [
    "BACKEND_DIMS",
    "STUB",
    "BackendSpec",
    "Modality",
    "stub_vector",
    "N_BASE_FEATURES",
    "N_FEATURES",
    "extract_audio_features",
    "window_count",
    "align_audio_to_frames",
    "align_text_to_frames",
    "FeatureBundle",
    "cache_features",
    "load_cached",
    "FeatureConfig",
    "extract_bundle",
    "WordVector",
    "extract_text",
    "word_timestamps",
    "extract_visual",
]
