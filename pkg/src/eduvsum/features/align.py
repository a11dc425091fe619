"""Align timestamped feature streams to the sampled-frame timeline.

Each frame t owns the half-open interval (t_prev, t_cur] ending at its own
timestamp (frame 0 owns everything up to and including t_0). Aligned row t is
the mean of the stream items falling in that interval; the fallback for an
empty interval differs per modality (nearest window for audio, zeros for text).
"""

from __future__ import annotations

import numpy as np

from eduvsum.errors import InvalidInputError, MissingModalityError
from eduvsum.features.text import WordVector


def _assign_to_frames(item_times: np.ndarray, frame_timestamps: np.ndarray) -> np.ndarray:
    """Index of the owning frame per item; len(frames) for items past the end."""
    return np.searchsorted(frame_timestamps, item_times, side="left")


def align_audio_to_frames(
    short_term: np.ndarray,
    frame_timestamps: np.ndarray,
    window: float,
    step: float,
) -> np.ndarray:
    """Average n_a x d short-term rows into one row per frame.

    Rows are located by their window centers; a frame whose interval contains
    no window center takes the nearest row instead.
    """
    short_term = np.asarray(short_term)
    if short_term.ndim != 2 or len(short_term) == 0:
        raise MissingModalityError("audio", "empty short-term feature matrix")
    frame_timestamps = np.asarray(frame_timestamps, dtype=np.float64)
    if frame_timestamps.ndim != 1 or len(frame_timestamps) == 0:
        raise InvalidInputError("frame_timestamps must be a non-empty 1-D array")

    centers = window / 2.0 + step * np.arange(len(short_term))
    owners = _assign_to_frames(centers, frame_timestamps)
    aligned = np.empty((len(frame_timestamps), short_term.shape[1]), dtype=short_term.dtype)
    for t in range(len(frame_timestamps)):
        mask = owners == t
        if mask.any():
            aligned[t] = short_term[mask].mean(axis=0)
        else:
            nearest = int(np.argmin(np.abs(centers - frame_timestamps[t])))
            aligned[t] = short_term[nearest]
    return aligned


def align_text_to_frames(
    word_vectors: list[WordVector],
    frame_timestamps: np.ndarray,
    dim: int,
) -> np.ndarray:
    """Average word vectors into one row per frame; zero rows where no word
    falls in a frame's interval (silence)."""
    frame_timestamps = np.asarray(frame_timestamps, dtype=np.float64)
    if frame_timestamps.ndim != 1 or len(frame_timestamps) == 0:
        raise InvalidInputError("frame_timestamps must be a non-empty 1-D array")
    aligned = np.zeros((len(frame_timestamps), dim), dtype=np.float32)
    if not word_vectors:
        return aligned
    times = np.array([wv.timestamp for wv in word_vectors])
    vectors = np.stack([wv.vector for wv in word_vectors])
    if vectors.shape[1] != dim:
        raise InvalidInputError(f"word vectors have dim {vectors.shape[1]}, expected {dim}")
    owners = _assign_to_frames(times, frame_timestamps)
    for t in range(len(frame_timestamps)):
        mask = owners == t
        if mask.any():
            aligned[t] = vectors[mask].mean(axis=0)
    return aligned
