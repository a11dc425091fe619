"""History windows: one training example per sampled frame.

Example t carries the sequence (f_{t-h}, ..., f_t) per modality; frames before
the start of the video are filled by repeating frame 0, which keeps modality
statistics realistic (zero padding would inject a fake silent frame).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from eduvsum.core.types import AnnotationSet
from eduvsum.errors import InvalidInputError
from eduvsum.features.backends import Modality
from eduvsum.features.bundle import FeatureBundle


@dataclass(frozen=True)
class WindowedExample:
    sequences: dict  # Modality -> (h+1, d_m) float32 array
    label: int

    def __post_init__(self):
        if not 0 <= self.label <= 9:
            raise InvalidInputError(f"label must be a class index in [0, 9], got {self.label}")


def window_indices(t: int, h: int) -> list[int]:
    return [max(0, j) for j in range(t - h, t + 1)]


def frame_labels(annotation: AnnotationSet, segment_indices: np.ndarray) -> np.ndarray:
    """Expand per-segment scores to per-frame class indices (score - 1)."""
    scores = np.asarray(annotation.scores)
    segment_indices = np.asarray(segment_indices)
    if segment_indices.max() >= len(scores):
        raise InvalidInputError(
            f"frame references segment {int(segment_indices.max())} but annotation "
            f"has {len(scores)} segments"
        )
    return (scores[segment_indices] - 1).astype(np.int64)


def build_windows(
    bundle: FeatureBundle,
    labels: np.ndarray,
    h: int,
    modalities: tuple[Modality, ...] = tuple(Modality),
) -> list[WindowedExample]:
    """One example per frame t in [0, T), each of sequence length h + 1."""
    labels = np.asarray(labels)
    t_count = bundle.frame_count
    if len(labels) != t_count:
        raise InvalidInputError(
            f"labels length {len(labels)} does not match frame count {t_count}"
        )
    if h < 0:
        raise InvalidInputError(f"history window must be >= 0, got {h}")
    matrices = {m: bundle.matrix(m) for m in modalities}
    examples = []
    for t in range(t_count):
        idx = window_indices(t, h)
        examples.append(
            WindowedExample(
                sequences={m: matrices[m][idx] for m in modalities},
                label=int(labels[t]),
            )
        )
    return examples
