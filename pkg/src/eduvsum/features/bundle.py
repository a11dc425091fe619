"""Per-video container of frame-aligned feature matrices for all modalities."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from eduvsum.errors import ValidationError
from eduvsum.features.backends import Modality


@dataclass(frozen=True)
class FeatureBundle:
    """Aligned matrices sharing leading dimension T (the sampled frame count).

    Absent modalities keep a zero matrix of the configured width and are
    excluded from present_modalities, so ablated runs stay shape-stable.
    """

    video_id: str
    visual: np.ndarray = field(repr=False)
    audio: np.ndarray = field(repr=False)
    text: np.ndarray = field(repr=False)
    present_modalities: frozenset[Modality]
    frame_timestamps: np.ndarray = field(repr=False)
    segment_indices: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "present_modalities", frozenset(self.present_modalities))
        t = len(self.frame_timestamps)
        if t == 0:
            raise ValidationError(f"bundle {self.video_id!r}: no sampled frames")
        if len(self.segment_indices) != t:
            raise ValidationError(f"bundle {self.video_id!r}: segment_indices length mismatch")
        for name, matrix in (("visual", self.visual), ("audio", self.audio), ("text", self.text)):
            if matrix.ndim != 2 or matrix.shape[0] != t:
                raise ValidationError(
                    f"bundle {self.video_id!r}: {name} matrix shape {matrix.shape} "
                    f"does not share leading dimension T={t}"
                )
            if not np.isfinite(matrix).all():
                raise ValidationError(f"bundle {self.video_id!r}: {name} matrix contains NaN/Inf")

    @property
    def frame_count(self) -> int:
        return len(self.frame_timestamps)

    def matrix(self, modality: Modality) -> np.ndarray:
        return {
            Modality.VISUAL: self.visual,
            Modality.AUDIO: self.audio,
            Modality.TEXT: self.text,
        }[modality]
